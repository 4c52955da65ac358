#include "supergerbe/cover.hpp"

#include <algorithm>
#include <set>

#include "supergerbe/error.hpp"

namespace supergerbe {

std::string simplex_str(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

StarData default_star(const Ring& ring) {
  StarData st;
  st.coordinate.resize(ring.form_count());
  st.center.resize(ring.form_count());
  for (std::uint32_t g = 1; g <= ring.even_count(); ++g)
    if (auto k = ring.coordinate_basis(g); k && !st.coordinate[*k]) st.coordinate[*k] = g;
  return st;
}

std::optional<std::uint32_t> Cover::chart_id(const std::string& name) const {
  for (std::uint32_t i = 0; i < charts_.size(); ++i)
    if (charts_[i].name == name) return i;
  return std::nullopt;
}

const std::vector<Simplex>& Cover::simplices(int level) const {
  static const std::vector<Simplex> none;
  if (level < 1 || level > max_level()) return none;
  return levels_[level - 1];
}

std::optional<std::size_t> Cover::index_of(const Simplex& s) const {
  int level = static_cast<int>(s.size());
  if (level < 1 || level > max_level()) return std::nullopt;
  auto it = index_[level - 1].find(s);
  if (it == index_[level - 1].end()) return std::nullopt;
  return it->second;
}

bool Cover::in_nerve(const Simplex& s) const {
  if (s.empty()) return false;
  if (static_cast<int>(s.size()) <= max_level()) return index_of(s).has_value();
  for (const auto& m : maximal_)
    if (std::includes(m.begin(), m.end(), s.begin(), s.end())) return true;
  return false;
}

bool Cover::has_shift(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return true;
  return shifts_.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::vector<Gaussian> Cover::shift(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return std::vector<Gaussian>(slots_);
  auto it = shifts_.find({std::min(a, b), std::max(a, b)});
  if (it == shifts_.end())
    raise(ErrorKind::SubstitutionFailure,
          "no substitution rule between charts " + charts_[a].name + " and " + charts_[b].name);
  std::vector<Gaussian> v = it->second;
  if (a > b)
    for (auto& x : v) x = -x;
  return v;
}

int Cover::owner(std::uint32_t gen) const { return gen < owner_.size() ? owner_[gen] : -1; }
int Cover::slot(std::uint32_t gen) const { return gen < slot_.size() ? slot_[gen] : -1; }

Scalar Cover::rewrite(const Scalar& s, const Simplex& allowed, std::uint32_t target) const {
  bool needed = false;
  for (const auto& t : s.terms())
    for (const auto& f : t.mono) {
      int o = owner(f.gen);
      if (o < 0 || static_cast<std::uint32_t>(o) == target) continue;
      if (!std::binary_search(allowed.begin(), allowed.end(), static_cast<std::uint32_t>(o)))
        raise(ErrorKind::SubstitutionFailure, "generator " + ring_->even_name(f.gen) + " of chart " +
                                                  charts_[o].name + " used on tuple " + simplex_str(allowed));
      needed = true;
    }
  if (!needed) return s;
  std::vector<std::optional<Scalar>> images(ring_->even_count() + 1);
  for (std::uint32_t c : allowed) {
    if (c == target) continue;
    std::vector<Gaussian> sh = shift(target, c);
    for (std::size_t k = 0; k < slots_; ++k)
      images[charts_[c].local[k]] =
          Scalar::generator(ring_, charts_[target].local[k]) + Scalar::constant(ring_, sh[k]);
  }
  return substitute(s, images);
}

SuperForm Cover::rewrite(const SuperForm& a, const Simplex& allowed, std::uint32_t target) const {
  return map_coefficients(a, [&](const Scalar& c) { return rewrite(c, allowed, target); });
}

bool Cover::is_global(const SuperForm& a) const {
  for (const auto& [k, c] : a.terms())
    for (const auto& t : c.terms())
      for (const auto& f : t.mono)
        if (owner(f.gen) >= 0) return false;
  return true;
}

SparseMatrix Cover::coboundary_matrix(int level) const {
  const auto& rows = simplices(level + 1);
  const auto& cols = simplices(level);
  SparseMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      Simplex face = rows[r];
      face.erase(face.begin() + static_cast<long>(i));
      m.data[r].emplace_back(*index_of(face), Integer(i % 2 ? -1 : 1));
    }
    std::sort(m.data[r].begin(), m.data[r].end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return m;
}

std::shared_ptr<const Diagonalization> Cover::coboundary(int level) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(level);
    if (it != cache_.end()) return it->second;
  }
  auto d = std::make_shared<const Diagonalization>(coboundary_matrix(level));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(level, std::move(d)).first->second;
}

Chain Cover::boundary(const Chain& c) const {
  std::map<Simplex, Integer> acc;
  for (const auto& [s, v] : c.terms)
    for (std::size_t i = 0; i < s.size() && s.size() > 1; ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      acc[face] += i % 2 ? Integer(-v) : v;
    }
  Chain out;
  out.level = c.level - 1;
  for (auto& [s, v] : acc)
    if (sgn(v) != 0) out.terms.emplace_back(s, v);
  return out;
}

// Builder

CoverBuilder::CoverBuilder(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) raise(ErrorKind::InvalidArgument, "cover without a ring");
}

std::uint32_t CoverBuilder::chart(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) raise(ErrorKind::InvalidArgument, "unknown chart '" + name + "'");
  return it->second;
}

std::uint32_t CoverBuilder::add_chart(const std::string& name, const std::vector<std::string>& local) {
  if (names_.count(name)) raise(ErrorKind::InvalidArgument, "duplicate chart '" + name + "'");
  Chart c{name, {}};
  for (const auto& g : local) c.local.push_back(ring_->even_id(g));
  auto id = static_cast<std::uint32_t>(charts_.size());
  charts_.push_back(std::move(c));
  names_[name] = id;
  centers_.emplace_back();
  return id;
}

void CoverBuilder::add_simplex(const std::vector<std::string>& names) {
  Simplex s;
  for (const auto& n : names) s.push_back(chart(n));
  std::sort(s.begin(), s.end());
  if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end())
    raise(ErrorKind::InvalidArgument, "nerve tuple must list distinct charts");
  simplices_.push_back(std::move(s));
}

void CoverBuilder::set_shift(const std::string& a, const std::string& b, std::vector<Gaussian> values) {
  std::uint32_t i = chart(a), j = chart(b);
  if (i == j) raise(ErrorKind::InvalidArgument, "shift from a chart to itself");
  if (i > j) {
    std::swap(i, j);
    for (auto& v : values) v = -v;
  }
  shifts_[{i, j}] = std::move(values);
}

void CoverBuilder::set_partition(const std::string& c, Scalar phi) { partition_[chart(c)] = std::move(phi); }

void CoverBuilder::set_center(const std::string& c, const std::string& gen, Rational value) {
  value.canonicalize();
  centers_[chart(c)][ring_->even_id(gen)] = std::move(value);
}

void CoverBuilder::add_cycle(const std::string& name, Chain c) { cycles_[name] = std::move(c); }

CoverPtr CoverBuilder::build() const {
  auto cv = std::make_shared<Cover>();
  Cover& c = *cv;
  c.ring_ = ring_;
  c.charts_ = charts_;
  if (charts_.empty()) raise(ErrorKind::InvalidArgument, "cover without charts");
  c.slots_ = charts_.front().local.size();
  c.owner_.assign(ring_->even_count() + 1, -1);
  c.slot_.assign(ring_->even_count() + 1, -1);
  for (std::uint32_t a = 0; a < charts_.size(); ++a) {
    if (charts_[a].local.size() != c.slots_)
      raise(ErrorKind::InvalidArgument, "chart '" + charts_[a].name + "' declares a different number of local generators");
    for (std::size_t k = 0; k < c.slots_; ++k) {
      std::uint32_t g = charts_[a].local[k];
      if (c.owner_[g] >= 0) raise(ErrorKind::InvalidArgument, "generator " + ring_->even_name(g) + " owned by two charts");
      c.owner_[g] = static_cast<int>(a);
      c.slot_[g] = static_cast<int>(k);
    }
  }
  for (const auto& [key, v] : shifts_)
    if (v.size() != c.slots_) raise(ErrorKind::InvalidArgument, "shift with the wrong number of entries");
  c.shifts_ = shifts_;

  // maximal simplices
  std::vector<Simplex> all = simplices_;
  for (std::uint32_t a = 0; a < charts_.size(); ++a) all.push_back({a});
  std::sort(all.begin(), all.end(), [](const Simplex& x, const Simplex& y) {
    return x.size() != y.size() ? x.size() > y.size() : x < y;
  });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (const auto& s : all) {
    bool covered = false;
    for (const auto& m : c.maximal_)
      if (std::includes(m.begin(), m.end(), s.begin(), s.end())) {
        covered = true;
        break;
      }
    if (!covered) c.maximal_.push_back(s);
  }
  std::sort(c.maximal_.begin(), c.maximal_.end());

  // faces up to max_level_
  std::vector<std::set<Simplex>> faces(static_cast<std::size_t>(max_level_));
  for (const auto& m : c.maximal_) {
    std::size_t n = m.size();
    std::size_t top = std::min<std::size_t>(n, static_cast<std::size_t>(max_level_));
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= top; ++k) {
      idx.resize(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      for (;;) {
        Simplex s(k);
        for (std::size_t i = 0; i < k; ++i) s[i] = m[idx[i]];
        faces[k - 1].insert(std::move(s));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  while (!faces.empty() && faces.back().empty()) faces.pop_back();
  for (auto& f : faces) {
    c.levels_.emplace_back(f.begin(), f.end());
    std::map<Simplex, std::size_t> ix;
    for (std::size_t i = 0; i < c.levels_.back().size(); ++i) ix[c.levels_.back()[i]] = i;
    c.index_.push_back(std::move(ix));
  }

  c.partition_.resize(charts_.size());
  for (std::uint32_t a = 0; a < charts_.size(); ++a) {
    auto it = partition_.find(a);
    c.partition_[a] = it == partition_.end() ? Scalar(ring_) : it->second;
  }

  c.centers_ = centers_;
  for (std::uint32_t a = 0; a < charts_.size(); ++a) {
    StarData st;
    st.coordinate.resize(ring_->form_count());
    st.center.resize(ring_->form_count());
    for (std::uint32_t g = 1; g <= ring_->even_count(); ++g) {
      auto k = ring_->coordinate_basis(g);
      if (!k || (c.owner_[g] >= 0 && c.owner_[g] != static_cast<int>(a))) continue;
      bool local = c.owner_[g] == static_cast<int>(a);
      if (st.coordinate[*k]) {
        bool prev_local = c.owner_[*st.coordinate[*k]] >= 0;
        if (prev_local == local)
          raise(ErrorKind::InvalidArgument, "chart '" + charts_[a].name + "' has two coordinates for basis form " +
                                                ring_->form_name(*k));
        if (prev_local) continue;
      }
      st.coordinate[*k] = g;
    }
    for (std::size_t k = 0; k < st.coordinate.size(); ++k) {
      if (!st.coordinate[k]) continue;
      auto it = centers_[a].find(*st.coordinate[k]);
      if (it != centers_[a].end()) st.center[k] = it->second;
    }
    c.stars_.push_back(std::move(st));
  }

  for (const auto& [name, ch] : cycles_)
    for (const auto& [s, v] : ch.terms)
      if (static_cast<int>(s.size()) != ch.level || !c.in_nerve(s))
        raise(ErrorKind::InvalidArgument, "cycle '" + name + "' uses " + simplex_str(s) + " outside its level or the nerve");
  c.cycles_ = cycles_;
  return cv;
}

Report validate_cover(const Cover& cover) {
  Report rep;
  rep.subject = "cover";
  Scalar sum(cover.ring());
  bool global = true;
  for (const auto& phi : cover.partition()) {
    sum += phi;
    if (!cover.is_global(phi)) global = false;
  }
  Scalar defect = sum - Scalar::constant(cover.ring(), Gaussian(1));
  rep.add("partition-sum", "", defect.is_zero(), defect.is_zero() ? "" : "sum(phi) - 1 = " + defect.str());
  rep.add("partition-global", "", global, global ? "" : "partition uses chart-local generators");

  bool shifts_ok = true;
  std::string missing;
  if (cover.slot_count() > 0)
    for (const auto& e : cover.simplices(2))
      if (!cover.has_shift(e[0], e[1])) {
        shifts_ok = false;
        missing = simplex_str(e);
        break;
      }
  rep.add("substitution-defined", missing, shifts_ok, shifts_ok ? "" : "no substitution rule on " + missing);

  bool consistent = true;
  std::string bad;
  if (shifts_ok && cover.slot_count() > 0)
    for (const auto& t : cover.simplices(3)) {
      auto ab = cover.shift(t[0], t[1]), bc = cover.shift(t[1], t[2]), ac = cover.shift(t[0], t[2]);
      for (std::size_t k = 0; k < ab.size(); ++k)
        if (ab[k] + bc[k] != ac[k]) {
          consistent = false;
          bad = simplex_str(t);
          break;
        }
      if (!consistent) break;
    }
  rep.add("substitution-consistency", bad, consistent,
          consistent ? "" : "composite rewrite differs from direct rewrite on " + bad);

  for (const auto& [name, ch] : cover.cycles()) {
    Chain b = cover.boundary(ch);
    rep.add("cycle-closed", name, b.terms.empty(), b.terms.empty() ? "" : "nonzero boundary");
  }
  return rep;
}

}  // namespace supergerbe
