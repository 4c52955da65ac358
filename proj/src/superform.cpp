#include "supergerbe/superform.hpp"

#include <algorithm>
#include <bit>

#include "supergerbe/error.hpp"

namespace supergerbe {

namespace {

int shuffle_parity(Mask s1, Mask s2) {
  int p = 0;
  while (s2) {
    int j = std::countr_zero(s2);
    s2 &= s2 - 1;
    if (j < 63) p += std::popcount(s1 >> (j + 1));
  }
  return p & 1;
}

std::string coef_str(const Scalar& c, bool& negative) {
  negative = false;
  if (c.terms().size() == 1) {
    const Gaussian& g = c.terms().front().coef;
    if (g.prints_negative()) {
      negative = true;
      return (-c).str();
    }
    return c.str();
  }
  return "(" + c.str() + ")";
}

template <class Key, class Less>
std::vector<std::pair<Key, Scalar>> combine(std::vector<std::pair<Key, Scalar>> terms, Less less) {
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return less(a.first, b.first); });
  std::vector<std::pair<Key, Scalar>> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

bool mask_less(Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  return a < b;
}

template <class Key, class Less>
std::vector<std::pair<Key, Scalar>> merge_add(const std::vector<std::pair<Key, Scalar>>& a,
                                              const std::vector<std::pair<Key, Scalar>>& b,
                                              bool subtract, Less less) {
  std::vector<std::pair<Key, Scalar>> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && less(a[i].first, b[j].first))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || less(b[j].first, a[i].first)) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      Scalar s = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

unsigned DThetaPack::total(std::uint64_t p) {
  unsigned t = 0;
  while (p) {
    t += static_cast<unsigned>(p & 0xFu);
    p >>= 4;
  }
  return t;
}

std::uint64_t DThetaPack::add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  for (unsigned j = 0; j < 16; ++j) {
    unsigned m = get(a, j) + get(b, j);
    if (m > 15) raise(ErrorKind::InvalidArgument, "dtheta multiplicity exceeds 15");
    out = set(out, j, m);
  }
  return out;
}

int FormKey::degree() const { return std::popcount(dx) + static_cast<int>(DThetaPack::total(dtheta)); }

int FormKey::soul_weight() const {
  return std::popcount(theta) + static_cast<int>(DThetaPack::total(dtheta));
}

int FormKey::parity() const { return (std::popcount(theta) + static_cast<int>(DThetaPack::total(dtheta))) & 1; }

bool key_less(const FormKey& a, const FormKey& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.theta != b.theta) return mask_less(a.theta, b.theta);
  if (a.dx != b.dx) return mask_less(a.dx, b.dx);
  return a.dtheta < b.dtheta;
}

int key_product(const FormKey& a, const FormKey& b, FormKey& out) {
  if ((a.theta & b.theta) || (a.dx & b.dx)) return 0;
  int d1 = static_cast<int>(DThetaPack::total(a.dtheta));
  int p = (std::popcount(b.theta) * d1 + std::popcount(b.dx) * d1) & 1;
  p ^= shuffle_parity(a.theta, b.theta);
  p ^= shuffle_parity(a.dx, b.dx);
  out.theta = a.theta | b.theta;
  out.dx = a.dx | b.dx;
  out.dtheta = DThetaPack::add(a.dtheta, b.dtheta);
  return p ? -1 : 1;
}

std::string key_str(const Ring& ring, const FormKey& key) {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  for (Mask t = key.theta; t; t &= t - 1) append(ring.odd_name(std::countr_zero(t)));
  for (Mask x = key.dx; x; x &= x - 1) append(ring.form_name(std::countr_zero(x)));
  for (unsigned j = 0; j < 16; ++j) {
    unsigned m = DThetaPack::get(key.dtheta, j);
    if (m == 0) continue;
    std::string s = "d(" + ring.odd_name(j) + ")";
    if (m > 1) s += "^" + std::to_string(m);
    append(s);
  }
  return out;
}

// SuperFunction

SuperFunction::SuperFunction(const Scalar& s) : ring_(s.ring()) {
  if (!s.is_zero()) terms_.emplace_back(Mask{0}, s);
}

SuperFunction SuperFunction::theta(RingPtr ring, std::uint32_t j) {
  if (!ring || j >= ring->odd_count()) raise(ErrorKind::UnknownGenerator, "odd generator out of range");
  SuperFunction f(ring);
  f.terms_.emplace_back(Mask{1} << j, Scalar::constant(ring, Gaussian(1)));
  return f;
}

SuperFunction SuperFunction::from_terms(RingPtr ring, TermList terms) {
  SuperFunction f(ring);
  for (auto& [m, c] : terms) {
    if (ring && (m >> ring->odd_count()) != 0) raise(ErrorKind::UnknownGenerator, "odd generator out of range");
    ring = common_ring(ring, c.ring());
  }
  f.ring_ = ring;
  f.terms_ = combine(std::move(terms), mask_less);
  return f;
}

std::optional<int> SuperFunction::parity() const {
  std::optional<int> p;
  for (const auto& [m, c] : terms_) {
    int q = std::popcount(m) & 1;
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p ? p : std::optional<int>(0);
}

Scalar SuperFunction::body() const { return coefficient(0); }

SuperFunction SuperFunction::soul() const {
  SuperFunction f(ring_);
  for (const auto& t : terms_)
    if (t.first != 0) f.terms_.push_back(t);
  return f;
}

Scalar SuperFunction::coefficient(Mask m) const {
  for (const auto& t : terms_)
    if (t.first == m) return t.second;
  return Scalar(ring_);
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
  ring_ = common_ring(ring_, o.ring_);
  terms_ = merge_add(terms_, o.terms_, false, mask_less);
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) {
  ring_ = common_ring(ring_, o.ring_);
  terms_ = merge_add(terms_, o.terms_, true, mask_less);
  return *this;
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
  RingPtr ring = common_ring(a.ring_, b.ring_);
  SuperFunction::TermList raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      if (ma & mb) continue;
      Scalar c = ca * cb;
      if (shuffle_parity(ma, mb)) c = -c;
      raw.emplace_back(ma | mb, std::move(c));
    }
  SuperFunction out(ring);
  out.terms_ = combine(std::move(raw), mask_less);
  return out;
}

SuperFunction operator*(const Gaussian& c, const SuperFunction& a) {
  SuperFunction out(a.ring_);
  if (c.is_zero()) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

SuperFunction SuperFunction::operator-() const { return Gaussian(-1) * *this; }

bool operator==(const SuperFunction& a, const SuperFunction& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

std::string SuperFunction::str() const { return SuperForm(*this).str(); }

// SuperForm

SuperForm::SuperForm(const Scalar& s) : ring_(s.ring()) {
  if (!s.is_zero()) terms_.emplace_back(FormKey{}, s);
}

SuperForm::SuperForm(const SuperFunction& f) : ring_(f.ring()) {
  for (const auto& [m, c] : f.terms()) terms_.emplace_back(FormKey{m, 0, 0}, c);
  std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return key_less(a.first, b.first); });
}

SuperForm SuperForm::theta(RingPtr ring, std::uint32_t j) {
  if (!ring || j >= ring->odd_count()) raise(ErrorKind::UnknownGenerator, "odd generator out of range");
  return monomial(ring, FormKey{Mask{1} << j, 0, 0}, Scalar::constant(ring, Gaussian(1)));
}

SuperForm SuperForm::dtheta(RingPtr ring, std::uint32_t j) {
  if (!ring || j >= ring->odd_count()) raise(ErrorKind::UnknownGenerator, "odd generator out of range");
  return monomial(ring, FormKey{0, 0, DThetaPack::set(0, j, 1)}, Scalar::constant(ring, Gaussian(1)));
}

SuperForm SuperForm::basis(RingPtr ring, std::uint32_t k) {
  if (!ring || k >= ring->form_count()) raise(ErrorKind::UnknownGenerator, "basis form out of range");
  return monomial(ring, FormKey{0, Mask{1} << k, 0}, Scalar::constant(ring, Gaussian(1)));
}

SuperForm SuperForm::monomial(RingPtr ring, const FormKey& key, Scalar coef) {
  SuperForm f(common_ring(ring, coef.ring()));
  if (!coef.is_zero()) f.terms_.emplace_back(key, std::move(coef));
  return f;
}

SuperForm SuperForm::from_terms(RingPtr ring, TermList terms) {
  for (const auto& t : terms) ring = common_ring(ring, t.second.ring());
  SuperForm f(ring);
  f.terms_ = combine(std::move(terms), key_less);
  return f;
}

std::optional<int> SuperForm::degree() const {
  std::optional<int> d;
  for (const auto& t : terms_) {
    int q = t.first.degree();
    if (d && *d != q) return std::nullopt;
    d = q;
  }
  return d;
}

std::optional<int> SuperForm::parity() const {
  std::optional<int> p;
  for (const auto& t : terms_) {
    int q = t.first.parity();
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p;
}

bool SuperForm::is_homogeneous(int degree, int parity) const {
  for (const auto& t : terms_)
    if (t.first.degree() != degree || t.first.parity() != parity) return false;
  return true;
}

SuperFunction SuperForm::to_function() const {
  SuperFunction::TermList out;
  for (const auto& [k, c] : terms_) {
    if (k.dx || k.dtheta) raise(ErrorKind::InvalidArgument, "form of positive degree where a function is required");
    out.emplace_back(k.theta, c);
  }
  return SuperFunction::from_terms(ring_, std::move(out));
}

SuperForm& SuperForm::operator+=(const SuperForm& o) {
  ring_ = common_ring(ring_, o.ring_);
  terms_ = merge_add(terms_, o.terms_, false, key_less);
  return *this;
}

SuperForm& SuperForm::operator-=(const SuperForm& o) {
  ring_ = common_ring(ring_, o.ring_);
  terms_ = merge_add(terms_, o.terms_, true, key_less);
  return *this;
}

SuperForm operator*(const SuperForm& a, const SuperForm& b) {
  RingPtr ring = common_ring(a.ring_, b.ring_);
  SuperForm::TermList raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      FormKey k;
      int s = key_product(ka, kb, k);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      raw.emplace_back(k, std::move(c));
    }
  SuperForm out(ring);
  out.terms_ = combine(std::move(raw), key_less);
  return out;
}

SuperForm operator*(const Scalar& s, const SuperForm& a) {
  return map_coefficients(a, [&](const Scalar& c) { return s * c; });
}

SuperForm operator*(const Gaussian& c, const SuperForm& a) {
  SuperForm out(a.ring_);
  if (c.is_zero()) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

SuperForm SuperForm::operator-() const { return Gaussian(-1) * *this; }

bool operator==(const SuperForm& a, const SuperForm& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

std::string SuperForm::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    bool neg = false;
    std::string cs = coef_str(c, neg);
    std::string ks = ring_ ? key_str(*ring_, k) : std::string();
    std::string term;
    if (ks.empty())
      term = cs;
    else if (cs == "1")
      term = ks;
    else
      term = cs + "*" + ks;
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace supergerbe
