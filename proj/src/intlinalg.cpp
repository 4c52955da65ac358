#include "supergerbe/intlinalg.hpp"

#include <map>
#include <set>

#include "supergerbe/error.hpp"

namespace supergerbe {

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& x) const {
  std::vector<Rational> y(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [j, v] : data[i]) y[i] += v * x[j];
  return y;
}

std::vector<Integer> SparseMatrix::apply(const std::vector<Integer>& x) const {
  std::vector<Integer> y(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [j, v] : data[i]) y[i] += v * x[j];
  return y;
}

std::vector<Integer> SparseMatrix::apply_transpose(const std::vector<Integer>& y) const {
  std::vector<Integer> x(cols);
  for (std::size_t i = 0; i < rows; ++i)
    if (sgn(y[i]) != 0)
      for (const auto& [j, v] : data[i]) x[j] += v * y[i];
  return x;
}

namespace {

struct Work {
  std::vector<std::map<std::size_t, Integer>> rows;
  std::vector<std::set<std::size_t>> cols;

  void set(std::size_t i, std::size_t j, Integer v) {
    if (sgn(v) == 0) {
      rows[i].erase(j);
      cols[j].erase(i);
    } else {
      rows[i][j] = std::move(v);
      cols[j].insert(i);
    }
  }
  // row_t += f row_s
  void add_row(std::size_t t, std::size_t s, const Integer& f) {
    for (const auto& [j, v] : std::map<std::size_t, Integer>(rows[s])) {
      auto it = rows[t].find(j);
      Integer nv = (it == rows[t].end() ? Integer(0) : it->second) + f * v;
      set(t, j, std::move(nv));
    }
  }
  // col_t += f col_s
  void add_col(std::size_t t, std::size_t s, const Integer& f) {
    for (std::size_t i : std::set<std::size_t>(cols[s])) {
      const Integer& v = rows[i].at(s);
      auto it = rows[i].find(t);
      Integer nv = (it == rows[i].end() ? Integer(0) : it->second) + f * v;
      set(i, t, std::move(nv));
    }
  }
};

}  // namespace

Diagonalization::Diagonalization(SparseMatrix m) : m_(std::move(m)), pivot_row_(m_.rows, false) {
  Work w;
  w.rows.resize(m_.rows);
  w.cols.resize(m_.cols);
  for (std::size_t i = 0; i < m_.rows; ++i)
    for (const auto& [j, v] : m_.data[i])
      if (sgn(v) != 0) w.set(i, j, v);

  for (;;) {
    // unit pivot with least fill, else smallest magnitude
    bool found = false, unit = false;
    std::size_t pi = 0, pj = 0;
    std::size_t best_cost = 0;
    const Integer* best = nullptr;
    for (std::size_t i = 0; i < m_.rows; ++i) {
      for (const auto& [j, v] : w.rows[i]) {
        bool is_unit = mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0;
        if (unit && !is_unit) continue;
        std::size_t cost = (w.rows[i].size() - 1) * (w.cols[j].size() - 1);
        bool better;
        if (!found || (is_unit && !unit)) {
          better = true;
        } else if (is_unit) {
          better = cost < best_cost;
        } else {
          int c = mpz_cmpabs(v.get_mpz_t(), best->get_mpz_t());
          better = c < 0 || (c == 0 && cost < best_cost);
        }
        if (better) {
          found = true;
          unit = is_unit;
          pi = i;
          pj = j;
          best_cost = cost;
          best = &v;
          if (unit && cost == 0) break;
        }
      }
      if (unit && best_cost == 0) break;
    }
    if (!found) break;

    bool clean = true;
    const Integer p = w.rows[pi].at(pj);
    for (std::size_t i : std::set<std::size_t>(w.cols[pj])) {
      if (i == pi) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), w.rows[i].at(pj).get_mpz_t(), p.get_mpz_t());
      if (sgn(q) != 0) {
        w.add_row(i, pi, -q);
        row_ops_.push_back({i, pi, -q});
      }
      if (w.rows[i].count(pj)) clean = false;
    }
    if (!clean) continue;
    for (const auto& [j, v] : std::map<std::size_t, Integer>(w.rows[pi])) {
      if (j == pj) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
      if (sgn(q) != 0) {
        w.add_col(j, pj, -q);
        col_ops_.push_back({j, pj, -q});
      }
      if (w.rows[pi].count(j)) clean = false;
    }
    if (!clean) continue;
    pivots_.push_back({pi, pj, p});
    pivot_row_[pi] = true;
    w.set(pi, pj, 0);
  }
}

void Diagonalization::apply_u(std::vector<Rational>& v) const {
  for (const auto& op : row_ops_) v[op.target] += Rational(op.factor) * v[op.source];
}

void Diagonalization::apply_ut(std::vector<Integer>& w) const {
  for (auto it = row_ops_.rbegin(); it != row_ops_.rend(); ++it) w[it->source] += it->factor * w[it->target];
}

void Diagonalization::apply_v(std::vector<Rational>& y) const {
  for (auto it = col_ops_.rbegin(); it != col_ops_.rend(); ++it) y[it->source] += Rational(it->factor) * y[it->target];
}

std::optional<std::vector<Rational>> Diagonalization::back(const std::vector<Rational>& ub) const {
  for (std::size_t i = 0; i < m_.rows; ++i)
    if (!pivot_row_[i] && sgn(ub[i]) != 0) return std::nullopt;
  std::vector<Rational> y(m_.cols);
  for (const auto& p : pivots_) y[p.col] = ub[p.row] / Rational(p.value);
  apply_v(y);
  return y;
}

std::optional<std::vector<Rational>> Diagonalization::solve_rational(const std::vector<Rational>& b) const {
  if (b.size() != m_.rows) raise(ErrorKind::InvalidArgument, "solve: right-hand side has the wrong length");
  std::vector<Rational> ub = b;
  apply_u(ub);
  return back(ub);
}

std::optional<std::vector<Integer>> Diagonalization::solve_integer(const std::vector<Integer>& b) const {
  if (b.size() != m_.rows) raise(ErrorKind::InvalidArgument, "solve: right-hand side has the wrong length");
  std::vector<Rational> ub(b.begin(), b.end());
  apply_u(ub);
  for (const auto& p : pivots_) {
    Rational q = ub[p.row] / Rational(p.value);
    if (!is_integer(q)) return std::nullopt;
  }
  auto y = back(ub);
  if (!y) return std::nullopt;
  std::vector<Integer> x(y->size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = (*y)[j].get_num();
  return x;
}

Diagonalization::Lift Diagonalization::integral_lift(const std::vector<Rational>& c) const {
  if (c.size() != m_.rows) raise(ErrorKind::InvalidArgument, "integral_lift: vector has the wrong length");
  Lift out;
  std::vector<Rational> uc = c;
  apply_u(uc);
  for (std::size_t i = 0; i < m_.rows; ++i) {
    if (pivot_row_[i] || is_integer(uc[i])) continue;
    std::vector<Integer> e(m_.rows);
    e[i] = 1;
    apply_ut(e);
    out.witness = std::move(e);
    out.witness_value = uc[i];
    return out;
  }
  std::vector<Rational> y(m_.cols);
  for (const auto& p : pivots_) y[p.col] = uc[p.row] / Rational(p.value);
  apply_v(y);
  std::vector<Rational> mr = m_.apply(y);
  out.m.resize(m_.rows);
  for (std::size_t i = 0; i < m_.rows; ++i) {
    Rational v = c[i] - mr[i];
    if (!is_integer(v)) raise(ErrorKind::NotIntegral, "integral_lift: internal inconsistency");
    out.m[i] = v.get_num();
  }
  out.r = std::move(y);
  out.integral = true;
  return out;
}

std::vector<std::vector<Integer>> Diagonalization::cokernel_basis() const {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < m_.rows; ++i) {
    if (pivot_row_[i]) continue;
    std::vector<Integer> e(m_.rows);
    e[i] = 1;
    apply_ut(e);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace supergerbe
