#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "supergerbe/number.hpp"

namespace supergerbe {

// Integer matrix stored by rows, each row sorted by column.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> data;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r) {}

  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  // x^T M
  std::vector<Integer> apply_transpose(const std::vector<Integer>& y) const;
};

// U M V = S with U, V unimodular and S a partial permutation matrix with
// nonzero integer weights. U and V are kept as sequences of elementary ops.
class Diagonalization {
 public:
  explicit Diagonalization(SparseMatrix m);

  const SparseMatrix& matrix() const { return m_; }
  std::size_t rank() const { return pivots_.size(); }

  std::optional<std::vector<Rational>> solve_rational(const std::vector<Rational>& b) const;
  std::optional<std::vector<Integer>> solve_integer(const std::vector<Integer>& b) const;

  // Splits c into m + M r with m integral when possible. Otherwise returns an
  // integer vector w with w^T M = 0 and non-integral w . c.
  struct Lift {
    bool integral = false;
    std::vector<Integer> m;
    std::vector<Rational> r;
    std::vector<Integer> witness;
    Rational witness_value;
  };
  Lift integral_lift(const std::vector<Rational>& c) const;

  // Integer vectors w with w^T M = 0 spanning the left kernel over Q.
  std::vector<std::vector<Integer>> cokernel_basis() const;

 private:
  struct Op {
    std::size_t target;
    std::size_t source;
    Integer factor;
  };
  struct Pivot {
    std::size_t row;
    std::size_t col;
    Integer value;
  };

  void apply_u(std::vector<Rational>& v) const;
  void apply_ut(std::vector<Integer>& w) const;
  void apply_v(std::vector<Rational>& y) const;
  // pivot-diagonal solve; returns nullopt when some free row is nonzero
  std::optional<std::vector<Rational>> back(const std::vector<Rational>& ub) const;

  SparseMatrix m_;
  std::vector<Op> row_ops_;  // row_t += f row_s
  std::vector<Op> col_ops_;  // col_t += f col_s
  std::vector<Pivot> pivots_;
  std::vector<bool> pivot_row_;
};

}  // namespace supergerbe
