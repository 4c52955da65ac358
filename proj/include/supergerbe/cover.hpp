#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "supergerbe/intlinalg.hpp"
#include "supergerbe/report.hpp"
#include "supergerbe/superform.hpp"

namespace supergerbe {

// Strictly increasing chart indices.
using Simplex = std::vector<std::uint32_t>;

std::string simplex_str(const Simplex& s);

// Integer chain on the nerve: coefficients on simplices of one level.
struct Chain {
  int level = 0;
  std::vector<std::pair<Simplex, Integer>> terms;
};

struct Chart {
  std::string name;
  std::vector<std::uint32_t> local;  // chart-local generator per slot
};

// Star data for the chartwise Poincare solve, indexed by basis form.
struct StarData {
  std::vector<std::optional<std::uint32_t>> coordinate;
  std::vector<Rational> center;
};

StarData default_star(const Ring& ring);

class Cover;
using CoverPtr = std::shared_ptr<const Cover>;

// Good cover over one globally presented ring. Chart-local generators of chart
// b are rewritten on overlaps as gen_k(b) = gen_k(a) + shift(a, b)_k.
class Cover {
 public:
  const RingPtr& ring() const { return ring_; }
  std::size_t chart_count() const { return charts_.size(); }
  const Chart& chart(std::uint32_t i) const { return charts_.at(i); }
  std::optional<std::uint32_t> chart_id(const std::string& name) const;
  std::size_t slot_count() const { return slots_; }

  const std::vector<Simplex>& maximal() const { return maximal_; }
  int max_level() const { return static_cast<int>(levels_.size()); }
  // Simplices with `level` vertices in lexicographic order; empty beyond max_level.
  const std::vector<Simplex>& simplices(int level) const;
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool in_nerve(const Simplex& s) const;

  bool has_shift(std::uint32_t a, std::uint32_t b) const;
  std::vector<Gaussian> shift(std::uint32_t a, std::uint32_t b) const;  // throws SubstitutionFailure
  const std::vector<Scalar>& partition() const { return partition_; }
  const StarData& star(std::uint32_t chart) const { return stars_.at(chart); }
  // Owning chart of a generator, or -1 for global ones.
  int owner(std::uint32_t gen) const;
  int slot(std::uint32_t gen) const;
  const std::map<std::string, Chain>& cycles() const { return cycles_; }
  const std::map<std::uint32_t, Rational>& centers(std::uint32_t chart) const { return centers_.at(chart); }

  // Rewrites chart-local generators of the charts in `allowed` into those of
  // `target`; generators of other charts raise SubstitutionFailure.
  Scalar rewrite(const Scalar& s, const Simplex& allowed, std::uint32_t target) const;
  SuperForm rewrite(const SuperForm& a, const Simplex& allowed, std::uint32_t target) const;
  // True when no chart-local generator occurs.
  bool is_global(const SuperForm& a) const;

  // Integer coboundary from `level` to `level + 1`, diagonalized on first use.
  std::shared_ptr<const Diagonalization> coboundary(int level) const;
  SparseMatrix coboundary_matrix(int level) const;

  // Simplicial boundary of an integer chain.
  Chain boundary(const Chain& c) const;

 private:
  friend class CoverBuilder;

  RingPtr ring_;
  std::vector<Chart> charts_;
  std::size_t slots_ = 0;
  std::vector<Simplex> maximal_;
  std::vector<std::vector<Simplex>> levels_;
  std::vector<std::map<Simplex, std::size_t>> index_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Gaussian>> shifts_;
  std::vector<Scalar> partition_;
  std::vector<std::map<std::uint32_t, Rational>> centers_;
  std::vector<StarData> stars_;
  std::vector<int> owner_;  // by generator id
  std::vector<int> slot_;
  std::map<std::string, Chain> cycles_;

  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::shared_ptr<const Diagonalization>> cache_;
};

class CoverBuilder {
 public:
  explicit CoverBuilder(RingPtr ring);

  std::uint32_t add_chart(const std::string& name, const std::vector<std::string>& local);
  // Any nonempty tuple; faces are implied.
  void add_simplex(const std::vector<std::string>& charts);
  void set_shift(const std::string& a, const std::string& b, std::vector<Gaussian> values);
  void set_partition(const std::string& chart, Scalar phi);
  void set_center(const std::string& chart, const std::string& gen, Rational value);
  void add_cycle(const std::string& name, Chain c);
  void set_max_level(int level) { max_level_ = level; }

  // Structural checks only; identities are checked by validate_cover.
  CoverPtr build() const;

 private:
  std::uint32_t chart(const std::string& name) const;

  RingPtr ring_;
  std::vector<Chart> charts_;
  std::map<std::string, std::uint32_t> names_;
  std::vector<Simplex> simplices_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Gaussian>> shifts_;
  std::map<std::uint32_t, Scalar> partition_;
  std::vector<std::map<std::uint32_t, Rational>> centers_;
  std::map<std::string, Chain> cycles_;
  int max_level_ = 5;
};

// Partition sum, global partition, shift definitions, shift consistency on
// triples, closed cycles.
Report validate_cover(const Cover& cover);

}  // namespace supergerbe
