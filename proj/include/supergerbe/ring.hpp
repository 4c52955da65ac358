#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "supergerbe/number.hpp"

namespace supergerbe {

// Generator 0 is the formal unit tau; declared even generators start at 1.
constexpr std::uint32_t kTau = 0;

struct Factor {
  std::uint32_t gen;
  std::int32_t exp;
  friend bool operator==(const Factor& a, const Factor& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
};

// Sorted by generator, no zero exponents. Only tau may carry a negative exponent.
using Monomial = boost::container::small_vector<Factor, 4>;

int monomial_degree(const Monomial& m);
int tau_power(const Monomial& m);
int exponent_of(const Monomial& m, std::uint32_t gen);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
bool monomial_divides(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& b, const Monomial& a);
Monomial monomial_lcm(const Monomial& a, const Monomial& b);
bool monomials_coprime(const Monomial& a, const Monomial& b);

// Graded order on non-tau degree, then lex with earlier generators ranking
// higher, then tau power. Returns <0, 0, >0.
int monomial_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Gaussian coef;
};

// Terms sorted by decreasing monomial, nonzero coefficients.
using Poly = std::vector<Term>;

Poly poly_add(const Poly& a, const Poly& b, const Gaussian& scale = Gaussian(1));
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Gaussian& c);
Poly poly_from_terms(std::vector<Term> terms);

enum class SymbolKind { Tau, Even, Odd, Form };

struct Symbol {
  SymbolKind kind;
  std::uint32_t index;
};

// A pair (c, s) with c^2 = 1 - s^2, dc = -w s e_k and ds = w c e_k.
// z = c + i s then satisfies dz = kappa z e_k with kappa = i w.
struct TrigPair {
  std::uint32_t c;
  std::uint32_t s;
  std::uint32_t basis;
  Poly kappa;
};

class Ring {
 public:
  struct Relation {
    Monomial lhs;
    Poly rhs;
  };
  using Derivation = std::vector<std::pair<std::uint32_t, Poly>>;

  std::uint32_t even_count() const { return static_cast<std::uint32_t>(even_.size()); }
  std::uint32_t odd_count() const { return static_cast<std::uint32_t>(odd_.size()); }
  std::uint32_t form_count() const { return static_cast<std::uint32_t>(forms_.size()); }

  // gen is 1-based for even generators; 0 names tau.
  const std::string& even_name(std::uint32_t gen) const;
  const std::string& odd_name(std::uint32_t j) const { return odd_.at(j); }
  const std::string& form_name(std::uint32_t k) const { return forms_.at(k); }
  const std::vector<std::string>& even_names() const { return even_; }
  const std::vector<std::string>& odd_names() const { return odd_; }
  const std::vector<std::string>& form_names() const { return forms_; }

  std::optional<Symbol> lookup(const std::string& name) const;
  std::uint32_t even_id(const std::string& name) const;

  const std::vector<Relation>& relations() const { return relations_; }
  const Derivation& derivation(std::uint32_t gen) const;
  bool is_d_constant(std::uint32_t gen) const { return derivation(gen).empty(); }
  bool in_relation(std::uint32_t gen) const;

  // Basis index k when d(gen) = e_k exactly and gen is not constrained.
  std::optional<std::uint32_t> coordinate_basis(std::uint32_t gen) const;
  const std::vector<TrigPair>& trig_pairs() const { return trig_; }
  const TrigPair* trig_pair_of(std::uint32_t gen) const;

  bool same_declaration(const Ring& other) const;

 private:
  friend class RingBuilder;

  std::vector<std::string> even_;
  std::vector<std::string> odd_;
  std::vector<std::string> forms_;
  std::map<std::string, Symbol> symbols_;
  std::vector<Derivation> derivations_;  // index gen-1
  std::vector<Relation> relations_;
  std::vector<bool> constrained_;  // index gen-1
  std::vector<TrigPair> trig_;
};

using RingPtr = std::shared_ptr<const Ring>;

class RingBuilder {
 public:
  std::uint32_t add_even(const std::string& name);
  std::uint32_t add_odd(const std::string& name);
  std::uint32_t add_form(const std::string& name);

  // Ring with symbols only; used to parse derivation and relation entries.
  RingPtr symbols() const;

  void set_derivation(std::uint32_t gen, Ring::Derivation d);
  void add_relation(Monomial lhs, Poly rhs);

  // Validates termination, confluence and derivation compatibility.
  RingPtr build() const;

 private:
  void declare(const std::string& name, Symbol sym);

  Ring ring_;
};

}  // namespace supergerbe
