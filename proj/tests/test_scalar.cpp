#include <doctest.h>

#include "support/oracle.hpp"

using namespace supergerbe;
using sgtest::evaluate;

namespace {

RingPtr circle_ring() {
  RingSpec spec;
  spec.even = {"a", "c", "s", "x"};
  spec.forms = {"e", "f"};
  spec.derivations = {{"a", "e"}, {"c", "-s*e"}, {"s", "c*e"}, {"x", "f"}};
  spec.relations = {{"c^2", "1 - s^2"}};
  return build_ring(spec);
}

Scalar S(const std::string& text, const RingPtr& r) { return parse_scalar(text, r); }

std::map<std::uint32_t, Gaussian> random_point(const RingPtr& r, sgtest::Random& rnd) {
  Rational t(rnd.integer(-7, 7), rnd.integer(1, 5));
  t.canonicalize();
  auto [c, s] = sgtest::circle_point(t);
  std::map<std::uint32_t, Gaussian> p;
  Rational a(rnd.integer(-4, 4), 3), x(rnd.integer(-4, 4), 5);
  a.canonicalize();
  x.canonicalize();
  p[r->even_id("a")] = Gaussian(a);
  p[r->even_id("c")] = c;
  p[r->even_id("s")] = s;
  p[r->even_id("x")] = Gaussian(x);
  return p;
}

}  // namespace

TEST_CASE("declared relation reduces") {
  auto r = circle_ring();
  CHECK(S("c^2", r) == S("1 - s^2", r));
  CHECK(S("c^2", r).str() == "-s^2 + 1");
  CHECK(S("c^3", r) == S("c - c*s^2", r));
}

TEST_CASE("unit cancellation") {
  auto r = circle_ring();
  CHECK(S("tau*tau^-1*x", r) == S("x", r));
  CHECK(S("tau^2*tau^-3", r) == Scalar::tau(r, -1));
}

TEST_CASE("square of c+s matches the evaluation oracle") {
  auto r = circle_ring();
  Scalar sq = pow(S("c + s", r), 2);
  CHECK(sq == S("1 + 2*c*s", r));
  sgtest::Random rnd(7);
  for (int i = 0; i < 20; ++i) {
    auto p = random_point(r, rnd);
    Gaussian c = p[r->even_id("c")], s = p[r->even_id("s")];
    CHECK(evaluate(sq, p, Gaussian(3)) == (c + s) * (c + s));
  }
}

TEST_CASE("normal form is canonical and idempotent") {
  auto r = circle_ring();
  sgtest::Random rnd(11);
  std::vector<std::uint32_t> gens = {r->even_id("a"), r->even_id("c"), r->even_id("s")};
  for (int i = 0; i < 200; ++i) {
    Scalar x = rnd.scalar(r, gens, 4, 4, true);
    CHECK(normal_form(x) == x);
    for (const auto& t : x.terms()) CHECK(exponent_of(t.mono, r->even_id("c")) <= 1);
    auto p = random_point(r, rnd);
    // Reducing raw products agrees with evaluating the unreduced factors.
    Scalar y = rnd.scalar(r, gens, 3, 3, true);
    CHECK(evaluate(x * y, p, Gaussian(Rational(7, 2))) ==
          evaluate(x, p, Gaussian(Rational(7, 2))) * evaluate(y, p, Gaussian(Rational(7, 2))));
  }
}

TEST_CASE("ring axioms on random triples") {
  auto r = circle_ring();
  sgtest::Random rnd(5);
  std::vector<std::uint32_t> gens = {r->even_id("a"), r->even_id("c"), r->even_id("s"), r->even_id("x")};
  for (int i = 0; i < 200; ++i) {
    Scalar a = rnd.scalar(r, gens, 3, 3, true);
    Scalar b = rnd.scalar(r, gens, 3, 3, true);
    Scalar c = rnd.scalar(r, gens, 3, 3, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("derive follows the table and Leibniz") {
  auto r = circle_ring();
  CHECK(derive(S("a^2", r), "a") == S("2*a", r));
  CHECK(derive(S("c", r), "a") == S("-s", r));
  CHECK(derive(S("c*x", r), "x") == S("c", r));
  CHECK_THROWS_AS(derive(S("c", r), "c"), Error);
  sgtest::Random rnd(3);
  std::vector<std::uint32_t> gens = {r->even_id("a"), r->even_id("c"), r->even_id("s"), r->even_id("x")};
  for (int i = 0; i < 200; ++i) {
    Scalar p = rnd.scalar(r, gens, 4, 3, true);
    Scalar q = rnd.scalar(r, gens, 4, 3, true);
    for (const char* g : {"a", "x"}) CHECK(derive(p * q, g) == derive(p, g) * q + p * derive(q, g));
  }
}

TEST_CASE("derivations are compatible with relations") {
  auto r = circle_ring();
  Scalar rel = S("c*c", r) + S("s*s", r) - S("1", r);
  CHECK(rel.is_zero());
  // d(c^2 + s^2) computed factorwise
  Scalar c = S("c", r), s = S("s", r);
  CHECK(Gaussian(2) * (c * derive(c, "a")) + Gaussian(2) * (s * derive(s, "a")) == Scalar(r));

  RingSpec bad;
  bad.even = {"c", "s"};
  bad.forms = {"e"};
  bad.derivations = {{"c", "s*e"}, {"s", "c*e"}};
  bad.relations = {{"c^2", "1 - s^2"}};
  try {
    build_ring(bad);
    FAIL("expected DerivationMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DerivationMismatch);
  }
}

TEST_CASE("relation sets are checked at build time") {
  RingSpec up;
  up.even = {"c", "s"};
  up.relations = {{"s^2", "1 - c^2"}};
  try {
    build_ring(up);
    FAIL("expected NonTerminatingReduction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonTerminatingReduction);
  }
  RingSpec clash;
  clash.even = {"c", "s"};
  clash.relations = {{"c^2", "s"}, {"c*s", "1"}};
  try {
    build_ring(clash);
    FAIL("expected NonConfluentRelations");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConfluentRelations);
  }
  up.relations.clear();
  CHECK_THROWS_AS(parse_scalar("q + 1", build_ring(up)), Error);
}

TEST_CASE("units") {
  auto r = circle_ring();
  CHECK(try_invert(S("3+4i", r)) == S("(3-4i)/25", r));
  CHECK(try_invert(Scalar::tau(r)) == Scalar::tau(r, -1));
  CHECK(try_invert(S("2i*tau^2", r)) * S("2i*tau^2", r) == S("1", r));
  try {
    try_invert(S("a", r));
    FAIL("expected NotAUnit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAUnit);
  }
  CHECK_THROWS_AS(try_invert(Scalar(r)), Error);
}

TEST_CASE("literals are exact") {
  auto r = circle_ring();
  CHECK(S("1/2 + 1/3", r) == S("5/6", r));
  CHECK(parse_number("3+4i") == Gaussian(3, 4));
  CHECK(parse_number("-7/21") == Gaussian(Rational(-1, 3)));
  try {
    parse_scalar("1.5*a", r);
    FAIL("expected parse error");
  } catch (const ExpressionError& e) {
    CHECK(e.offset() == 0);
  }
  try {
    parse_scalar("a + zz", r);
    FAIL("expected parse error");
  } catch (const ExpressionError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("printing round-trips") {
  auto r = circle_ring();
  sgtest::Random rnd(19);
  std::vector<std::uint32_t> gens = {r->even_id("a"), r->even_id("c"), r->even_id("s"), r->even_id("x")};
  for (int i = 0; i < 200; ++i) {
    Scalar x = rnd.scalar(r, gens, 5, 3, true);
    CHECK(parse_scalar(x.str(), r) == x);
  }
}

TEST_CASE("trig pairs are recognised") {
  RingSpec spec;
  spec.even = {"a", "c", "s"};
  spec.forms = {"e"};
  spec.derivations = {{"a", "e"}, {"c", "i*tau*s*e"}, {"s", "-i*tau*c*e"}};
  spec.relations = {{"c^2", "1 - s^2"}};
  auto r = build_ring(spec);
  REQUIRE(r->trig_pairs().size() == 1);
  const TrigPair& t = r->trig_pairs().front();
  CHECK(t.c == r->even_id("c"));
  CHECK(t.basis == 0);
  CHECK(Scalar::from_poly(r, t.kappa) == Scalar::tau(r));
  CHECK(r->coordinate_basis(r->even_id("a")) == 0u);
  CHECK(!r->coordinate_basis(r->even_id("c")));
}
