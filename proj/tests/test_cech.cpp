#include <doctest.h>

#include "supergerbe/builtins.hpp"
#include "supergerbe/cech.hpp"
#include "support/oracle.hpp"

using namespace supergerbe;

namespace {

// k mutually overlapping charts on a line, x_b = x_a + (b - a).
CoverPtr simplex_cover(unsigned k, bool consistent = true) {
  RingSpec spec;
  for (unsigned i = 0; i < k; ++i) {
    spec.even.push_back("x_" + std::to_string(i));
    spec.derivations.emplace_back("x_" + std::to_string(i), "e");
  }
  spec.even.push_back("y");
  spec.derivations.emplace_back("y", "f");
  spec.odd = {"t1", "t2"};
  spec.forms = {"e", "f"};
  RingPtr ring = build_ring(spec);
  CoverBuilder b(ring);
  std::vector<std::string> all;
  for (unsigned i = 0; i < k; ++i) {
    all.push_back("V" + std::to_string(i));
    b.add_chart(all.back(), {"x_" + std::to_string(i)});
    b.set_partition(all.back(), Scalar::constant(ring, Gaussian(Rational(1, k))));
  }
  b.add_simplex(all);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j) {
      long n = static_cast<long>(j - i);
      if (!consistent && i == 0 && j == 2) n += 5;
      b.set_shift(all[i], all[j], {Gaussian(n)});
    }
  return b.build();
}

std::vector<std::uint32_t> gens(const RingPtr& r, std::initializer_list<const char*> names) {
  std::vector<std::uint32_t> out;
  for (const char* n : names) out.push_back(r->even_id(n));
  return out;
}

// Random family whose components use the given generators only.
CechFamily random_family(const Cover& c, int level, const std::vector<std::uint32_t>& g, sgtest::Random& rnd,
                         int degree = -1) {
  CechFamily f = zero_family(c, level);
  for (auto& p : f.parts)
    p = degree < 0 ? rnd.form(c.ring(), g, 3, 1) : rnd.homogeneous(c.ring(), g, degree, 0, 2);
  return f;
}

// Local generators of each simplex's first chart plus the given globals.
CechFamily random_local_family(const Cover& c, int level, const std::vector<std::uint32_t>& global,
                               sgtest::Random& rnd) {
  CechFamily f = zero_family(c, level);
  const auto& simp = c.simplices(level);
  for (std::size_t i = 0; i < simp.size(); ++i) {
    auto g = global;
    for (auto l : c.chart(simp[i][0]).local) g.push_back(l);
    f.parts[i] = rnd.form(c.ring(), g, 3, 1);
  }
  return f;
}

SuperForm F(const std::string& text, const RingPtr& r) { return parse_form(text, r); }

}  // namespace

TEST_CASE("circle cover validates") {
  auto c = torus_cover(1, true);
  auto rep = validate_cover(*c);
  CHECK(rep.ok());
  CHECK(c->simplices(1).size() == 3);
  CHECK(c->simplices(2).size() == 3);
  CHECK(c->simplices(3).empty());
}

TEST_CASE("torus nerve sizes") {
  auto t2 = torus_cover(2, false);
  CHECK(validate_cover(*t2).ok());
  CHECK(t2->simplices(1).size() == 9);
  auto t3 = torus_cover(3, true);
  CHECK(validate_cover(*t3).ok());
  std::vector<std::size_t> expect = {27, 351, 1188, 1809, 1512};
  for (int q = 1; q <= 5; ++q) CHECK(t3->simplices(q).size() == expect[static_cast<std::size_t>(q - 1)]);
}

TEST_CASE("delta at level one is B_b - B_a with rewriting") {
  auto c = torus_cover(1, false);
  auto r = c->ring();
  CechFamily b = zero_family(*c, 1);
  for (std::uint32_t i = 0; i < 3; ++i) b.parts[i] = F("a1_" + std::to_string(i) + "*e1", r);
  auto db = cech_delta(*c, b);
  // U0 U1 shift 0, U0 U2 shift 1, U1 U2 shift 0
  CHECK(db.parts[0].is_zero());
  CHECK(db.parts[1] == F("e1", r));
  CHECK(db.parts[2].is_zero());
  CHECK(is_zero(cech_delta(*c, global_family(*c, F("c1*e1 + 3", r), 1))));
}

TEST_CASE("delta squares to zero and commutes with d") {
  sgtest::Random rnd(11);
  for (unsigned k : {3u, 4u}) {
    auto c = simplex_cover(k);
    auto g = gens(c->ring(), {"y"});
    for (int level = 1; level + 2 <= c->max_level(); ++level)
      for (int rep = 0; rep < 20; ++rep) {
        auto w = random_local_family(*c, level, g, rnd);
        CHECK(is_zero(cech_delta(*c, cech_delta(*c, w))));
        CHECK(first_difference(cech_delta(*c, family_d(w)), family_d(cech_delta(*c, w))) == -1);
      }
  }
  auto t2 = torus_cover(2, true);
  auto g2 = gens(t2->ring(), {"c1", "s2"});
  for (int rep = 0; rep < 5; ++rep) {
    auto w = random_local_family(*t2, 1, g2, rnd);
    CHECK(is_zero(cech_delta(*t2, cech_delta(*t2, w))));
  }
}

TEST_CASE("delta solve round trips on extendable families") {
  sgtest::Random rnd(12);
  auto c = simplex_cover(4);
  auto g = gens(c->ring(), {"y"});
  for (int level = 1; level + 1 <= c->max_level(); ++level)
    for (int rep = 0; rep < 15; ++rep) {
      auto w = cech_delta(*c, random_local_family(*c, level, g, rnd));
      auto rho = cech_delta_solve(*c, w);
      CHECK(first_difference(cech_delta(*c, rho), canonicalize(*c, w)) == -1);
    }
  CHECK(is_zero(cech_delta_solve(*c, zero_family(*c, 2))));
}

TEST_CASE("delta solve on the circle") {
  sgtest::Random rnd(13);
  auto c = torus_cover(1, true);
  auto r = c->ring();
  auto g = gens(r, {"c1", "s1"});
  for (int rep = 0; rep < 30; ++rep) {
    auto w = cech_delta(*c, random_family(*c, 1, g, rnd));
    auto rho = cech_delta_solve(*c, w);
    CHECK(first_difference(cech_delta(*c, rho), w) == -1);
  }
  // hand-built: eta = (c, s, c s) as functions
  CechFamily eta = zero_family(*c, 1);
  eta.parts = {F("c1", r), F("s1", r), F("c1*s1", r)};
  auto w = cech_delta(*c, eta);
  CHECK(w.parts[0] == F("s1 - c1", r));
  auto rho = cech_delta_solve(*c, w);
  CHECK(first_difference(cech_delta(*c, rho), w) == -1);
}

TEST_CASE("delta solve rejects what the partition formula cannot reach") {
  auto c = torus_cover(1, false);
  auto r = c->ring();
  CechFamily a = zero_family(*c, 1);
  for (std::uint32_t i = 0; i < 3; ++i) a.parts[i] = F("a1_" + std::to_string(i), r);
  // (0, 1, 0): a coboundary of the angles, but outside the formula's reach
  auto w = cech_delta(*c, a);
  CHECK(w.parts[1] == F("1", r));
  try {
    cech_delta_solve(*c, w);
    FAIL("expected NotACocycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACocycle);
  }

  auto s = simplex_cover(3);
  CechFamily bad = zero_family(*s, 2);
  bad.parts[0] = F("1", s->ring());
  try {
    cech_delta_solve(*s, bad);
    FAIL("expected NotACocycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACocycle);
  }
}

TEST_CASE("descend returns the global form") {
  auto c = torus_cover(1, true);
  auto r = c->ring();
  auto g = F("c1*t1*e1 + s1^2", r);
  CHECK(descend(*c, global_family(*c, g, 1)) == g);
  CechFamily f = global_family(*c, g, 1);
  f.parts[2] = F("c1", r);
  try {
    descend(*c, f);
    FAIL("expected NotACocycle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotACocycle);
  }
}

TEST_CASE("missing components are reported") {
  auto c = torus_cover(1, false);
  CechFamily f = zero_family(*c, 2);
  f.parts.pop_back();
  try {
    cech_delta(*c, f);
    FAIL("expected MissingComponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingComponent);
  }
}

TEST_CASE("poincare examples") {
  auto c = euclidean_cover(2, 3);
  auto r = c->ring();
  auto st = default_star(*r);
  CHECK(poincare_solve(F("e1", r), st) == F("x1", r));
  CHECK(poincare_solve(F("d(t1)", r), st) == F("t1", r));
  st.center[0] = Rational(1, 3);
  CHECK(poincare_solve(F("e1", r), st) == F("x1 - 1/3", r));
  CHECK(poincare_solve(F("e1*e2", r), default_star(*r)) == F("1/2*x1*e2 - 1/2*x2*e1", r));

  try {
    poincare_solve(F("x1*e2", r), st);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotClosed);
  }
  try {
    poincare_solve(F("1", r), st);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("poincare round trip on random polynomial forms") {
  sgtest::Random rnd(14);
  auto c = euclidean_cover(2, 3);
  auto r = c->ring();
  auto g = gens(r, {"x1", "x2"});
  StarData st = default_star(*r);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    st.center = {Rational(rnd.integer(-2, 2), 3), Rational(rnd.integer(-2, 2), 2)};
    for (auto& q : st.center) q.canonicalize();
    auto beta = rnd.form(r, g, 4, 2);
    auto alpha = d(beta);
    if (alpha.is_zero()) continue;
    CHECK(d(poincare_solve(alpha, st)) == alpha);
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("poincare on periodic coefficients") {
  sgtest::Random rnd(15);
  auto c = torus_cover(1, true);
  auto r = c->ring();
  // d(i s / tau) = c e
  CHECK(poincare_solve(*c, 0, F("c1*e1", r)) == F("i*tau^-1*s1", r));
  auto alpha = F("a1_0*c1*e1 + s1^3*e1", r);
  CHECK(d(poincare_solve(*c, 0, alpha)) == alpha);
  auto g = gens(r, {"a1_1", "c1", "s1"});
  for (int rep = 0; rep < 100; ++rep) {
    auto alpha2 = d(rnd.form(r, g, 3, 1));
    if (alpha2.is_zero()) continue;
    CHECK(d(poincare_solve(*c, 1, alpha2)) == alpha2);
  }
  auto t2 = torus_cover(2, false);
  auto r2 = t2->ring();
  auto g2 = gens(r2, {"a1_00", "a2_00", "c1", "s1", "c2", "s2"});
  for (int rep = 0; rep < 40; ++rep) {
    auto alpha3 = d(rnd.form(r2, g2, 3, 0));
    if (alpha3.is_zero()) continue;
    CHECK(d(poincare_solve(*t2, 0, alpha3)) == alpha3);
  }
}

TEST_CASE("poincare rejects non-polynomial body") {
  RingSpec spec;
  spec.even = {"x", "y"};
  spec.forms = {"e"};
  spec.derivations = {{"x", "e"}, {"y", "y*e"}};
  auto r = build_ring(spec);
  try {
    poincare_solve(F("y*e", r), default_star(*r));
    FAIL("expected NonPolynomialBody");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPolynomialBody);
  }
}

TEST_CASE("validate_cover names failing identities") {
  {
    RingSpec spec;
    spec.even = {"x"};
    spec.forms = {"e"};
    spec.derivations = {{"x", "e"}};
    auto r = build_ring(spec);
    CoverBuilder b(r);
    b.add_chart("A", {});
    b.set_partition("A", parse_scalar("1 + x", r));
    auto rep = validate_cover(*b.build());
    REQUIRE(rep.first_failure());
    CHECK(rep.first_failure()->identity == "partition-sum");
  }
  {
    auto rep = validate_cover(*simplex_cover(3, false));
    REQUIRE(rep.first_failure());
    CHECK(rep.first_failure()->identity == "substitution-consistency");
    CHECK(rep.first_failure()->where == "[0,1,2]");
  }
  CHECK(validate_cover(*simplex_cover(4)).ok());
}

TEST_CASE("fundamental cycles are closed") {
  for (unsigned dim = 1; dim <= 3; ++dim) {
    auto c = torus_cover(dim, false);
    const Chain& z = c->cycles().at("fundamental");
    CHECK(c->boundary(z).terms.empty());
    CHECK(z.terms.size() == (dim == 1 ? 3u : dim == 2 ? 18u : 162u));
  }
}

TEST_CASE("integer diagonalization") {
  SparseMatrix m(3, 2);
  m.data[0] = {{0, Integer(2)}, {1, Integer(4)}};
  m.data[1] = {{0, Integer(6)}, {1, Integer(8)}};
  m.data[2] = {{1, Integer(3)}};
  Diagonalization dz(m);
  CHECK(dz.rank() == 2);
  auto x = dz.solve_rational({Rational(2), Rational(6), Rational(0)});
  REQUIRE(x);
  CHECK(m.apply(*x) == std::vector<Rational>{Rational(2), Rational(6), Rational(0)});
  auto xi = dz.solve_integer({Integer(6), Integer(14), Integer(3)});
  REQUIRE(xi);
  CHECK(m.apply(*xi) == std::vector<Integer>{Integer(6), Integer(14), Integer(3)});
  CHECK_FALSE(dz.solve_integer({Integer(1), Integer(0), Integer(0)}));
  auto coker = dz.cokernel_basis();
  REQUIRE(coker.size() == 1);
  auto wt = m.apply_transpose(coker[0]);
  CHECK(wt == std::vector<Integer>{Integer(0), Integer(0)});
}

TEST_CASE("integral lift and witness on the circle nerve") {
  auto c = torus_cover(1, false);
  auto dz = c->coboundary(1);
  CHECK(dz->rank() == 2);
  Rational half(1, 2);
  auto lift = dz->integral_lift({Rational(0), half, Rational(0)});
  CHECK_FALSE(lift.integral);
  // witness is a cycle with non-integral value
  CHECK(c->coboundary_matrix(1).apply_transpose(lift.witness) == std::vector<Integer>{0, 0, 0});
  CHECK_FALSE(is_integer(lift.witness_value));
  auto ok = dz->integral_lift({Rational(1, 3), Rational(7, 3), Rational(2)});
  CHECK(ok.integral);
  auto back = c->coboundary_matrix(1).apply(ok.r);
  for (std::size_t i = 0; i < 3; ++i) CHECK(is_integer(Rational(std::vector<Rational>{Rational(1, 3), Rational(7, 3), Rational(2)}[i] - back[i])));
}

TEST_CASE("parallel family ops match serial") {
  sgtest::Random rnd(16);
  auto c = simplex_cover(4);
  auto g = gens(c->ring(), {"y"});
  auto w = random_local_family(*c, 2, g, rnd);
  Exec par{4};
  CHECK(first_difference(cech_delta(*c, w, par), cech_delta(*c, w)) == -1);
  auto dw = cech_delta(*c, w);
  CHECK(first_difference(cech_delta_solve(*c, dw, par), cech_delta_solve(*c, dw)) == -1);
}
