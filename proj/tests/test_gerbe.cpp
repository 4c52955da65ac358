#include <doctest.h>

#include "supergerbe/builtins.hpp"
#include "supergerbe/gerbe.hpp"
#include "support/oracle.hpp"

using namespace supergerbe;

namespace {

SuperForm F(const std::string& text, const RingPtr& r) { return parse_form(text, r); }

std::vector<std::uint32_t> periodic(const RingPtr& r, unsigned dim) {
  std::vector<std::uint32_t> g;
  for (unsigned k = 1; k <= dim; ++k) {
    g.push_back(r->even_id("c" + std::to_string(k)));
    g.push_back(r->even_id("s" + std::to_string(k)));
  }
  return g;
}

const CoverPtr& t3() {
  static CoverPtr c = torus_cover(3, true);
  return c;
}

const GerbeCocycle& level(int k) {
  static GerbeCocycle g1 = construct_from_integral_form(t3(), F("tau*e1*e2*e3", t3()->ring()));
  static GerbeCocycle g2 = construct_from_integral_form(t3(), F("2*tau*e1*e2*e3", t3()->ring()));
  return k == 1 ? g1 : g2;
}

// Cup product of the axis shift cocycles, v0 < v1 < v2 < v3.
IntegerClass shift_cup(const CoverPtr& c) {
  IntegerClass z{c, 4, {}};
  for (const auto& s : c->simplices(4)) {
    Integer v = 1;
    for (unsigned k = 0; k < 3; ++k) {
      auto sh = c->shift(s[k], s[k + 1]);
      v *= sh[k].re().get_num();
    }
    z.values.push_back(v);
  }
  return z;
}

// Random even data for a coboundary shift.
TrivializationCertificate random_shift(const CoverPtr& c, sgtest::Random& rnd, unsigned dim) {
  TrivializationCertificate t;
  t.f = zero_family(*c, 2);
  t.z = zero_family(*c, 1);
  auto g = periodic(c->ring(), dim);
  const auto& pairs = c->simplices(2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!rnd.coin(0.3)) continue;
    auto gl = g;
    for (auto l : c->chart(pairs[i][0]).local) gl.push_back(l);
    t.f.parts[i] = rnd.homogeneous(c->ring(), gl, 0, 0, 2);
  }
  for (std::size_t i = 0; i < t.z.parts.size(); ++i) {
    auto gl = g;
    for (auto l : c->chart(static_cast<std::uint32_t>(i)).local) gl.push_back(l);
    t.z.parts[i] = rnd.homogeneous(c->ring(), gl, 1, 0, 2);
  }
  t.m.assign(c->simplices(3).size(), 0);
  for (auto& m : t.m) m = rnd.integer(-1, 1) * (rnd.coin(0.1) ? 1 : 0);
  return t;
}

SuperForm random_closed_soul(const RingPtr& r, const std::vector<std::uint32_t>& g, sgtest::Random& rnd) {
  for (;;) {
    auto beta = d(soul(rnd.homogeneous(r, g, 1, 0, 3)));
    if (!beta.is_zero()) return beta;
  }
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("trivial gerbes pass and carry db") {
  sgtest::Random rnd(21);
  auto c = torus_cover(2, true);
  auto r = c->ring();
  for (int rep = 0; rep < 10; ++rep) {
    auto b = rnd.homogeneous(r, periodic(r, 2), 2, 0, 3);
    auto g = make_trivial(c, b);
    CHECK(check_gerbe_cocycle(g).ok());
    CHECK(curvature(g) == d(b));
    CHECK(dd_class(g).is_zero_class());
    CHECK(check_rep_identity(g).ok());
  }
  CHECK(curvature(make_trivial(c, F("e1*e2", r))).is_zero());
  auto e = euclidean_cover(2, 3);
  CHECK(curvature(make_trivial(e, F("x1*d(t1)*d(t1)", e->ring()))) == F("e1*d(t1)*d(t1)", e->ring()));
  CHECK(kind_of([&] { make_trivial(e, F("t1*e1*e2", e->ring())); }) == ErrorKind::OddParity);
}

TEST_CASE("perturbed curving fails descent on a named pair") {
  auto c = torus_cover(1, true);
  auto r = c->ring();
  auto g = make_trivial(c, F("d(t1)*d(t1)", r));
  g.B.parts[0] += F("a1_0*d(t1)*d(t1)", r);
  auto rep = check_gerbe_cocycle(g);
  REQUIRE(rep.first_failure());
  CHECK(rep.first_failure()->identity == "descent");
  CHECK(rep.first_failure()->where == "(U0 U1)");
}

TEST_CASE("torus level gerbes: curvature and dd pairing") {
  auto r = t3()->ring();
  auto zeta = shift_cup(t3());
  CHECK(zeta.is_cocycle());
  auto zp = zeta.fundamental_pairing();
  REQUIRE(zp);
  CHECK(abs(*zp) == 1);
  for (int k : {1, 2}) {
    const auto& g = level(k);
    CHECK(check_gerbe_cocycle(g).ok());
    CHECK(curvature(g) == Gaussian(k) * F("tau*e1*e2*e3", r));
    auto dd = dd_class(g);
    CHECK(dd.is_cocycle());
    CHECK(*dd.fundamental_pairing() == k);
    // independent oracle: k times the cup product of the shift cocycles
    IntegerClass kz = zeta;
    for (auto& v : kz.values) v *= k * *zp;
    CHECK(dd.cohomologous(kz));
    CHECK(check_rep_identity(g).ok());
  }
}

TEST_CASE("homomorphism laws") {
  sgtest::Random rnd(22);
  auto r = t3()->ring();
  const auto& g1 = level(1);
  const auto ib = make_trivial(t3(), rnd.homogeneous(r, periodic(r, 3), 2, 0, 2));
  for (const auto* other : {&level(2), &ib}) {
    auto t = tensor(g1, *other);
    CHECK(check_gerbe_cocycle(t).ok());
    CHECK(dd_class(t).values == (dd_class(g1) + dd_class(*other)).values);
    CHECK(curvature(t) == curvature(g1) + curvature(*other));
  }
  CHECK(dd_class(dual(g1)).values == (-dd_class(g1)).values);
  CHECK(curvature(dual(g1)) == -curvature(g1));
  CHECK(dd_class(tensor(g1, dual(g1))).is_zero_class());
  auto same = tensor(g1, make_trivial(t3(), SuperForm(r)));
  CHECK(first_difference(same.h, g1.h) == -1);
  CHECK(first_difference(same.B, g1.B) == -1);

  auto ipb = ChartMap::body_inclusion(r);
  auto soulful = tensor(g1, make_trivial(t3(), F("t1*t2*e1*e2 + d(t3)*d(t1)", r)));
  auto pulled = pullback_gerbe(soulful, ipb);
  CHECK(check_gerbe_cocycle(pulled).ok());
  for (const auto& p : pulled.B.parts) CHECK(is_pure_body(p));
  CHECK(curvature(pulled) == pullback(curvature(soulful), ipb));
  CHECK(dd_class(pulled).values == dd_class(soulful).values);
}

TEST_CASE("trivialize round trips") {
  sgtest::Random rnd(23);
  auto c = torus_cover(2, true);
  auto r = c->ring();
  auto zero = trivialize(make_trivial(c, SuperForm(r)));
  CHECK(is_zero(zero.f));
  CHECK(is_zero(zero.z));

  for (int rep = 0; rep < 8; ++rep) {
    auto shift = random_shift(c, rnd, 2);
    auto g = make_coboundary(c, shift);
    REQUIRE(check_gerbe_cocycle(g).ok());
    auto cert = trivialize(g);
    CHECK(verify_certificate(g, cert).ok());
  }

  auto beta = random_closed_soul(r, periodic(r, 2), rnd);
  auto ib = make_trivial(c, beta);
  auto cert = trivialize(ib);
  CHECK(verify_certificate(ib, cert).ok());
  CHECK(d(cert.z.parts[0]) == beta);

  auto bad = cert;
  bad.z.parts[1] += F("c1*e2", r);
  auto rep1 = verify_certificate(ib, bad);
  REQUIRE(rep1.first_failure());
  CHECK(rep1.first_failure()->identity == "A = delta z + tau df");
  bad = cert;
  bad.m[0] += 1;
  auto rep2 = verify_certificate(ib, bad);
  REQUIRE(rep2.first_failure());
  CHECK(rep2.first_failure()->identity == "h = delta f + m");
}

TEST_CASE("trivialize obstructions") {
  CHECK(kind_of([&] { trivialize(level(1)); }) == ErrorKind::ObstructionNonzero);
  auto c = torus_cover(2, false);
  auto r = c->ring();
  CHECK(kind_of([&] { trivialize(make_trivial(c, F("1/2*tau*e1*e2", r))); }) == ErrorKind::ObstructionNonzero);
  // flat with integral dd but nontrivial class: level-1 times its dual shifted by a flat half
  auto g = tensor(level(1), dual(level(1)));
  CHECK(verify_certificate(g, trivialize(g)).ok());
}

TEST_CASE("trivial connections versus integrality") {
  sgtest::Random rnd(24);
  auto c = torus_cover(2, true);
  auto r = c->ring();
  struct Case {
    SuperForm b;
    bool ok;
    std::optional<Integer> pairing;
  };
  std::vector<Case> cases = {
      {d(F("s1*e2", r)), true, Integer(0)},
      {F("tau*e1*e2", r), true, Integer(1)},
      {F("1/2*tau*e1*e2", r), false, std::nullopt},
      {random_closed_soul(r, periodic(r, 2), rnd), true, Integer(0)},
  };
  for (const auto& cs : cases) {
    auto ic = integral_check(c, cs.b);
    CHECK(ic.integral == cs.ok);
    bool trivialized = true;
    try {
      auto g = make_trivial(c, cs.b);
      auto cert = trivialize(g);
      CHECK(verify_certificate(g, cert).ok());
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ObstructionNonzero);
      trivialized = false;
    }
    CHECK(trivialized == cs.ok);
    if (cs.ok) CHECK(*ic.integer_class.fundamental_pairing() == *cs.pairing);
    if (!cs.ok) {
      CHECK(ic.witness_value == "1/2");
      CHECK(c->coboundary_matrix(2).apply_transpose(ic.witness) ==
            std::vector<Integer>(c->simplices(2).size(), Integer(0)));
    }
  }
  CHECK(kind_of([&] { integral_check(c, F("c1*d(t1)*d(t1)", r)); }) == ErrorKind::NotClosed);
  auto nonunit = integral_check(c, F("e1*e2", r));
  CHECK_FALSE(nonunit.integral);
}

TEST_CASE("construct special cases") {
  sgtest::Random rnd(25);
  auto c = torus_cover(2, true);
  auto r = c->ring();
  auto zero = construct_from_integral_form(c, SuperForm(r));
  CHECK(is_zero(zero.h));
  CHECK(is_zero(zero.B));
  auto beta = soul(rnd.homogeneous(r, periodic(r, 2), 2, 0, 3));
  if (beta.is_zero()) beta = F("t1*t2*e1*e2", r);
  auto g = construct_from_integral_form(c, d(beta));
  CHECK(curvature(g) == d(beta));
  auto diff = tensor(g, dual(make_trivial(c, beta)));
  CHECK(verify_certificate(diff, trivialize(diff)).ok());
  CHECK(kind_of([&] { construct_from_integral_form(t3(), F("1/2*tau*e1*e2*e3", t3()->ring())); }) ==
        ErrorKind::NotIntegral);
}

TEST_CASE("rep identity under coboundary shifts") {
  sgtest::Random rnd(26);
  for (int rep = 0; rep < 5; ++rep) {
    auto shift = make_coboundary(t3(), random_shift(t3(), rnd, 3));
    auto g = tensor(level(1 + rep % 2), shift);
    CHECK(check_gerbe_cocycle(g).ok());
    CHECK(check_rep_identity(g).ok());
    CHECK(dd_class(g).cohomologous(dd_class(level(1 + rep % 2))));
  }
}

TEST_CASE("flat classes form a torsor") {
  auto c = t3();
  auto r = c->ring();
  sgtest::Random rnd(27);
  auto flat = [&](const char* q) { return make_trivial(c, F(std::string(q) + "*tau*e1*e2", r)); };
  auto g = level(1);
  auto g2 = tensor(tensor(g, flat("1/3")), make_coboundary(c, random_shift(c, rnd, 3)));
  int hits = 0;
  std::string found;
  for (const char* q : {"0", "1/2", "1/3", "1/4"}) {
    try {
      auto diff = tensor(tensor(g2, dual(g)), dual(flat(q)));
      if (verify_certificate(diff, trivialize(diff)).ok()) {
        ++hits;
        found = q;
      }
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ObstructionNonzero);
    }
  }
  CHECK(hits == 1);
  CHECK(found == "1/3");
}
