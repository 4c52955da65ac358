#include <doctest.h>

#include <algorithm>
#include <bit>

#include "support/oracle.hpp"

using namespace supergerbe;

namespace {

RingPtr r23() {
  RingSpec spec;
  spec.even = {"x1", "x2"};
  spec.odd = {"t1", "t2", "t3"};
  spec.forms = {"e1", "e2"};
  spec.derivations = {{"x1", "e1"}, {"x2", "e2"}};
  return build_ring(spec);
}

std::vector<std::uint32_t> xs(const RingPtr& r) { return {r->even_id("x1"), r->even_id("x2")}; }

SuperForm F(const std::string& text, const RingPtr& r) { return parse_form(text, r); }

// Word oracle: a monomial as a list of letters, sorted by adjacent swaps.
struct Letter {
  int kind;  // 0 theta, 1 dx, 2 dtheta
  unsigned idx;
  int deg() const { return kind == 0 ? 0 : 1; }
  int par() const { return kind == 1 ? 0 : 1; }
  bool operator<(const Letter& o) const { return kind != o.kind ? kind < o.kind : idx < o.idx; }
};

std::vector<Letter> word(const FormKey& k) {
  std::vector<Letter> w;
  for (unsigned j = 0; j < 64; ++j)
    if ((k.theta >> j) & 1u) w.push_back({0, j});
  for (unsigned j = 0; j < 64; ++j)
    if ((k.dx >> j) & 1u) w.push_back({1, j});
  for (unsigned j = 0; j < 16; ++j)
    for (unsigned m = 0; m < DThetaPack::get(k.dtheta, j); ++m) w.push_back({2, j});
  return w;
}

int sort_word(std::vector<Letter>& w, FormKey& out) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j + 1] < w[j]) {
        if ((w[j].deg() * w[j + 1].deg() + w[j].par() * w[j + 1].par()) & 1) sign = -sign;
        std::swap(w[j], w[j + 1]);
      }
  out = FormKey{};
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Letter& l = w[i];
    if (l.kind != 2 && i + 1 < w.size() && w[i + 1].kind == l.kind && w[i + 1].idx == l.idx) return 0;
    if (l.kind == 0) out.theta |= Mask{1} << l.idx;
    if (l.kind == 1) out.dx |= Mask{1} << l.idx;
    if (l.kind == 2) out.dtheta = DThetaPack::set(out.dtheta, l.idx, DThetaPack::get(out.dtheta, l.idx) + 1);
  }
  return sign;
}

int deg(const SuperForm& a) { return *a.degree(); }
int par(const SuperForm& a) { return *a.parity(); }

}  // namespace

TEST_CASE("key products agree with the letter-sorting oracle") {
  sgtest::Random rnd(1);
  for (int i = 0; i < 2000; ++i) {
    FormKey a = rnd.key(4, 3, 3), b = rnd.key(4, 3, 3);
    auto w = word(a);
    auto wb = word(b);
    w.insert(w.end(), wb.begin(), wb.end());
    FormKey expect, got;
    int s = sort_word(w, expect);
    int t = key_product(a, b, got);
    REQUIRE(s == t);
    if (s) CHECK(got == expect);
  }
}

TEST_CASE("odd generators anticommute") {
  auto r = r23();
  SuperFunction t1 = SuperFunction::theta(r, 0), t2 = SuperFunction::theta(r, 1);
  CHECK(sf_mul(t1, t1).is_zero());
  CHECK(sf_mul(t1, t2) == -sf_mul(t2, t1));
  SuperFunction u = Scalar::constant(r, Gaussian(1)) + sf_mul(t1, t2);
  CHECK(sf_mul(u, u) == Scalar::constant(r, Gaussian(1)) + Gaussian(2) * sf_mul(t1, t2));
  CHECK(parse_function("t1*t2", r) == sf_mul(t1, t2));
}

TEST_CASE("supercommutativity on random homogeneous functions") {
  auto r = r23();
  sgtest::Random rnd(2);
  for (int i = 0; i < 300; ++i) {
    int pa = rnd.integer(0, 1), pb = rnd.integer(0, 1);
    SuperFunction a = rnd.homogeneous(r, xs(r), 0, pa).to_function();
    SuperFunction b = rnd.homogeneous(r, xs(r), 0, pb).to_function();
    CHECK(a * b == ((pa * pb) ? -(b * a) : b * a));
    CHECK(body_function(a * b).body() == a.body() * b.body());
  }
}

TEST_CASE("exponential and logarithm of nilpotents") {
  auto r = r23();
  SuperFunction one = Scalar::constant(r, Gaussian(1));
  SuperFunction t12 = parse_function("t1*t2", r);
  CHECK(sf_exp(t12) == one + t12);
  CHECK(sf_log(one).is_zero());
  CHECK_THROWS_AS(sf_exp(parse_function("x1 + t1*t2", r)), Error);
  CHECK_THROWS_AS(sf_log(parse_function("2 + t1*t2", r)), Error);
  try {
    sf_exp(one);
    FAIL("expected NonNilpotentArgument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonNilpotentArgument);
  }
  sgtest::Random rnd(3);
  for (int i = 0; i < 200; ++i) {
    SuperFunction n = soul(rnd.homogeneous(r, xs(r), 0, 0, 4)).to_function();
    SuperFunction e = sf_exp(n);
    CHECK(e.body() == one.body());
    CHECK(sf_log(e) == n);
    CHECK(sf_exp(sf_log(one + n)) == one + n);
    // truncated series oracle
    SuperFunction series = one, power = one;
    Rational fact = 1;
    for (long k = 1; k <= 4; ++k) {
      power = power * n;
      fact *= k;
      series += Gaussian(1 / fact) * power;
    }
    CHECK(e == series);
  }
}

TEST_CASE("wedge sign law") {
  auto r = r23();
  SuperForm e1 = SuperForm::basis(r, 0), dt1 = SuperForm::dtheta(r, 0);
  CHECK(wedge(e1, e1).is_zero());
  SuperForm sq = wedge(dt1, dt1);
  CHECK(!sq.is_zero());
  CHECK(sq.terms().front().first.dtheta == DThetaPack::set(0, 0, 2));
  sgtest::Random rnd(4);
  for (int i = 0; i < 500; ++i) {
    SuperForm a = rnd.homogeneous(r, xs(r), rnd.integer(0, 2), rnd.integer(0, 1));
    SuperForm b = rnd.homogeneous(r, xs(r), rnd.integer(0, 2), rnd.integer(0, 1));
    int s = (deg(a) * deg(b) + par(a) * par(b)) & 1;
    SuperForm ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == (s ? -ba : ba));
    if (!ab.is_zero()) CHECK(ab.is_homogeneous(deg(a) + deg(b), (par(a) + par(b)) & 1));
  }
}

TEST_CASE("exterior derivative") {
  auto r = r23();
  CHECK(d(F("x1*e1", r)).is_zero());
  CHECK(d(F("t1*t2", r)) == F("d(t1)*t2 + t1*d(t2)", r));
  CHECK(d(F("x1", r)) == F("e1", r));
  CHECK(d(F("x1^2*t3", r)) == F("2*x1*e1*t3 + x1^2*d(t3)", r));
  sgtest::Random rnd(5);
  for (int i = 0; i < 500; ++i) {
    SuperForm a = rnd.form(r, xs(r), 5, 3);
    CHECK(d(d(a)).is_zero());
    SuperForm h = rnd.homogeneous(r, xs(r), rnd.integer(0, 2), rnd.integer(0, 1));
    SuperForm b = rnd.form(r, xs(r), 3, 2);
    SuperForm rhs = wedge(d(h), b) + ((deg(h) & 1) ? -wedge(h, d(b)) : wedge(h, d(b)));
    CHECK(d(wedge(h, b)) == rhs);
    SuperForm dh = d(h);
    if (!dh.is_zero()) CHECK(dh.is_homogeneous(deg(h) + 1, par(h)));
  }
}

TEST_CASE("pullback along chart maps") {
  auto r = r23();
  sgtest::Random rnd(6);
  auto id = ChartMap::identity(r);
  validate_chart_map(id);
  for (int i = 0; i < 50; ++i) {
    SuperForm a = rnd.form(r, xs(r));
    CHECK(pullback(a, id) == a);
  }

  RingSpec tgt;
  tgt.odd = {"tp"};
  auto rt = build_ring(tgt);
  ChartMap phi;
  phi.target = rt;
  phi.source = r;
  phi.odd.resize(1);
  phi.set_odd("tp", parse_function("t1 + t2", r));
  validate_chart_map(phi);
  CHECK(pullback(SuperForm::dtheta(rt, 0), phi) == F("d(t1) + d(t2)", r));
  CHECK(pullback(SuperForm::theta(rt, 0) * SuperForm::dtheta(rt, 0), phi) == F("(t1 + t2)*(d(t1) + d(t2))", r));

  ChartMap psi = ChartMap::identity(r);
  psi.set_even("x1", parse_function("x1 + t1*t2", r));
  psi.set_even("x2", parse_function("x2 + x1^2 - 3*t2*t3", r));
  psi.set_odd("t1", parse_function("t1 + x2*t3", r));
  psi.set_odd("t3", parse_function("t1*t2*t3 + (2+i)*t3", r));
  validate_chart_map(psi);
  for (int i = 0; i < 300; ++i) {
    SuperForm a = rnd.form(r, xs(r), 4, 2);
    CHECK(pullback(d(a), psi) == d(pullback(a, psi)));
    SuperForm b = rnd.form(r, xs(r), 2, 1);
    CHECK(pullback(a * b, psi) == pullback(a, psi) * pullback(b, psi));
  }

  ChartMap bad = ChartMap::identity(r);
  bad.set_odd("t1", parse_function("x1", r));
  try {
    validate_chart_map(bad);
    FAIL("expected ParityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParityMismatch);
  }

  RingSpec circ;
  circ.even = {"a", "c", "s"};
  circ.forms = {"e"};
  circ.derivations = {{"a", "e"}, {"c", "-s*e"}, {"s", "c*e"}};
  circ.relations = {{"c^2", "1 - s^2"}};
  auto rc = build_ring(circ);
  ChartMap stretch = ChartMap::identity(rc);
  stretch.set_even("c", parse_function("2*c", rc));
  try {
    validate_chart_map(stretch);
    FAIL("expected RelationViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RelationViolation);
  }
  ChartMap rot = ChartMap::identity(rc);
  rot.set_even("c", parse_function("-s", rc));
  rot.set_even("s", parse_function("c", rc));
  validate_chart_map(rot);
  CHECK(pullback(d(F("c^3*s", rc)), rot) == d(pullback(F("c^3*s", rc), rot)));
}

TEST_CASE("body and soul split") {
  auto r = r23();
  auto [b, s] = body_soul_split(F("x1*e1 + t1*d(t1)", r));
  CHECK(b == F("x1*e1", r));
  CHECK(s == F("t1*d(t1)", r));
  SuperForm pure = F("x1*x2*e1*e2 + 3", r);
  CHECK(body_soul_split(pure).first == pure);
  CHECK(body_soul_split(pure).second.is_zero());
  sgtest::Random rnd(7);
  auto incl = ChartMap::body_inclusion(r);
  for (int i = 0; i < 300; ++i) {
    SuperForm a = rnd.form(r, xs(r), 5, 2);
    auto [ab, as] = body_soul_split(a);
    CHECK(ab + as == a);
    CHECK(body(ab) == ab);
    CHECK(soul(as) == as);
    CHECK(body(as).is_zero());
    CHECK(soul(ab).is_zero());
    CHECK(pullback(as, incl).is_zero());
    CHECK(pullback(a, incl) == ab);
    // ab is already in the image of p*: splitting it returns (itself, 0)
    CHECK(body_soul_split(pullback(a, incl)).second.is_zero());
  }
}

TEST_CASE("soul homotopy identity") {
  auto r = r23();
  CHECK(soul_homotopy(SuperForm::dtheta(r, 0)) == SuperForm::theta(r, 0));
  CHECK(d(SuperForm::theta(r, 0)) == SuperForm::dtheta(r, 0));
  try {
    soul_homotopy(F("x1*e1", r));
    FAIL("expected NotPureSoul");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPureSoul);
  }
  int count = 0;
  std::vector<Scalar> coefs = {Scalar::constant(r, Gaussian(1)), parse_scalar("x1*x2 - tau*x2^2", r)};
  for (Mask th = 0; th < 8; ++th)
    for (Mask dx = 0; dx < 4; ++dx)
      for (unsigned m0 = 0; m0 <= 3; ++m0)
        for (unsigned m1 = 0; m0 + m1 <= 3; ++m1)
          for (unsigned m2 = 0; m0 + m1 + m2 <= 3; ++m2) {
            FormKey k{th, dx, DThetaPack::set(DThetaPack::set(DThetaPack::set(0, 0, m0), 1, m1), 2, m2)};
            if (k.soul_weight() == 0) continue;
            for (const auto& c : coefs) {
              SuperForm w = SuperForm::monomial(r, k, c);
              CHECK(d(soul_homotopy(w)) + soul_homotopy(d(w)) == w);
              ++count;
            }
          }
  CHECK(count == 2 * (8 * 4 * 20 - 4));
  sgtest::Random rnd(8);
  for (int i = 0; i < 500; ++i) {
    SuperForm w = soul(rnd.form(r, xs(r), 5, 3));
    if (w.is_zero()) continue;
    CHECK(d(soul_homotopy(w)) + soul_homotopy(d(w)) == w);
  }
}

TEST_CASE("printing round-trips through the parser") {
  auto r = r23();
  sgtest::Random rnd(9);
  for (int i = 0; i < 300; ++i) {
    SuperForm a = rnd.form(r, xs(r), 5, 3);
    CHECK(parse_form(a.str(), r) == a);
  }
}
