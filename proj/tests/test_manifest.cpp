#include <doctest.h>

#include "supergerbe/examples.hpp"
#include "support/oracle.hpp"

using namespace supergerbe;

namespace {

const char* kCircle = R"(format: 1
# three arcs
ring:
  even: [a0, a1, a2, c, s]
  forms: [e]
  derivations:
    a0: "e"
    a1: "e"
    a2: "e"
    c: "i*tau*s*e"
    s: "-i*tau*c*e"
  relations:
    c^2: "1 - s^2"
cover:
  charts:
    - {name: U0, local: [a0], partition: "3/8 + 3/8*c", center: {a0: 0}}
    - {name: U1, local: [a1], partition: "5/16 - 3/16*c + 1/4*s", center: {a1: 1/3}}
    - {name: U2, local: [a2], partition: "5/16 - 3/16*c - 1/4*s", center: {a2: 2/3}}
  simplices: [[U0, U1], [U1, U2], [U0, U2]]
  shifts:
    U0 U1: [0]
    U1 U2: [0]
    U0 U2: [1]
objects:
  forms:
    angle: "e"
  gerbes:
    G:
      A: {U0 U1: "c*e"}
      B: {}
)";

ManifestError parse_error(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const ManifestError& e) {
    return e;
  }
  FAIL("manifest accepted");
  return ManifestError(0, 0, "", "");
}

// Families from separate parses live over distinct rings; compare printed forms.
bool same_text(const CechFamily& a, const CechFamily& b) {
  if (a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (a.parts[i].str() != b.parts[i].str()) return false;
  return true;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("hand-written circle manifest loads") {
  auto m = parse_manifest(kCircle);
  CHECK(m.cover->chart_count() == 3);
  CHECK(validate_cover(*m.cover).ok());
  CHECK(m.form("angle") == parse_form("e", m.cover->ring()));
  auto g = m.gerbe("G");
  CHECK(g.A.parts[0] == parse_form("c*e", m.cover->ring()));
  CHECK(is_zero(g.h));
  auto again = parse_manifest(emit_manifest(m));
  CHECK(same_manifest(m, again));
  CHECK(emit_manifest(again) == emit_manifest(m));
}

TEST_CASE("corpus round trips and validates") {
  auto list = builtin_examples();
  CHECK(list.size() >= 8);
  for (const char* name : {"r23", "s1", "pi_s1", "t2", "t3", "ib_t2", "t3_level1"}) {
    CAPTURE(std::string(name));
    auto m = builtin_example(name);
    auto text = emit_manifest(m);
    auto back = parse_manifest(text);
    CHECK(emit_manifest(back) == text);
    for (std::size_t i = 0; i < m.gerbes.size(); ++i) {
      const auto& [x, y] = std::tie(m.gerbes[i].second, back.gerbes[i].second);
      CHECK(same_text(x.h, y.h));
      CHECK(same_text(x.A, y.A));
      CHECK(same_text(x.B, y.B));
    }
    CHECK(validate_manifest(back).ok());
  }
  CHECK(builtin_example("t3").cover->chart_count() == 27);
  CHECK_THROWS_AS(builtin_example("nope"), Error);
}

TEST_CASE("odd curving is rejected by field") {
  auto bad = replace(kCircle, "B: {}", "B: {U1: \"t*e\"}");
  bad = replace(bad, "forms: [e]", "odd: [t]\n  forms: [e]");
  auto e = parse_error(bad);
  CHECK(e.field() == "objects.gerbes.G.B[U1]");
  CHECK(std::string(e.what()).find("odd parity") != std::string::npos);
  CHECK(e.line() == 31);
}

TEST_CASE("diagnostics carry positions") {
  auto e = parse_error(replace(kCircle, "\"3/8 + 3/8*c\"", "\"3/8 + 3/8*q\""));
  CHECK(e.field() == "cover.charts[0].partition");
  CHECK(e.line() == 16);

  e = parse_error(replace(kCircle, "c: \"i*tau*s*e\"", "c: [i]"));
  CHECK(e.field() == "ring.derivations.c");

  e = parse_error(replace(kCircle, "angle: \"e\"", "angle: \"0.5*e\""));
  CHECK(e.field() == "objects.forms.angle");
  CHECK(e.line() == 26);

  e = parse_error(replace(kCircle, "center: {a1: 1/3}", "center: {a1: 0.25}"));
  CHECK(e.field() == "cover.charts[1].center.a1");

  e = parse_error(replace(kCircle, "format: 1", "format: 2"));
  CHECK(e.field() == "format");
  CHECK(e.line() == 1);

  e = parse_error(replace(kCircle, "U0 U1: \"c*e\"", "U0 U7: \"c*e\""));
  CHECK(e.field() == "objects.gerbes.G.A");

  e = parse_error(replace(kCircle, "simplices: [[U0, U1]", "simplices: [[U0, U1"));
  CHECK(e.field() == "document");
  CHECK(e.line() > 0);

  e = parse_error(replace(kCircle, "U0 U1: \"c*e\"", "U0 U1: \"c\""));
  CHECK(e.field() == "objects.gerbes.G.A[U0 U1]");

  // column points into the expression
  e = parse_error(replace(kCircle, "angle: \"e\"", "angle: \"e + )\""));
  CHECK(e.line() == 26);
  CHECK(e.column() > 12);
}

TEST_CASE("certificate and decomposition documents round trip") {
  auto m = builtin_example("ib_t2");
  const auto& g = m.gerbe("Iflat");
  auto cert = trivialize(make_trivial(m.cover, parse_form("d(t1*t2*e1)", m.cover->ring())));
  auto text = emit_certificate(m, "Iflat", cert);
  CHECK(document_kind(text) == "certificate");
  std::string name;
  auto back = parse_certificate(text, m, &name);
  CHECK(name == "Iflat");
  CHECK(first_difference(back.f, cert.f) < 0);
  CHECK(first_difference(back.z, cert.z) < 0);
  CHECK(back.m == cert.m);

  auto r = decompose(g);
  auto dtext = emit_decomposition(m, "Iflat", r);
  CHECK(document_kind(dtext) == "decomposition");
  auto r2 = parse_decomposition(dtext, m);
  CHECK(r2.beta == r.beta);
  CHECK(verify_decomposition(g, r2).ok());
  CHECK_THROWS_AS(parse_certificate(dtext, m), ManifestError);
  CHECK_THROWS_AS(parse_certificate(replace(text, "gerbe: Iflat", "gerbe: other"), m), ManifestError);
}
