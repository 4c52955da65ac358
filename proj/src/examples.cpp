#include "supergerbe/examples.hpp"

#include "supergerbe/builtins.hpp"
#include "supergerbe/expression.hpp"

namespace supergerbe {

namespace {

struct Entry {
  const char* name;
  const char* description;
  Manifest (*build)(const Exec&);
};

SuperForm F(const Manifest& m, const char* text) { return parse_form(text, m.cover->ring()); }

Manifest with_cover(CoverPtr c) {
  Manifest m;
  m.cover = std::move(c);
  return m;
}

Manifest r23(const Exec&) {
  auto m = with_cover(euclidean_cover(2, 3));
  m.set_form("H", F(m, "e1*d(t1)*d(t1)"));
  m.set_gerbe("I0", make_trivial(m.cover, SuperForm(m.cover->ring())));
  m.set_gerbe("Ib", make_trivial(m.cover, F(m, "x1*d(t1)*d(t1) + t1*t2*e1*e2 + x2^2*t3*d(t2)*e1")));
  return m;
}

Manifest s1(const Exec&) {
  auto m = with_cover(torus_cover(1, false));
  m.set_form("angle", F(m, "e1"));
  m.set_gerbe("I0", make_trivial(m.cover, SuperForm(m.cover->ring())));
  return m;
}

Manifest pi_s1(const Exec&) {
  auto m = with_cover(torus_cover(1, true));
  m.set_form("angle", F(m, "e1"));
  m.set_gerbe("I0", make_trivial(m.cover, SuperForm(m.cover->ring())));
  m.set_gerbe("Ib", make_trivial(m.cover, F(m, "c1*d(t1)*d(t1) + t1*d(t1)*e1")));
  return m;
}

Manifest t2(const Exec&) {
  auto m = with_cover(torus_cover(2, false));
  m.set_form("vol", F(m, "tau*e1*e2"));
  m.set_form("half", F(m, "1/2*tau*e1*e2"));
  m.set_form("exact", F(m, "d(s1*e2)"));
  m.set_gerbe("I0", make_trivial(m.cover, SuperForm(m.cover->ring())));
  m.set_gerbe("Ivol", make_trivial(m.cover, F(m, "tau*e1*e2")));
  return m;
}

Manifest t3(const Exec&) {
  auto m = with_cover(torus_cover(3, false));
  m.set_form("vol", F(m, "tau*e1*e2*e3"));
  m.set_form("vol2", F(m, "2*tau*e1*e2*e3"));
  m.set_gerbe("I0", make_trivial(m.cover, SuperForm(m.cover->ring())));
  return m;
}

Manifest pi_t3(const Exec& exec) {
  auto m = with_cover(torus_cover(3, true));
  m.set_form("vol", F(m, "tau*e1*e2*e3"));
  m.set_form("beta", F(m, "t1*t2*e1*e2 + c3*t3*d(t1)*e2"));
  auto level1 = construct_from_integral_form(m.cover, m.form("vol"), exec);
  m.set_gerbe("level1", level1);
  m.set_gerbe("twisted", tensor(level1, make_trivial(m.cover, m.form("beta"))));
  return m;
}

Manifest ib_t2(const Exec&) {
  auto m = with_cover(torus_cover(2, true));
  m.set_gerbe("Ib", make_trivial(m.cover, F(m, "c1*s2*e1*e2 + t1*t2*e1*e2 + d(t1)*d(t2)")));
  m.set_gerbe("Iflat", make_trivial(m.cover, F(m, "1/3*tau*e1*e2 + d(t1*t2*e1)")));
  return m;
}

Manifest level(int k, const Exec& exec) {
  auto m = with_cover(torus_cover(3, false));
  m.set_form("H", Gaussian(k) * F(m, "tau*e1*e2*e3"));
  m.set_gerbe("level" + std::to_string(k), construct_from_integral_form(m.cover, m.form("H"), exec));
  return m;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"r23", "R^{2|3}, one chart, with a trivial gerbe I_b", r23},
      {"s1", "circle, 3 charts", s1},
      {"pi_s1", "odd tangent circle, 3 charts", pi_s1},
      {"t2", "2-torus, 9 charts", t2},
      {"t3", "3-torus, 27 charts", t3},
      {"pi_t3", "odd tangent 3-torus with the level-1 gerbe and a soul twist", pi_t3},
      {"ib_t2", "trivial gerbes I_b on the odd tangent 2-torus", ib_t2},
      {"t3_level1", "3-torus level-1 gerbe from tau e1 e2 e3", [](const Exec& e) { return level(1, e); }},
      {"t3_level2", "3-torus level-2 gerbe from 2 tau e1 e2 e3", [](const Exec& e) { return level(2, e); }},
  };
  return list;
}

}  // namespace

std::vector<ExampleInfo> builtin_examples() {
  std::vector<ExampleInfo> out;
  for (const auto& e : entries()) out.push_back({e.name, e.description});
  return out;
}

Manifest builtin_example(const std::string& name, const Exec& exec) {
  for (const auto& e : entries())
    if (name == e.name) return e.build(exec);
  raise(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
}

}  // namespace supergerbe
