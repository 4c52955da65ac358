#include "supergerbe/builtins.hpp"

#include <algorithm>
#include <numeric>

#include "supergerbe/expression.hpp"

namespace supergerbe {

namespace {

std::string idx_str(const std::vector<unsigned>& v) {
  std::string s;
  for (unsigned x : v) s += std::to_string(x);
  return s;
}

// circle chart partition: 3/8 + 3/8 c, 5/16 - 3/16 c +- 1/4 s
std::string circle_phi(unsigned i, unsigned axis) {
  std::string c = "c" + std::to_string(axis), s = "s" + std::to_string(axis);
  switch (i) {
    case 0: return "(3/8 + 3/8*" + c + ")";
    case 1: return "(5/16 - 3/16*" + c + " + 1/4*" + s + ")";
    default: return "(5/16 - 3/16*" + c + " - 1/4*" + s + ")";
  }
}

// shift on the circle nerve: n(0,2) = 1, others 0
int circle_shift(unsigned a, unsigned b) { return (a == 0 && b == 2) ? 1 : 0; }

int permutation_sign(const std::vector<unsigned>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace

CoverPtr euclidean_cover(unsigned m, unsigned n) {
  RingSpec spec;
  for (unsigned k = 1; k <= m; ++k) {
    spec.even.push_back("x" + std::to_string(k));
    spec.forms.push_back("e" + std::to_string(k));
    spec.derivations.emplace_back("x" + std::to_string(k), "e" + std::to_string(k));
  }
  for (unsigned j = 1; j <= n; ++j) spec.odd.push_back("t" + std::to_string(j));
  RingPtr ring = build_ring(spec);
  CoverBuilder b(ring);
  b.add_chart("R", {});
  b.set_partition("R", Scalar::constant(ring, Gaussian(1)));
  return b.build();
}

CoverPtr torus_cover(unsigned dim, bool odd) {
  std::vector<std::vector<unsigned>> charts;
  unsigned count = 1;
  for (unsigned k = 0; k < dim; ++k) count *= 3;
  for (unsigned id = 0; id < count; ++id) {
    std::vector<unsigned> v(dim);
    unsigned r = id;
    for (unsigned k = dim; k-- > 0;) {
      v[k] = r % 3;
      r /= 3;
    }
    charts.push_back(v);
  }

  RingSpec spec;
  for (const auto& v : charts)
    for (unsigned k = 1; k <= dim; ++k) {
      std::string g = "a" + std::to_string(k) + "_" + idx_str(v);
      spec.even.push_back(g);
      spec.derivations.emplace_back(g, "e" + std::to_string(k));
    }
  for (unsigned k = 1; k <= dim; ++k) {
    std::string ks = std::to_string(k);
    spec.even.push_back("c" + ks);
    spec.even.push_back("s" + ks);
    spec.forms.push_back("e" + ks);
    spec.derivations.emplace_back("c" + ks, "i*tau*s" + ks + "*e" + ks);
    spec.derivations.emplace_back("s" + ks, "-i*tau*c" + ks + "*e" + ks);
    spec.relations.emplace_back("c" + ks + "^2", "1 - s" + ks + "^2");
    if (odd) spec.odd.push_back("t" + ks);
  }
  RingPtr ring = build_ring(spec);

  CoverBuilder b(ring);
  for (const auto& v : charts) {
    std::vector<std::string> local;
    for (unsigned k = 1; k <= dim; ++k) local.push_back("a" + std::to_string(k) + "_" + idx_str(v));
    b.add_chart("U" + idx_str(v), local);
  }

  // every pair of charts meets
  for (std::size_t x = 0; x < charts.size(); ++x)
    for (std::size_t y = x + 1; y < charts.size(); ++y) {
      std::vector<Gaussian> shift(dim);
      for (unsigned k = 0; k < dim; ++k) {
        unsigned lo = std::min(charts[x][k], charts[y][k]), hi = std::max(charts[x][k], charts[y][k]);
        int n = circle_shift(lo, hi);
        shift[k] = Gaussian(charts[x][k] <= charts[y][k] ? n : -n);
      }
      b.set_shift("U" + idx_str(charts[x]), "U" + idx_str(charts[y]), shift);
    }
  // maximal simplices: products of axis-wise vertex sets of size <= 2, all
  // charts in the product box
  std::vector<std::vector<unsigned>> axis_sets = {{0, 1}, {1, 2}, {0, 2}};
  std::vector<unsigned> pick(dim, 0);
  for (;;) {
    std::vector<std::string> box;
    for (const auto& v : charts) {
      bool in = true;
      for (unsigned k = 0; k < dim && in; ++k) {
        const auto& set = axis_sets[pick[k]];
        in = std::find(set.begin(), set.end(), v[k]) != set.end();
      }
      if (in) box.push_back("U" + idx_str(v));
    }
    b.add_simplex(box);
    unsigned k = 0;
    while (k < dim && ++pick[k] == 3) pick[k++] = 0;
    if (k == dim) break;
  }

  for (const auto& v : charts) {
    std::string phi = "1";
    for (unsigned k = 0; k < dim; ++k) phi += "*" + circle_phi(v[k], k + 1);
    b.set_partition("U" + idx_str(v), parse_scalar(phi, ring));
    for (unsigned k = 0; k < dim; ++k)
      b.set_center("U" + idx_str(v), "a" + std::to_string(k + 1) + "_" + idx_str(v), Rational(v[k], 3));
  }

  // fundamental cycle: shuffle product of [01] + [12] - [02], oriented so
  // that tau e1...e<dim> pairs to +1
  const std::vector<std::pair<std::pair<unsigned, unsigned>, int>> circle = {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, -1}};
  Chain z;
  z.level = static_cast<int>(dim) + 1;
  std::map<Simplex, Integer> acc;
  std::vector<unsigned> e(dim, 0);
  for (;;) {
    int coef = (dim * (dim + 1) / 2) % 2 ? -1 : 1;
    for (unsigned k = 0; k < dim; ++k) coef *= circle[e[k]].second;
    std::vector<unsigned> order(dim);
    std::iota(order.begin(), order.end(), 0u);
    do {
      std::vector<unsigned> at(dim);
      for (unsigned k = 0; k < dim; ++k) at[k] = circle[e[k]].first.first;
      Simplex s;
      auto id = [&] {
        unsigned x = 0;
        for (unsigned k = 0; k < dim; ++k) x = 3 * x + at[k];
        return x;
      };
      s.push_back(id());
      for (unsigned step : order) {
        at[step] = circle[e[step]].first.second;
        s.push_back(id());
      }
      acc[s] += coef * permutation_sign(order);
    } while (std::next_permutation(order.begin(), order.end()));
    unsigned k = 0;
    while (k < dim && ++e[k] == 3) e[k++] = 0;
    if (k == dim) break;
  }
  for (auto& [s, v] : acc)
    if (v != 0) z.terms.emplace_back(s, v);
  b.add_cycle("fundamental", z);
  b.set_max_level(static_cast<int>(dim) + 2);
  return b.build();
}

}  // namespace supergerbe
