#pragma once

#include "supergerbe/cover.hpp"

namespace supergerbe {

// One chart with global coordinates x1..xm, odd t1..tn, forms e1..em.
CoverPtr euclidean_cover(unsigned m, unsigned n);

// Product of 3-chart circle covers, dim in 1..3. Charts U<i..>, local angles
// ak_<i..> with d ak = ek, periodic pairs ck, sk with ck + i sk = exp(tau ak),
// partition of unity from products of circle partitions, and the fundamental
// cycle "fundamental". With odd, adds t1..t<dim> glued by the identity.
CoverPtr torus_cover(unsigned dim, bool odd);

}  // namespace supergerbe
