#pragma once
// Relative polyhedra (A, B): pairs of lattice polyhedra with a common pointed
// recession cone and bounded symmetric difference. Their volumes and mixed
// volumes are differences of ordinary lattice volumes of bounded truncations,
// and their dual fans live in the relative ring of pairs of global fans.

#include <utility>
#include <vector>

#include "trop/fan.h"
#include "trop/polyhedron.h"

namespace trop {

struct RelPoly {
  Poly A, B;
};

// validates: equal dimensions, lattice vertices, a common recession cone,
// bounded symmetric difference
RelPoly make_relative(const Poly& a, const Poly& b);

// the closed ambient cone: polar of the common recession cone, full-dimensional
Cone relative_ambient(const RelPoly& rp);

// bounded truncations cut by a lattice box beyond the symmetric difference;
// any pad >= 1 yields the same volumes and classes
std::pair<Poly, Poly> truncate_relative(const RelPoly& rp, const Int& pad = 1);

// difference of the top-dimensional lattice volumes of the two truncations
Rat relative_volume(const RelPoly& rp);

// symmetric multilinear extension of the relative volume, by polarization
// over Minkowski sums of subsets; expects exactly n factors in dimension n
Rat relative_mixed_volume(const std::vector<RelPoly>& rps);

// pair of global fans that agree in every direction the open ambient cone
// can displace into: the support of P - Q avoids the reflected open cone.
// Taken modulo pairs (R, R) whose support avoids the open cone itself.
struct RelFan {
  int n = 0;
  int k = 0;  // dimension of the cells of both components
  Cone amb;
  Fan P, Q;
};

// ([truncated A], [truncated B]) with cell dimension n-1
RelFan relative_dual_fan(const RelPoly& rp);

// checks the support condition on P - Q
bool relative_fan_valid(const RelFan& rf);

RelFan relative_add(const RelFan& a, const RelFan& b);
RelFan relative_scale(const Rat& c, const RelFan& f);

// componentwise stable intersection
RelFan relative_product(const RelFan& a, const RelFan& b, Rng& rng, int verify = 0);

/// the isomorphism of the degree-zero part with the rationals: P minus Q
Rat kk_degree(const RelFan& rf);

// (-1)^(n-k) sum of relative mixed volumes over all positive multiplicities
// n_1 + ... + n_k = n; evaluates the Euler characteristic of a Milnor fiber
// under genericity hypotheses that the caller must supply
Int relkbk_euler(const std::vector<RelPoly>& rps, int n);

}  // namespace trop
