#pragma once
// Rational polyhedral cones with both generator and facet descriptions,
// computed exactly by the double description method.

#include "trop/base.h"
#include "trop/linalg.h"

namespace trop {

struct Cone {
  int n = 0;
  IMat rays;  // primitive, extreme mod lineality, lex-sorted
  IMat lin;   // HNF basis of the lineality space
  IMat ineq;  // facets a.x >= 0, primitive, lex-sorted, irredundant
  IMat eq;    // HNF basis of the space of equations
  int dim = 0;

  bool operator==(const Cone& o) const {
    return n == o.n && rays == o.rays && lin == o.lin;
  }
  bool is_zero() const { return rays.empty() && lin.empty(); }
};

// raw double description: generators of { x : a.x >= 0 for ineq, a.x = 0 for eq }
void dd_pair(int n, const IMat& ineq, const IMat& eq, IMat* rays_out, IMat* lin_out);

Cone cone_from_h(int n, const IMat& ineq, const IMat& eq = {});
Cone cone_from_v(int n, const IMat& rays, const IMat& lin = {});

Cone polar(const Cone& c);  // { y : y.x <= 0 on c }
Cone intersect(const Cone& a, const Cone& b);
Cone product(const Cone& a, const Cone& b);  // block product in Q^{na+nb}

bool cone_contains(const Cone& c, const QVec& x);
bool cone_contains_i(const Cone& c, const IVec& x);
bool in_relint(const Cone& c, const QVec& x);
bool cone_subset(const Cone& a, const Cone& b);

// smallest face of c containing x (x must lie in c)
Cone minimal_face(const Cone& c, const QVec& x);

// a point of the relative interior (sum of rays, or zero for a linear space)
QVec relint_point(const Cone& c);

// image under the linear map given by rows p (target dim = p.size())
Cone cone_image(const Cone& c, const IMat& p);

Cone full_space(int n);
Cone zero_cone(int n);
Cone orthant(int n);      // x >= 0
Cone neg_orthant(int n);  // x <= 0

}  // namespace trop
