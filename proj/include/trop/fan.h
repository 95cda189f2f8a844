#pragma once
// Weighted and tropical fans in an ambient cone: normal forms, balancing,
// localization, direct images, stable intersection, dual fans of lattice
// polyhedra and their alternating class.

#include "trop/cone.h"
#include "trop/polyhedron.h"

namespace trop {

struct Cell {
  Cone cone;
  Rat weight;
  bool operator==(const Cell& o) const {
    return cone == o.cone && weight == o.weight;
  }
};

// A fan of k-dimensional cells in Q^n, localized at the open cone int(amb).
// amb is stored as its full-dimensional closure.
struct Fan {
  int n = 0;
  int k = 0;
  Cone amb;
  std::vector<Cell> cells;
  bool operator==(const Fan& o) const {
    return n == o.n && k == o.k && amb == o.amb && cells == o.cells;
  }
};

Fan make_fan(int n, int k, Cone amb, std::vector<Cell> cells);
Fan zero_fan(int n, int k, const Cone& amb);

// canonical representative: cells are regrouped by linear span, clipped to
// the closed ambient cone, and re-cut along the walls where the total weight
// actually jumps inside the open cone; zero weights drop, order is canonical
Fan normal_form(const Fan& f);
bool fan_is_zero(const Fan& f);
bool fan_equal(const Fan& a, const Fan& b);

Fan fan_add(const Fan& a, const Fan& b);
Fan fan_scale(const Rat& q, const Fan& f);

// balancing at every wall that meets the open ambient cone
bool is_balanced(const Fan& f);

// each cell whose closure contains v is replaced by the cone it generates
// together with -v; the others drop; the ambient cone localizes likewise
Fan localize(const Fan& f, const IVec& v);

// direct image along p : Z^n -> Z^m given by the rows of p; cells whose
// dimension drops are sent to zero, the rest carry the lattice index of
// their span as an extra weight factor
Fan direct_image(const IMat& p, const Fan& f);

Fan cartesian_product(const Fan& a, const Fan& b);

// stable intersection by a certified generic displacement; if verify > 0,
// the computation is repeated with that many further displacements and the
// normal forms must agree
Fan stable_intersect(const Fan& a, const Fan& b, Rng& rng, int verify = 0);

// total multiplicity of the stable intersection of fans of complementary
// dimensions, before localization can drop the origin cell
Rat intersection_number(const Fan& a, const Fan& b, Rng& rng);

// closure of the ambient cone carrying the dual fans of N: the polar of the
// recession cone
Cone dual_ambient(const Poly& N);

// [N]^k: support cones of the bounded k-faces weighted by lattice volume
Fan dual_fan(const Poly& N, int k);
// the same class computed as the k-fold stable self-intersection of [N]^1
Fan dual_fan_by_intersection(const Poly& N, int k, Rng& rng);

// the alternating list (-1)^(d-1) [N]^d for d = 1..n
std::vector<Fan> poly_class(const Poly& N);

// reinterpret f in a new ambient cone, keeping only what meets its interior
Fan restrict_to_ambient(const Fan& f, const Cone& amb);

}  // namespace trop
