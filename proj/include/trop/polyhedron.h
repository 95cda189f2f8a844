#pragma once
// Rational polyhedra P = conv(vertices) + cone(rays), always pointed.
// Canonical data: exact vertex set (sorted), primitive extreme rays (sorted),
// irredundant facet list a.x <= c with primitive a.

#include "trop/base.h"
#include "trop/cone.h"
#include "trop/linalg.h"

namespace trop {

struct HRow {
  IVec a;
  Rat c;
  bool operator==(const HRow& o) const { return a == o.a && c == o.c; }
};

struct Poly {
  int n = 0;
  bool empty = true;
  QMat verts;               // sorted lexicographically
  IMat rays;                // primitive extreme rays, sorted
  std::vector<HRow> ineqs;  // a.x <= c, canonical
  std::vector<HRow> eqs;    // a.x = c, HNF-like canonical basis
  int dim = -1;

  bool operator==(const Poly& o) const {
    return n == o.n && empty == o.empty && verts == o.verts && rays == o.rays;
  }
};

Poly poly_from_v(int n, const QMat& verts, const IMat& rays = {});
Poly poly_from_h(int n, const std::vector<HRow>& ineqs, const std::vector<HRow>& eqs = {});

bool poly_contains(const Poly& p, const QVec& x);
Poly poly_translate(const Poly& p, const QVec& t);
Poly poly_dilate(const Poly& p, const Rat& c);  // c > 0
Poly minkowski_sum(const Poly& p, const Poly& q);
Poly poly_intersect(const Poly& p, const Poly& q);

Cone recession_cone(const Poly& p);
bool is_bounded(const Poly& p);
bool is_lattice_poly(const Poly& p);
QVec lexmin_vertex(const Poly& p);
// trivial = translate of its recession cone (single vertex)
bool is_trivial(const Poly& p);

struct SupportData {
  bool bounded = false;  // false: the functional is unbounded above on p
  Rat value;
  Poly face;
};
SupportData support_data(const Poly& p, const IVec& v);  // max of v.x over p

struct Face {
  std::vector<int> vset;   // vertex indices, sorted
  std::vector<int> rset;   // ray indices, sorted
  std::vector<int> tight;  // facet indices defining the face
  int dim = 0;
  bool bounded = true;
  IVec supp;  // canonical supporting vector: sum of tight facet normals
};

// all nonempty faces, p itself included, ordered by (dim, vset)
std::vector<Face> faces(const Poly& p);
Poly face_poly(const Poly& p, const Face& f);

// delete the coordinates listed in I (0-based, sorted)
Poly project(const Poly& p, const std::vector<int>& I);
// slice x_complement(I) = b and keep the I coordinates
Poly fiber(const Poly& p, const std::vector<int>& I, const QVec& b);

// volume normalized so that lattice simplices of determinant one have volume
// one (k! times the euclidean volume in the saturated direction lattice)
Rat lattice_volume(const Poly& p);

// pulling triangulation: lists of vertex indices, each of size dim+1
std::vector<std::vector<int>> triangulate(const Poly& p);

// faces whose coordinate support J has exactly dim+1 elements; these carry a
// primitive integer functional equal to m on the face
struct VFace {
  Face face;
  std::vector<int> J;  // coordinate support (0-based)
  std::vector<int> I;  // unbounded directions: support union of the rays
  Int m;               // value of the primitive functional, >= 1
};
// requires a germ: recession cone = positive orthant, lattice vertices
std::vector<VFace> v_faces(const Poly& p);

// Minkowski integral of the fibers of p over a bounded face b of project(p, I);
// piecewise-linear in the base, evaluated exactly by chamber subdivision
Poly fiber_polyhedron(const Poly& p, const std::vector<int>& I, const Poly& b);

// formal difference plus - minus of polyhedra with equal recession cones
struct VPoly {
  Poly plus, minus;
};
VPoly virtual_sub(const Poly& p, const Poly& q);
VPoly virtual_add(const VPoly& a, const VPoly& b);
bool virtual_is_trivial(const VPoly& v);  // plus is a translate of minus
// genuine: plus = r + minus for an honest polyhedron r (returned)
std::optional<Poly> virtual_is_genuine(const VPoly& v);

}  // namespace trop
