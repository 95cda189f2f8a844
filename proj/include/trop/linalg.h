#pragma once
// Exact integer/rational linear algebra over Z^n and Q^n:
// Hermite forms, kernels, saturations, lattice indices, primitive functionals.

#include "trop/base.h"

namespace trop {

IVec primitive(const IVec& v);                  // v / gcd, error on zero vector
IVec primitive_q(const QVec& v);                // clear denominators, then primitive

// Hermite normal form of the row lattice: canonical basis, zero rows dropped.
// Pivots positive, entries above each pivot reduced into [0, pivot).
IMat hnf_rows(IMat a);

// basis of { x in Z^n : a * x = 0 } (rows of result; saturated by construction)
IMat integer_kernel(const IMat& a);

// rank over Q of the row span
int rank_of(const IMat& a);
int rank_of_q(const QMat& a);

// canonical basis of span_Q(rows) `intersect` Z^n (double-kernel)
IMat saturation(const IMat& gens);

// coordinates of v in the row basis b (b must have full row rank); nullopt if
// v is outside the span
std::optional<QVec> coords_in(const IMat& b, const QVec& v);
std::optional<QVec> solve_linear(const QMat& a, const QVec& rhs);  // a * x = rhs

Int det_int(const IMat& a);  // square integer determinant (Bareiss)
Rat det_q(QMat a);           // square rational determinant

// index of the lattice generated by `gens` inside its saturation (gens must
// have full rank equal to dim of their span); returns a positive integer
Int index_in_saturation(const IMat& gens);

// p maps Z^n -> Z^m, given by rows of an m x n matrix (y_i = p_i . x).
IVec apply_map(const IMat& p, const IVec& x);
QVec apply_map_q(const IMat& p, const QVec& x);

// [ p(U) `cap` p(L) : p(U `cap` L) ] with U = span(sub_gens), L = Z^n.
// Requires dim p(U) = dim U (injectivity on the span).
Int lattice_index(const IMat& sub_gens, const IMat& p);

// Primitive integer functional l with l.x = c on the affine span of
// points + directions; requires that span to have codimension one.
// Sign convention: c > 0, or c = 0 and the leading nonzero entry of l > 0.
struct PrimFun {
  IVec l;
  Rat c;
};
PrimFun primitive_functional(const QMat& points, const IMat& directions);

// deterministic RNG: identical streams on every platform for a fixed seed
struct Rng {
  explicit Rng(uint64_t seed);
  uint64_t next_u64();
  // uniform in [lo, hi], inclusive, via rejection sampling
  long uniform(long lo, long hi);
  IVec vec(int n, long lo, long hi);

 private:
  uint64_t s_[4];
};

}  // namespace trop
