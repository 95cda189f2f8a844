#pragma once
// Detection of roots of unity exp(2 pi i k/m) among nearby monodromy
// eigenvalues of a lattice Newton polyhedron, stratum by stratum: zeta
// factors in codimension zero, a virtual fiber-polyhedron class in
// codimension one, witness search and the exhaustive classification for
// strata whose coordinate complement is two-dimensional.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trop/fan.h"
#include "trop/polyhedron.h"

namespace trop {

// formal product prod_M (1 - t^M)^{e_M}; zero exponents are dropped
struct ZetaFactors {
  std::map<Int, Int> e;
  bool operator==(const ZetaFactors& o) const { return e == o.e; }
};
std::string zeta_to_string(const ZetaFactors& z);

// 1 together with every divisor of the minimal positive exponent of a single
// variable; for these m the eigenvalue already sits in a monomial factor and
// carries no information about the singularity
std::set<Int> tautological_denominators(const Poly& N);

// (1 - t^{m_B})^{(-1)^{dim B} Vol(B)} over the bounded V-faces B of the
// projection of N along the I coordinates
ZetaFactors zeta_factors(const Poly& N, const std::vector<int>& I);

struct TneQuery {
  Poly N;              // germ: lattice vertices, recession = positive orthant
  std::vector<int> I;  // deleted coordinates, 0-based, strictly increasing
  Int k = 1;           // numerator, must be coprime to m
  Int m = 2;
  bool allow_tautological = false;
};

// lattice point a of a contributing V-edge B of the projection, not itself a
// contributing V-vertex, whose fiber in N is a nontrivial polyhedron
struct TneWitness {
  IVec a;
  Poly B;
};

// verdict of the classifier for a two-dimensional coordinate complement:
// either the eigenvalue is detected, or the contributing V-faces of the
// projection fall into one of four degenerate shapes
enum class GermCase {
  TNE,    // detected in codimension 0 or 1
  CASE1,  // no contributing V-faces at all
  CASE2,  // a single contributing V-edge of lattice length two whose
          // endpoints are the only contributing V-vertices and whose
          // midpoint has a trivial fiber
  CASE3,  // a single contributing V-vertex on a single length-one
          // contributing V-edge whose other endpoint has a trivial fiber
  CASE4,  // two disjoint instances of the CASE3 picture
};
const char* germ_case_name(GermCase c);

struct TneReport {
  TneQuery query;
  bool codim0 = false;
  bool codim1 = false;
  std::optional<TneWitness> witness;
  std::optional<GermCase> case_tag;  // two-dimensional complements only
  VPoly psi;
  ZetaFactors zeta;
};

// the sum of zeta exponents over multiples of m does not vanish
bool tne_codim0(const TneQuery& q);

// sum over the bounded edges B of the projection of
//   [integral of the fibers over B] - [fiber over one endpoint]
//                                   - [fiber over the other endpoint],
// each term kept only while its face contributes (V-face with m | m_face);
// edges with no contributing term at all are skipped
VPoly psi(const Poly& N, const std::vector<int>& I, const Int& m);

// codimension-1 verdict with a witness when the complement of I has exactly
// two coordinates; for larger complements the verdict is the nontriviality
// of psi and no witness is produced
std::pair<bool, std::optional<TneWitness>> tne_codim1(const TneQuery& q);

// the codimension-1 class as a weighted fan: alternating sum over the
// contributing bounded V-faces B of the first dual fans of the fiber
// integrals over B, in the support-side orthant of the I coordinates
Fan codim1_class(const Poly& N, const std::vector<int>& I, const Int& m);

// pushforward of the alternating dual-fan class of a single face to the I
// coordinates through a lattice basis of the face span; entry c is the
// codimension-c component; requires Q^I inside the span of the face
// directions (experimental general route)
std::vector<Fan> push_face_class(const Poly& gamma, const std::vector<int>& I);

// exhaustive classification; requires a two-dimensional coordinate complement
GermCase classify_germ(const TneQuery& q);

// one report per coordinate subset I (complement nonempty) and per candidate
// m >= 2 dividing the lattice distance of some V-face of the projection,
// tautological denominators excluded
std::vector<TneReport> tne_report(const Poly& N, int jobs = 1);

}  // namespace trop
