#pragma once
// Resolution-style input for a Newton-nondegenerate germ: a pointed fan of
// orbit cones in the support-side orthant, a table of Euler characteristics
// of multiplicity strata restricted to the orbits of their closures, and the
// list of cones with compact orbit closure.  The graded eigenvalue classes
// and the zeta factors are reassembled from this table so they can be
// checked against the polyhedral route.

#include <vector>

#include "trop/fan.h"
#include "trop/monodromy.h"

namespace trop {

// Euler characteristic of (stratum of multiplicity M inside the orbit of H)
// intersected with the orbit of E; the cone of H must be a face of the cone
// of E.  Rows with euler = 0 may be present or absent, except that every
// (M, H) group that appears at all must declare its diagonal row (M, H, H).
struct StratumRow {
  Int M;
  int H = 0;
  int E = 0;
  Int euler;
};

struct ResolutionData {
  int n = 0;
  std::vector<Cone> fan;  // pointed cones inside the nonpositive orthant
  std::vector<StratumRow> strata;
  std::vector<int> compact;  // fan indices with compact orbit closure
};

// structural checks throw SchemaError; an incomplete strata table (a group
// missing its diagonal row) throws PreconditionError listing what is missing
void validate_resolution(const ResolutionData& rd);

// fan indices whose orbit lies over the coordinate stratum I: the union of
// the coordinate supports of the cone rays is exactly the complement of I
std::vector<int> orbits_over(const ResolutionData& rd, const std::vector<int>& I);

// graded eigenvalue classes over stratum I for denominator m, entry c being
// the codimension-c weighted fan in the I coordinates
std::vector<Fan> phi_from_resolution(const ResolutionData& rd, const std::vector<int>& I,
                                     const Int& m);

// zeta factors over stratum I read off the codimension-0 classes, one
// exponent per multiplicity present in the table
ZetaFactors acampo_zeta(const ResolutionData& rd, const std::vector<int>& I);

}  // namespace trop
