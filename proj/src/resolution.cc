// Reassembly of eigenvalue classes from resolution-style strata tables.
// Each row pushes the cone of its ambient orbit E to the I coordinates; the
// relative dimension of E over the stratum orbit H fixes the codimension
// grade, the Euler characteristic times the lattice index of the pushed span
// gives the weight.

#include "trop/resolution.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "trop/linalg.h"

namespace trop {

namespace {

std::vector<int> support_union(const Cone& c) {
  std::vector<char> hit(c.n, 0);
  for (const IVec& r : c.rays)
    for (int i = 0; i < c.n; ++i)
      if (r[i] != 0) hit[i] = 1;
  std::vector<int> out;
  for (int i = 0; i < c.n; ++i)
    if (hit[i]) out.push_back(i);
  return out;
}

void check_index_set(int n, const std::vector<int>& I) {
  for (size_t i = 0; i < I.size(); ++i) {
    require(I[i] >= 0 && I[i] < n, "coordinate index out of range");
    require(i == 0 || I[i] > I[i - 1], "coordinate set must be strictly increasing");
  }
}

// push the ambient-orbit cone of a row to the I coordinates; the weight is
// euler times the index of the pushed span lattice; nullopt on collapse
std::optional<Cell> pushed_cell(const ResolutionData& rd, const std::vector<int>& I,
                                const StratumRow& row) {
  int ni = static_cast<int>(I.size());
  int d_rel = rd.fan[row.E].dim - rd.fan[row.H].dim;
  IMat img;  // I coordinates of a lattice basis of the span of E
  for (const IVec& b : saturation(rd.fan[row.E].rays)) {
    IVec ri(ni);
    for (int j = 0; j < ni; ++j) ri[j] = b[I[j]];
    img.push_back(ri);
  }
  if (rank_of(img) != d_rel) return std::nullopt;
  IMat p;  // keep the I coordinates
  for (int j = 0; j < ni; ++j) {
    IVec r(rd.n, Int(0));
    r[I[j]] = 1;
    p.push_back(r);
  }
  return Cell{cone_image(rd.fan[row.E], p), Rat(row.euler * index_in_saturation(img))};
}

}  // namespace

void validate_resolution(const ResolutionData& rd) {
  if (rd.n < 0) throw SchemaError("negative dimension");
  Cone neg = neg_orthant(rd.n);
  for (const Cone& c : rd.fan) {
    if (c.n != rd.n) throw SchemaError("cone dimension mismatch");
    if (!c.lin.empty()) throw SchemaError("orbit cones must be pointed");
    if (!cone_subset(c, neg)) throw SchemaError("cone outside the support orthant");
  }
  int nf = static_cast<int>(rd.fan.size());
  std::set<std::tuple<std::string, int, int>> seen;
  for (const StratumRow& row : rd.strata) {
    if (row.H < 0 || row.H >= nf || row.E < 0 || row.E >= nf)
      throw SchemaError("stratum index out of range");
    if (row.M < 1) throw SchemaError("multiplicity must be positive");
    if (!cone_subset(rd.fan[row.H], rd.fan[row.E]))
      throw SchemaError("the cone of E must contain the cone of H");
    if (!seen.insert({to_string(row.M), row.H, row.E}).second)
      throw SchemaError("duplicate stratum row");
  }
  std::set<int> derived;
  for (int i = 0; i < nf; ++i)
    if (static_cast<int>(support_union(rd.fan[i]).size()) == rd.n) derived.insert(i);
  std::set<int> given(rd.compact.begin(), rd.compact.end());
  for (int i : given)
    if (i < 0 || i >= nf) throw SchemaError("compact index out of range");
  if (given != derived) throw SchemaError("compact orbit list does not match the fan");
  std::set<std::pair<std::string, int>> groups, diagonals;
  for (const StratumRow& row : rd.strata) {
    groups.insert({to_string(row.M), row.H});
    if (row.H == row.E) diagonals.insert({to_string(row.M), row.H});
  }
  std::string missing;
  for (const auto& g : groups)
    if (!diagonals.count(g)) {
      if (!missing.empty()) missing += ", ";
      missing += "(M=" + g.first + ", H=" + std::to_string(g.second) + ")";
    }
  if (!missing.empty())
    throw PreconditionError("incomplete strata table, missing diagonal rows: " + missing);
}

std::vector<int> orbits_over(const ResolutionData& rd, const std::vector<int>& I) {
  check_index_set(rd.n, I);
  std::vector<int> comp;
  {
    std::set<int> is(I.begin(), I.end());
    for (int i = 0; i < rd.n; ++i)
      if (!is.count(i)) comp.push_back(i);
  }
  std::vector<int> out;
  for (size_t i = 0; i < rd.fan.size(); ++i)
    if (support_union(rd.fan[i]) == comp) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<Fan> phi_from_resolution(const ResolutionData& rd, const std::vector<int>& I,
                                     const Int& m) {
  validate_resolution(rd);
  check_index_set(rd.n, I);
  require(m >= 1, "positive denominator required");
  int ni = static_cast<int>(I.size());
  std::set<int> over;
  for (int i : orbits_over(rd, I)) over.insert(i);
  std::set<int> compact(rd.compact.begin(), rd.compact.end());
  std::vector<std::vector<Cell>> cells(ni + 1);
  for (const StratumRow& row : rd.strata) {
    if (row.euler == 0 || row.M % m != 0) continue;
    if (!over.count(row.H) || !compact.count(row.E)) continue;
    int c = ni - (rd.fan[row.E].dim - rd.fan[row.H].dim);
    if (c < 0 || c > ni) continue;
    if (auto cell = pushed_cell(rd, I, row)) cells[c].push_back(*cell);
  }
  std::vector<Fan> out;
  for (int c = 0; c <= ni; ++c)
    out.push_back(normal_form(make_fan(ni, ni - c, neg_orthant(ni), cells[c])));
  return out;
}

ZetaFactors acampo_zeta(const ResolutionData& rd, const std::vector<int>& I) {
  validate_resolution(rd);
  check_index_set(rd.n, I);
  int ni = static_cast<int>(I.size());
  std::set<int> over;
  for (int i : orbits_over(rd, I)) over.insert(i);
  std::set<int> compact(rd.compact.begin(), rd.compact.end());
  std::set<Int> mults;
  for (const StratumRow& row : rd.strata) mults.insert(row.M);
  Cone neg = neg_orthant(ni);
  ZetaFactors z;
  for (const Int& M : mults) {
    std::vector<Cell> cells;
    for (const StratumRow& row : rd.strata) {
      if (row.M != M || row.euler == 0) continue;
      if (!over.count(row.H) || !compact.count(row.E)) continue;
      if (rd.fan[row.E].dim - rd.fan[row.H].dim != ni) continue;
      if (auto cell = pushed_cell(rd, I, row)) cells.push_back(*cell);
    }
    Fan f = normal_form(make_fan(ni, ni, neg, cells));
    if (f.cells.empty()) continue;
    bool orthant_cell = f.cells.size() == 1 && f.cells[0].cone == neg;
    if (!orthant_cell)
      throw InvariantError("codimension-0 class is not a multiple of the orthant");
    Rat w = f.cells[0].weight;
    invariant(w.get_den() == 1, "integral exponent expected");
    z.e[M] = w.get_num();
  }
  for (auto it = z.e.begin(); it != z.e.end();)
    it = it->second == 0 ? z.e.erase(it) : std::next(it);
  return z;
}

}  // namespace trop
