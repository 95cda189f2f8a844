#include "trop/relative.h"

#include <algorithm>

namespace trop {

namespace {

Int qfloor(const Rat& r) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return f;
}
Int qceil(const Rat& r) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return c;
}

// outward cuts of the complement of p: one per facet, two per equation
std::vector<HRow> complement_cuts(const Poly& p) {
  std::vector<HRow> cuts;
  for (const HRow& f : p.ineqs) cuts.push_back(f);
  for (const HRow& e : p.eqs) {
    cuts.push_back(e);
    cuts.push_back({ineg(e.a), -e.c});
  }
  return cuts;
}

// closure of a \ b decomposes into the pieces of a beyond each cut of b;
// a piece counts only when a actually crosses the cut
struct Piece {
  bool crosses = false;
  bool unbounded = false;
  Poly body;
};

Piece cut_piece(const Poly& a, const HRow& f) {
  Piece out;
  SupportData sd = support_data(a, f.a);
  out.crosses = !sd.bounded || sd.value > f.c;
  if (!out.crosses) return out;
  Cone rec = intersect(recession_cone(a), cone_from_h(a.n, {f.a}));
  out.unbounded = !rec.is_zero();
  if (out.unbounded) return out;
  std::vector<HRow> rows = a.ineqs;
  rows.push_back({ineg(f.a), -f.c});
  out.body = poly_from_h(a.n, rows, a.eqs);
  invariant(!out.body.empty, "crossing piece must be nonempty");
  return out;
}

// either records the bounding data of the symmetric difference or reports an
// unbounded piece
bool difference_box(const Poly& a, const Poly& b, QMat* pts) {
  for (const HRow& f : complement_cuts(b)) {
    Piece pc = cut_piece(a, f);
    if (!pc.crosses) continue;
    if (pc.unbounded) return false;
    for (const QVec& v : pc.body.verts) pts->push_back(v);
  }
  return true;
}

void validate_rel(const RelPoly& rp) {
  require(rp.A.n == rp.B.n, "relative polyhedron dimension mismatch");
  require(!rp.A.empty && !rp.B.empty, "relative polyhedron must be nonempty");
  require(is_lattice_poly(rp.A) && is_lattice_poly(rp.B),
          "relative polyhedron must have lattice vertices");
  require(recession_cone(rp.A) == recession_cone(rp.B),
          "unbounded symmetric difference");
  QMat pts;
  require(difference_box(rp.A, rp.B, &pts) && difference_box(rp.B, rp.A, &pts),
          "unbounded symmetric difference");
}

Rat top_volume(const Poly& p) {
  return (!p.empty && p.dim == p.n) ? lattice_volume(p) : Rat(0);
}

Rat total_weight(const Fan& f) {
  Rat w = 0;
  for (const Cell& c : f.cells) w += c.weight;
  return w;
}

void require_same_class(const std::vector<RelPoly>& rps) {
  require(!rps.empty(), "no relative polyhedra given");
  Cone rec = recession_cone(rps[0].A);
  for (const RelPoly& rp : rps) {
    require(rp.A.n == rps[0].A.n, "relative polyhedron dimension mismatch");
    require(recession_cone(rp.A) == rec, "ambient cone mismatch");
  }
}

RelPoly rel_sum(const RelPoly& x, const RelPoly& y) {
  return {minkowski_sum(x.A, y.A), minkowski_sum(x.B, y.B)};
}

}  // namespace

RelPoly make_relative(const Poly& a, const Poly& b) {
  RelPoly rp{a, b};
  validate_rel(rp);
  return rp;
}

Cone relative_ambient(const RelPoly& rp) {
  Cone amb = polar(recession_cone(rp.A));
  invariant(amb.dim == rp.A.n, "ambient cone must be full-dimensional");
  return amb;
}

std::pair<Poly, Poly> truncate_relative(const RelPoly& rp, const Int& pad) {
  validate_rel(rp);
  require(pad >= 1, "truncation pad must be positive");
  int n = rp.A.n;
  QMat pts;
  difference_box(rp.A, rp.B, &pts);
  difference_box(rp.B, rp.A, &pts);
  // keep the seed vertices inside the box so the truncations stay nonempty
  for (const QVec& v : rp.A.verts) pts.push_back(v);
  for (const QVec& v : rp.B.verts) pts.push_back(v);
  std::vector<HRow> rows;
  for (int i = 0; i < n; ++i) {
    Int lo = 0, hi = 0;
    for (const QVec& v : pts) {
      lo = std::min(lo, qfloor(v[i]));
      hi = std::max(hi, qceil(v[i]));
    }
    IVec e(n, 0);
    e[i] = 1;
    rows.push_back({e, Rat(hi + pad)});
    rows.push_back({ineg(e), Rat(-(lo - pad))});
  }
  Poly box = poly_from_h(n, rows);
  Poly ta = poly_intersect(rp.A, box);
  Poly tb = poly_intersect(rp.B, box);
  invariant(is_bounded(ta) && is_bounded(tb), "truncation must be bounded");
  return {ta, tb};
}

Rat relative_volume(const RelPoly& rp) {
  auto [ta, tb] = truncate_relative(rp);
  return top_volume(ta) - top_volume(tb);
}

Rat relative_mixed_volume(const std::vector<RelPoly>& rps) {
  require_same_class(rps);
  int n = rps[0].A.n;
  require((int)rps.size() == n, "dimension mismatch");
  Rat total = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    RelPoly acc;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      acc = first ? rps[i] : rel_sum(acc, rps[i]);
      first = false;
    }
    int missing = n - __builtin_popcount(mask);
    Rat term = relative_volume(acc);
    total += (missing % 2 == 0) ? term : -term;
  }
  Rat fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return total / fact;
}

RelFan relative_dual_fan(const RelPoly& rp) {
  validate_rel(rp);
  int n = rp.A.n;
  auto [ta, tb] = truncate_relative(rp);
  RelFan rf{n, n - 1, relative_ambient(rp), dual_fan(ta, 1), dual_fan(tb, 1)};
  invariant(relative_fan_valid(rf), "dual fan difference must avoid the reflected ambient cone");
  return rf;
}

bool relative_fan_valid(const RelFan& rf) {
  if (rf.P.n != rf.n || rf.Q.n != rf.n || rf.P.k != rf.k || rf.Q.k != rf.k) return false;
  if (!(rf.P.amb == full_space(rf.n)) || !(rf.Q.amb == full_space(rf.n))) return false;
  if (rf.amb.n != rf.n || rf.amb.dim != rf.n) return false;
  // the components may only disagree in directions the open ambient cone
  // cannot displace into: the difference avoids the reflected open cone
  Fan diff = fan_add(rf.P, fan_scale(Rat(-1), rf.Q));
  IMat neg;
  for (const IVec& a : rf.amb.ineq) neg.push_back(ineg(a));
  Cone mirror = cone_from_h(rf.n, neg);
  for (const Cell& c : diff.cells) {
    Cone touch = intersect(c.cone, mirror);
    if (touch.is_zero()) continue;
    QVec z = relint_point(touch);
    bool strict = true;
    for (const IVec& a : rf.amb.ineq)
      if (dotq(a, z) >= 0) { strict = false; break; }
    if (strict) return false;
  }
  return true;
}

RelFan relative_add(const RelFan& a, const RelFan& b) {
  require(a.n == b.n && a.k == b.k, "relative fan dimension mismatch");
  require(a.amb == b.amb, "ambient cone mismatch");
  return {a.n, a.k, a.amb, fan_add(a.P, b.P), fan_add(a.Q, b.Q)};
}

RelFan relative_scale(const Rat& c, const RelFan& f) {
  return {f.n, f.k, f.amb, fan_scale(c, f.P), fan_scale(c, f.Q)};
}

RelFan relative_product(const RelFan& a, const RelFan& b, Rng& rng, int verify) {
  require(a.n == b.n, "relative fan dimension mismatch");
  require(a.amb == b.amb, "ambient cone mismatch");
  Fan p = stable_intersect(a.P, b.P, rng, verify);
  Fan q = stable_intersect(a.Q, b.Q, rng, verify);
  return {a.n, p.k, a.amb, p, q};
}

Rat kk_degree(const RelFan& rf) {
  require(rf.k == 0, "degree needs a zero-dimensional relative fan");
  return total_weight(normal_form(rf.P)) - total_weight(normal_form(rf.Q));
}

Int relkbk_euler(const std::vector<RelPoly>& rps, int n) {
  require_same_class(rps);
  int k = (int)rps.size();
  require(k <= n, "more factors than the dimension");
  require(rps[0].A.n == n, "dimension mismatch");

  Rat total = 0;
  std::vector<int> mult(k, 1);
  // enumerate n_1, ..., n_k >= 1 with sum n
  auto walk = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      mult[pos] = left;
      std::vector<RelPoly> args;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < mult[i]; ++j) args.push_back(rps[i]);
      total += relative_mixed_volume(args);
      return;
    }
    for (int v = 1; left - v >= k - 1 - pos; ++v) {
      mult[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  walk(walk, 0, n);
  if ((n - k) % 2 != 0) total = -total;
  invariant(total.get_den() == 1, "relative Euler characteristic must be an integer");
  return total.get_num();
}

}  // namespace trop
