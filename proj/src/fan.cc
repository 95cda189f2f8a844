#include "trop/fan.h"

#include <algorithm>
#include <map>
#include <set>

namespace trop {

namespace {

IMat identity_mat(int n) {
  IMat m;
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    m.push_back(e);
  }
  return m;
}

IMat span_gens(const Cone& c) {
  IMat g = c.rays;
  for (const IVec& l : c.lin) g.push_back(l);
  return g;
}

// canonical basis of the saturated span lattice of a cone
IMat span_basis(const Cone& c) { return hnf_rows(saturation(span_gens(c))); }

int mat_cmp(const IMat& a, const IMat& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = lex_cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

struct IMatLess {
  bool operator()(const IMat& a, const IMat& b) const { return mat_cmp(a, b) < 0; }
};

// coordinates of lattice/rational vectors in a saturated row basis
struct SpanCtx {
  IMat basis;  // g x n, basis of span `cap` Z^n
  int g = 0;

  IVec coords_i(const IVec& x) const {
    auto c = coords_in(basis, to_q(x));
    invariant(c.has_value(), "vector outside its span group");
    IVec r(g);
    for (int i = 0; i < g; ++i) {
      invariant((*c)[i].get_den() == 1, "non-integral coordinates in a saturated basis");
      r[i] = (*c)[i].get_num();
    }
    return r;
  }
  QVec ambient_q(const QVec& c) const {
    QVec r(basis.empty() ? 0 : basis[0].size(), Rat(0));
    for (int i = 0; i < g; ++i)
      for (size_t j = 0; j < r.size(); ++j) r[j] += c[i] * Rat(basis[i][j]);
    return r;
  }
  IVec ambient_i(const IVec& c) const {
    IVec r(basis.empty() ? 0 : basis[0].size(), Int(0));
    for (int i = 0; i < g; ++i)
      for (size_t j = 0; j < r.size(); ++j) r[j] += c[i] * basis[i][j];
    return r;
  }
};

bool strictly_inside(const Cone& amb, const QVec& z) {
  for (const IVec& a : amb.ineq)
    if (dotq(a, z) <= 0) return false;
  return true;
}

// sign-normalized primitive functional (first nonzero entry positive)
IVec norm_fun(const IVec& v) {
  IVec p = primitive(v);
  for (const Int& x : p) {
    if (x > 0) return p;
    if (x < 0) return ineg(p);
  }
  return p;
}

Cone clip_halfspace(const Cone& c, const IVec& h) {
  IMat in = c.ineq;
  in.push_back(h);
  return cone_from_h(c.n, in, c.eq);
}

// split full-dimensional regions of Q^g by a list of hyperplanes through 0
std::vector<Cone> split_regions(const Cone& base, const std::vector<IVec>& hyps) {
  std::vector<Cone> regions{base};
  int g = base.dim;
  for (const IVec& h : hyps) {
    std::vector<Cone> next;
    for (const Cone& r : regions) {
      Cone rp = clip_halfspace(r, h);
      Cone rm = clip_halfspace(r, ineg(h));
      if (rp.dim == g && rm.dim == g) {
        next.push_back(rp);
        next.push_back(rm);
      } else {
        next.push_back(r);
      }
    }
    regions.swap(next);
  }
  return regions;
}

bool cell_less(const Cell& a, const Cell& b) {
  int c = mat_cmp(a.cone.rays, b.cone.rays);
  if (c != 0) return c < 0;
  c = mat_cmp(a.cone.lin, b.cone.lin);
  if (c != 0) return c < 0;
  return a.weight < b.weight;
}

void validate_fan(const Fan& f) {
  require(f.amb.n == f.n && f.amb.dim == f.n, "ambient cone must be full-dimensional");
  require(f.k >= 0 && f.k <= f.n, "cell dimension out of range");
  for (const Cell& c : f.cells) {
    require(c.cone.n == f.n, "cell dimension mismatch with ambient space");
    require(c.cone.dim == f.k, "mixed cell dimensions");
  }
}

// weight of the group's cells at z, approached from direction d (both in
// span coordinates); cells are full-dimensional cones in Q^g without eqs
Rat weight_from(const std::vector<std::pair<Cone, Rat>>& cells, const QVec& z,
                const QVec& d) {
  Rat w = 0;
  for (const auto& [cone, weight] : cells) {
    bool in = true;
    for (const IVec& a : cone.ineq) {
      Rat s = dotq(a, z);
      if (s < 0 || (s == 0 && dotq(a, d) < 0)) {
        in = false;
        break;
      }
    }
    if (in) w += weight;
  }
  return w;
}

Rat weight_at(const std::vector<std::pair<Cone, Rat>>& cells, const QVec& z) {
  Rat w = 0;
  for (const auto& [cone, weight] : cells) {
    bool in = true;
    for (const IVec& a : cone.ineq)
      if (dotq(a, z) < 0) {
        in = false;
        break;
      }
    if (in) w += weight;
  }
  return w;
}

}  // namespace

Fan make_fan(int n, int k, Cone amb, std::vector<Cell> cells) {
  Fan f;
  f.n = n;
  f.k = k;
  f.amb = std::move(amb);
  f.cells = std::move(cells);
  validate_fan(f);
  return f;
}

Fan zero_fan(int n, int k, const Cone& amb) { return make_fan(n, k, amb, {}); }

Fan normal_form(const Fan& f) {
  validate_fan(f);
  Fan out;
  out.n = f.n;
  out.k = f.k;
  out.amb = f.amb;

  if (f.k == 0) {
    // the only candidate cell is the origin; it survives localization only
    // in the full ambient space
    Rat total = 0;
    for (const Cell& c : f.cells) total += c.weight;
    if (total != 0 && f.amb.ineq.empty())
      out.cells.push_back({zero_cone(f.n), total});
    return out;
  }

  std::map<IMat, std::vector<std::pair<Cone, Rat>>, IMatLess> groups;
  for (const Cell& c : f.cells) {
    if (c.weight == 0) continue;
    groups[span_basis(c.cone)].push_back({c.cone, c.weight});
  }

  for (auto& [basis, raw] : groups) {
    SpanCtx ctx{basis, (int)basis.size()};
    invariant(ctx.g == f.k, "span dimension must match the cell dimension");

    // ambient clip of the span, expressed in span coordinates
    Cone span_amb = intersect(f.amb, cone_from_h(f.n, {}, basis.empty() ? IMat{} : integer_kernel(basis)));
    if (span_amb.dim < ctx.g) continue;  // the open cone misses this span
    // a clip that only touches the boundary of the open cone dies entirely
    if (!strictly_inside(f.amb, relint_point(span_amb))) continue;
    IMat brays, blin;
    for (const IVec& r : span_amb.rays) brays.push_back(ctx.coords_i(r));
    for (const IVec& l : span_amb.lin) blin.push_back(ctx.coords_i(l));
    Cone base = cone_from_v(ctx.g, brays, blin);

    // cells in span coordinates (full-dimensional there)
    std::vector<std::pair<Cone, Rat>> cells;
    std::set<IVec, IVecLess> hypset;
    for (const auto& [cone, w] : raw) {
      IMat crays, clin;
      for (const IVec& r : cone.rays) crays.push_back(ctx.coords_i(r));
      for (const IVec& l : cone.lin) clin.push_back(ctx.coords_i(l));
      Cone cc = cone_from_v(ctx.g, crays, clin);
      invariant(cc.dim == ctx.g && cc.eq.empty(), "group cell must span its group");
      for (const IVec& a : cc.ineq) hypset.insert(norm_fun(a));
      cells.push_back({cc, w});
    }
    std::vector<IVec> hyps(hypset.begin(), hypset.end());

    // first pass: full arrangement; the relint points of its regions avoid
    // every hyperplane, so they sample the weight function cleanly
    std::vector<Cone> fine = split_regions(base, hyps);
    std::vector<QVec> fine_pts;
    std::vector<Rat> fine_w;
    for (const Cone& r : fine) {
      QVec z = relint_point(r);
      fine_pts.push_back(z);
      fine_w.push_back(weight_at(cells, z));
    }
    std::set<IVec, IVecLess> genuine;
    for (const Cone& r : fine) {
      for (const IVec& b : r.ineq) {
        IVec bn = norm_fun(b);
        if (!hypset.count(bn) || genuine.count(bn)) continue;
        IMat eq = r.eq;
        eq.push_back(b);
        Cone facet = cone_from_h(ctx.g, r.ineq, eq);
        if (facet.dim != ctx.g - 1) continue;
        QVec z = relint_point(facet);
        if (!strictly_inside(f.amb, ctx.ambient_q(z))) continue;
        QVec d = to_q(b);
        if (weight_from(cells, z, d) != weight_from(cells, z, qscale(Rat(-1), d)))
          genuine.insert(bn);
      }
    }

    // second pass: cut only along genuine walls; the regions are canonical,
    // each weighted by the fine regions it absorbs
    std::vector<IVec> walls(genuine.begin(), genuine.end());
    for (const Cone& r : split_regions(base, walls)) {
      Rat w;
      QVec sample;
      bool have = false;
      for (size_t i = 0; i < fine.size(); ++i) {
        if (!cone_contains(r, fine_pts[i])) continue;
        if (!have) {
          w = fine_w[i];
          sample = fine_pts[i];
          have = true;
        } else {
          invariant(w == fine_w[i], "weight must be constant between genuine walls");
        }
      }
      invariant(have, "every region contains a sample point");
      if (w == 0) continue;
      if (!strictly_inside(f.amb, ctx.ambient_q(sample))) continue;
      IMat arays, alin;
      for (const IVec& rr : r.rays) arays.push_back(ctx.ambient_i(rr));
      for (const IVec& ll : r.lin) alin.push_back(ctx.ambient_i(ll));
      out.cells.push_back({cone_from_v(f.n, arays, alin), w});
    }
  }

  std::sort(out.cells.begin(), out.cells.end(), cell_less);
  return out;
}

bool fan_is_zero(const Fan& f) { return normal_form(f).cells.empty(); }

bool fan_equal(const Fan& a, const Fan& b) {
  if (a.n != b.n || a.k != b.k || !(a.amb == b.amb)) return false;
  return normal_form(a) == normal_form(b);
}

Fan fan_add(const Fan& a, const Fan& b) {
  require(a.n == b.n && a.k == b.k, "fan dimension mismatch");
  require(a.amb == b.amb, "ambient cone mismatch");
  Fan s = a;
  s.cells.insert(s.cells.end(), b.cells.begin(), b.cells.end());
  return normal_form(s);
}

Fan fan_scale(const Rat& q, const Fan& f) {
  Fan s = f;
  for (Cell& c : s.cells) c.weight *= q;
  return normal_form(s);
}

bool is_balanced(const Fan& f0) {
  Fan f = normal_form(f0);
  if (f.k == 0 || f.cells.empty()) return true;

  std::set<IMat, IMatLess> wall_spans;
  for (const Cell& c : f.cells)
    for (const IVec& a : c.cone.ineq) {
      IMat eq = c.cone.eq;
      eq.push_back(a);
      Cone facet = cone_from_h(f.n, c.cone.ineq, eq);
      if (facet.dim == f.k - 1) wall_spans.insert(span_basis(facet));
    }

  // net flow across the wall at z, in the quotient by the wall span
  auto balanced_at = [&](const QVec& z, const IMat& qmat) -> bool {
    QVec total(qmat.size(), Rat(0));
    for (const Cell& c : f.cells) {
      if (!cone_contains(c.cone, z)) continue;
      bool line = false;
      IVec u;
      auto feed = [&](const IVec& img, bool two_sided) {
        if (line || is_zero(img)) return;
        if (two_sided) {
          line = true;
          return;
        }
        if (u.empty()) {
          u = primitive(img);
          return;
        }
        // img must be parallel to u; negative multiples straddle the wall
        size_t j = 0;
        while (u[j] == 0) ++j;
        Rat lam(img[j], u[j]);
        lam.canonicalize();
        for (size_t i = 0; i < u.size(); ++i)
          invariant(Rat(img[i]) == lam * Rat(u[i]),
                    "cell image at a wall must be one-dimensional");
        if (lam < 0) line = true;
      };
      for (const IVec& l : c.cone.lin) feed(apply_map(qmat, l), true);
      for (const IVec& r : c.cone.rays) feed(apply_map(qmat, r), false);
      if (line) continue;
      invariant(!u.empty(), "wall-adjacent cell must leave the wall span");
      for (size_t i = 0; i < u.size(); ++i) total[i] += c.weight * Rat(u[i]);
    }
    return is_zeroq(total);
  };

  for (const IMat& wb : wall_spans) {
    int g = (int)wb.size();
    IMat qmat = wb.empty() ? identity_mat(f.n) : integer_kernel(wb);
    if (g == 0) {
      QVec z(f.n, Rat(0));
      if (!strictly_inside(f.amb, z)) continue;  // origin outside the open cone
      if (!balanced_at(z, qmat)) return false;
      continue;
    }
    SpanCtx ctx{wb, g};
    Cone span_amb = intersect(f.amb, cone_from_h(f.n, {}, integer_kernel(wb)));
    if (span_amb.dim < g) continue;
    IMat brays, blin;
    for (const IVec& r : span_amb.rays) brays.push_back(ctx.coords_i(r));
    for (const IVec& l : span_amb.lin) blin.push_back(ctx.coords_i(l));
    Cone base = cone_from_v(g, brays, blin);

    std::set<IVec, IVecLess> hypset;
    for (const Cell& c : f.cells) {
      IMat rows = c.cone.ineq;
      for (const IVec& e : c.cone.eq) rows.push_back(e);
      for (const IVec& a : rows) {
        IVec h(g);
        for (int j = 0; j < g; ++j) h[j] = dot(a, wb[j]);
        if (!is_zero(h)) hypset.insert(norm_fun(h));
      }
    }
    std::vector<IVec> hyps(hypset.begin(), hypset.end());
    for (const Cone& r : split_regions(base, hyps)) {
      QVec z = ctx.ambient_q(relint_point(r));
      if (!strictly_inside(f.amb, z)) continue;
      if (!balanced_at(z, qmat)) return false;
    }
  }
  return true;
}

Fan localize(const Fan& f0, const IVec& v) {
  Fan f = normal_form(f0);
  if (is_zero(v)) return f;
  Fan out;
  out.n = f.n;
  out.k = f.k;
  if (cone_contains_i(f.amb, v)) {
    IMat gens = f.amb.rays;
    gens.push_back(primitive(ineg(v)));
    out.amb = cone_from_v(f.n, gens, f.amb.lin);
  } else {
    out.amb = f.amb;
  }
  QVec vq = to_q(v);
  for (const Cell& c : f.cells) {
    if (!cone_contains(c.cone, vq)) continue;
    IMat gens = c.cone.rays;
    gens.push_back(primitive(ineg(v)));
    Cone loc = cone_from_v(f.n, gens, c.cone.lin);
    invariant(loc.dim == f.k, "localization must preserve the cell dimension");
    out.cells.push_back({loc, c.weight});
  }
  return normal_form(out);
}

Fan direct_image(const IMat& p, const Fan& f) {
  validate_fan(f);
  int m = (int)p.size();
  require(m >= 1, "image ambient undefined");
  for (const IVec& row : p) require((int)row.size() == f.n, "map shape mismatch");
  require(rank_of(p) == m, "image ambient undefined");
  // the map must be onto the target lattice, not only onto the target space,
  // or the image weights lose their meaning
  IMat cols;
  for (int i = 0; i < f.n; ++i) {
    IVec col(m);
    for (int j = 0; j < m; ++j) col[j] = p[j][i];
    cols.push_back(col);
  }
  require(index_in_saturation(cols) == 1, "image ambient undefined");

  Cone amb2 = cone_image(f.amb, p);
  invariant(amb2.dim == m, "image of a full-dimensional cone must be full-dimensional");
  std::vector<Cell> cells;
  for (const Cell& c : f.cells) {
    Cone img = cone_image(c.cone, p);
    if (img.dim < f.k) continue;
    Int d = lattice_index(span_gens(c.cone), p);
    cells.push_back({img, c.weight * Rat(d)});
  }
  return normal_form(make_fan(m, f.k, amb2, cells));
}

Fan cartesian_product(const Fan& a, const Fan& b) {
  validate_fan(a);
  validate_fan(b);
  std::vector<Cell> cells;
  for (const Cell& ca : a.cells)
    for (const Cell& cb : b.cells)
      cells.push_back({product(ca.cone, cb.cone), ca.weight * cb.weight});
  return normal_form(make_fan(a.n + b.n, a.k + b.k, product(a.amb, b.amb), cells));
}

namespace {

// one displacement attempt; returns false when u fails a genericity check
bool si_attempt(const Fan& A, const Fan& B, const IVec& u, int t,
                std::vector<Cell>* out) {
  int n = A.n;
  out->clear();
  for (const Cell& P : A.cells) {
    IMat sp = span_gens(P.cone);
    for (const Cell& Q : B.cells) {
      IMat sq = span_gens(Q.cone);
      IMat sum = sp;
      sum.insert(sum.end(), sq.begin(), sq.end());
      int r = rank_of(sum);
      if (r < n) {
        IMat ext = sum;
        ext.push_back(u);
        if (rank_of(ext) == r) return false;  // u degenerately parallel
        continue;
      }
      IMat drays = P.cone.rays;
      for (const IVec& q : Q.cone.rays) drays.push_back(ineg(q));
      IMat dlin = P.cone.lin;
      dlin.insert(dlin.end(), Q.cone.lin.begin(), Q.cone.lin.end());
      Cone disp = cone_from_v(n, drays, dlin);  // P - Q, full-dimensional
      bool inside = true;
      for (const IVec& a : disp.ineq) {
        Int s = dot(a, u);
        if (s == 0) return false;  // u on a displacement wall
        if (s < 0) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      Cone x = intersect(P.cone, Q.cone);
      if (x.dim != t) continue;
      IMat lat = saturation(sp);
      IMat satq = saturation(sq);
      lat.insert(lat.end(), satq.begin(), satq.end());
      Int idx = index_in_saturation(lat);
      out->push_back({x, P.weight * Q.weight * Rat(idx)});
    }
  }
  return true;
}

std::vector<Cell> si_cells(const Fan& A, const Fan& B, int t, Rng& rng) {
  std::vector<Cell> cells;
  for (int attempt = 0; attempt < 64; ++attempt) {
    IVec u = rng.vec(A.n, -1000003, 1000003);
    if (si_attempt(A, B, u, t, &cells)) return cells;
  }
  throw InvariantError("no certified generic displacement found");
}

void require_tropical(const Fan& a, const Fan& b) {
  require(is_balanced(a) && is_balanced(b), "product requires balanced fans");
}

}  // namespace

Fan stable_intersect(const Fan& a, const Fan& b, Rng& rng, int verify) {
  require(a.n == b.n, "fan dimension mismatch");
  require(a.amb == b.amb, "ambient cone mismatch");
  require_tropical(a, b);
  Fan A = normal_form(a), B = normal_form(b);
  int t = a.k + b.k - a.n;
  if (t < 0 || A.cells.empty() || B.cells.empty())
    return zero_fan(a.n, std::max(t, 0), a.amb);
  Fan res = normal_form(make_fan(a.n, t, a.amb, si_cells(A, B, t, rng)));
  for (int i = 0; i < verify; ++i) {
    Fan again = normal_form(make_fan(a.n, t, a.amb, si_cells(A, B, t, rng)));
    invariant(again == res, "stable intersection depends on the displacement");
  }
  return res;
}

Rat intersection_number(const Fan& a, const Fan& b, Rng& rng) {
  require(a.n == b.n, "fan dimension mismatch");
  require(a.amb == b.amb, "ambient cone mismatch");
  require(a.k + b.k == a.n, "dimensions are not complementary");
  require_tropical(a, b);
  Fan A = normal_form(a), B = normal_form(b);
  if (A.cells.empty() || B.cells.empty()) return 0;
  Rat total = 0;
  for (const Cell& c : si_cells(A, B, 0, rng)) total += c.weight;
  return total;
}

Cone dual_ambient(const Poly& N) {
  require(!N.empty, "dual fan of an empty polyhedron");
  return polar(recession_cone(N));
}

Fan dual_fan(const Poly& N, int k) {
  require(!N.empty, "dual fan of an empty polyhedron");
  require(1 <= k && k <= N.n, "dual fan index out of range");
  Cone amb = dual_ambient(N);
  std::vector<Cell> cells;
  for (const Face& face : faces(N)) {
    if (!face.bounded || face.dim != k) continue;
    IMat gens, lin;
    for (int i : face.tight) gens.push_back(N.ineqs[i].a);
    for (const HRow& e : N.eqs) lin.push_back(e.a);
    Cone nc = cone_from_v(N.n, gens, lin);
    invariant(nc.dim == N.n - k, "support cone dimension mismatch");
    cells.push_back({nc, lattice_volume(face_poly(N, face))});
  }
  return normal_form(make_fan(N.n, N.n - k, amb, cells));
}

Fan dual_fan_by_intersection(const Poly& N, int k, Rng& rng) {
  Fan f1 = dual_fan(N, 1);
  Fan res = f1;
  for (int i = 1; i < k; ++i) res = stable_intersect(res, f1, rng);
  return res;
}

std::vector<Fan> poly_class(const Poly& N) {
  std::vector<Fan> out;
  for (int d = 1; d <= N.n; ++d) {
    Fan fd = dual_fan(N, d);
    out.push_back(d % 2 == 1 ? fd : fan_scale(Rat(-1), fd));
  }
  return out;
}

Fan restrict_to_ambient(const Fan& f, const Cone& amb) {
  return normal_form(make_fan(f.n, f.k, amb, f.cells));
}

}  // namespace trop
