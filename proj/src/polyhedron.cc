#include "trop/polyhedron.h"

#include <algorithm>
#include <functional>
#include <map>

namespace trop {

namespace {

// canonical form of an inequality/equation row: primitive a, matching c
HRow normalize_row(IVec a, Rat c, bool sign_fix) {
  Int g = 0;
  for (const Int& x : a) g = gcd(g, x);
  invariant(g != 0, "normalize_row: zero normal");
  for (Int& x : a) x /= g;
  c /= Rat(g);
  if (sign_fix) {  // for equations: leading entry positive
    for (const Int& x : a) {
      if (x > 0) break;
      if (x < 0) {
        a = ineg(a);
        c = -c;
        break;
      }
    }
  }
  return {a, c};
}

bool hrow_less(const HRow& x, const HRow& y) {
  int c = lex_cmp(x.a, y.a);
  if (c != 0) return c < 0;
  return cmp(x.c, y.c) < 0;
}

// build a polyhedron from the homogenization cone in Q^{n+1}; the cone must
// already be canonical (computed by cone_from_v / cone_from_h)
Poly from_homog(int n, const Cone& c) {
  Poly p;
  p.n = n;
  invariant(c.lin.empty(), "polyhedron has a lineality space");
  bool nonempty = false;
  for (const IVec& r : c.rays)
    if (r[0] > 0) nonempty = true;
  if (!nonempty) return p;  // empty
  p.empty = false;
  for (const IVec& r : c.rays) {
    invariant(r[0] >= 0, "homogenization cone leaks below the hyperplane");
    if (r[0] > 0) {
      QVec v(n);
      for (int i = 0; i < n; ++i) v[i] = Rat(r[i + 1], r[0]);
      for (auto& x : v) x.canonicalize();
      p.verts.push_back(v);
    } else {
      IVec d(r.begin() + 1, r.end());
      p.rays.push_back(primitive(d));
    }
  }
  std::sort(p.verts.begin(), p.verts.end(), QVecLess{});
  std::sort(p.rays.begin(), p.rays.end(), IVecLess{});
  for (const IVec& f : c.ineq) {
    IVec b(f.begin() + 1, f.end());
    if (is_zero(b)) continue;  // lambda >= 0 facet
    p.ineqs.push_back(normalize_row(ineg(b), Rat(f[0]), false));
  }
  std::sort(p.ineqs.begin(), p.ineqs.end(), hrow_less);
  for (const IVec& e : c.eq) {
    IVec b(e.begin() + 1, e.end());
    if (is_zero(b)) continue;  // should not happen for a nonempty polyhedron
    p.eqs.push_back(normalize_row(b, Rat(-e[0]), true));
  }
  std::sort(p.eqs.begin(), p.eqs.end(), hrow_less);
  p.dim = n - (int)p.eqs.size();
  return p;
}

}  // namespace

Poly poly_from_v(int n, const QMat& verts, const IMat& rays) {
  IMat gens;
  for (const QVec& v : verts) {
    Int d;
    IVec num = clear_den(v, &d);
    IVec g(n + 1);
    g[0] = d;
    for (int i = 0; i < n; ++i) g[i + 1] = num[i];
    gens.push_back(g);
  }
  for (const IVec& r : rays) {
    if (is_zero(r)) continue;
    IVec g(n + 1, 0);
    for (int i = 0; i < n; ++i) g[i + 1] = r[i];
    gens.push_back(g);
  }
  if (gens.empty()) {
    Poly p;
    p.n = n;
    return p;
  }
  return from_homog(n, cone_from_v(n + 1, gens));
}

Poly poly_from_h(int n, const std::vector<HRow>& ineqs, const std::vector<HRow>& eqs) {
  IMat ci, ce;
  for (const HRow& r : ineqs) {
    // scale a.x <= c by den(c), homogenize to num(c)*L - d*a.x >= 0
    Int d = r.c.get_den();
    IVec row(n + 1);
    row[0] = r.c.get_num();
    for (int i = 0; i < n; ++i) row[i + 1] = -r.a[i] * d;
    ci.push_back(row);
  }
  IVec lam(n + 1, 0);
  lam[0] = 1;
  ci.push_back(lam);
  for (const HRow& r : eqs) {
    Int d = r.c.get_den();
    IVec row(n + 1);
    row[0] = -r.c.get_num();
    for (int i = 0; i < n; ++i) row[i + 1] = r.a[i] * d;
    ce.push_back(row);
  }
  return from_homog(n, cone_from_h(n + 1, ci, ce));
}

bool poly_contains(const Poly& p, const QVec& x) {
  if (p.empty) return false;
  for (const HRow& e : p.eqs)
    if (dotq(e.a, x) != e.c) return false;
  for (const HRow& r : p.ineqs)
    if (dotq(r.a, x) > r.c) return false;
  return true;
}

Poly poly_translate(const Poly& p, const QVec& t) {
  if (p.empty) return p;
  QMat verts;
  for (const QVec& v : p.verts) verts.push_back(qadd(v, t));
  return poly_from_v(p.n, verts, p.rays);
}

Poly poly_dilate(const Poly& p, const Rat& c) {
  require(c > 0, "poly_dilate: factor must be positive");
  if (p.empty) return p;
  QMat verts;
  for (const QVec& v : p.verts) verts.push_back(qscale(c, v));
  return poly_from_v(p.n, verts, p.rays);
}

Poly minkowski_sum(const Poly& p, const Poly& q) {
  require(p.n == q.n, "minkowski_sum: dimension mismatch");
  if (p.empty || q.empty) {
    Poly r;
    r.n = p.n;
    return r;
  }
  QMat verts;
  for (const QVec& v : p.verts)
    for (const QVec& w : q.verts) verts.push_back(qadd(v, w));
  IMat rays = p.rays;
  rays.insert(rays.end(), q.rays.begin(), q.rays.end());
  return poly_from_v(p.n, verts, rays);
}

Poly poly_intersect(const Poly& p, const Poly& q) {
  require(p.n == q.n, "poly_intersect: dimension mismatch");
  std::vector<HRow> ineqs = p.ineqs, eqs = p.eqs;
  ineqs.insert(ineqs.end(), q.ineqs.begin(), q.ineqs.end());
  eqs.insert(eqs.end(), q.eqs.begin(), q.eqs.end());
  if (p.empty || q.empty) {
    Poly r;
    r.n = p.n;
    return r;
  }
  return poly_from_h(p.n, ineqs, eqs);
}

Cone recession_cone(const Poly& p) { return cone_from_v(p.n, p.rays); }
bool is_bounded(const Poly& p) { return p.rays.empty(); }
bool is_lattice_poly(const Poly& p) {
  for (const QVec& v : p.verts)
    for (const Rat& x : v)
      if (x.get_den() != 1) return false;
  return true;
}

QVec lexmin_vertex(const Poly& p) {
  require(!p.empty, "lexmin_vertex: empty polyhedron");
  return p.verts.front();  // verts are lex-sorted
}

bool is_trivial(const Poly& p) {
  require(!p.empty, "is_trivial: empty polyhedron");
  return p.verts.size() == 1;
}

SupportData support_data(const Poly& p, const IVec& v) {
  require(!p.empty, "support_data: empty polyhedron");
  SupportData s;
  for (const IVec& r : p.rays)
    if (dot(v, r) > 0) return s;  // unbounded
  s.bounded = true;
  s.value = dotq(v, p.verts[0]);
  for (const QVec& w : p.verts) {
    Rat t = dotq(v, w);
    if (t > s.value) s.value = t;
  }
  QMat verts;
  for (const QVec& w : p.verts)
    if (dotq(v, w) == s.value) verts.push_back(w);
  IMat rays;
  for (const IVec& r : p.rays)
    if (dot(v, r) == 0) rays.push_back(r);
  s.face = poly_from_v(p.n, verts, rays);
  return s;
}

std::vector<Face> faces(const Poly& p) {
  require(!p.empty, "faces: empty polyhedron");
  size_t nv = p.verts.size(), nr = p.rays.size(), nf = p.ineqs.size();
  // tightness incidence
  std::vector<std::vector<char>> vt(nv, std::vector<char>(nf)),
      rt(nr, std::vector<char>(nf));
  for (size_t i = 0; i < nv; ++i)
    for (size_t j = 0; j < nf; ++j)
      vt[i][j] = dotq(p.ineqs[j].a, p.verts[i]) == p.ineqs[j].c;
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nf; ++j) rt[i][j] = dot(p.ineqs[j].a, p.rays[i]) == 0;

  auto close = [&](std::vector<char> t) {
    // gens on the face cut by t
    std::vector<int> vs, rs;
    for (size_t i = 0; i < nv; ++i) {
      bool on = true;
      for (size_t j = 0; j < nf && on; ++j)
        if (t[j] && !vt[i][j]) on = false;
      if (on) vs.push_back((int)i);
    }
    for (size_t i = 0; i < nr; ++i) {
      bool on = true;
      for (size_t j = 0; j < nf && on; ++j)
        if (t[j] && !rt[i][j]) on = false;
      if (on) rs.push_back((int)i);
    }
    // closure: all facets tight on every generator
    std::vector<char> cl(nf, 1);
    for (size_t j = 0; j < nf; ++j) {
      for (int i : vs)
        if (!vt[i][j]) cl[j] = 0;
      for (int i : rs)
        if (!rt[i][j]) cl[j] = 0;
    }
    return std::tuple{cl, vs, rs};
  };

  std::map<std::vector<char>, Face> seen;
  std::vector<std::vector<char>> queue;
  auto push = [&](const std::vector<char>& t) {
    auto [cl, vs, rs] = close(t);
    if (vs.empty()) return;  // empty face
    if (seen.count(cl)) return;
    Face f;
    f.vset = vs;
    f.rset = rs;
    for (size_t j = 0; j < nf; ++j)
      if (cl[j]) f.tight.push_back((int)j);
    // dimension from generators
    QMat dirs;
    for (size_t k = 1; k < vs.size(); ++k)
      dirs.push_back(qsub(p.verts[vs[k]], p.verts[vs[0]]));
    for (int r : rs) dirs.push_back(to_q(p.rays[r]));
    f.dim = rank_of_q(dirs);
    f.bounded = rs.empty();
    f.supp = IVec(p.n, 0);
    for (int j : f.tight)
      for (int i = 0; i < p.n; ++i) f.supp[i] += p.ineqs[j].a[i];
    seen.emplace(cl, std::move(f));
    queue.push_back(cl);
  };
  push(std::vector<char>(nf, 0));
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<char> base = queue[qi];
    for (size_t j = 0; j < nf; ++j) {
      if (base[j]) continue;
      std::vector<char> t = base;
      t[j] = 1;
      push(t);
    }
  }
  std::vector<Face> out;
  for (auto& [k, f] : seen) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vset < b.vset;
  });
  return out;
}

Poly face_poly(const Poly& p, const Face& f) {
  QMat verts;
  for (int i : f.vset) verts.push_back(p.verts[i]);
  IMat rays;
  for (int i : f.rset) rays.push_back(p.rays[i]);
  return poly_from_v(p.n, verts, rays);
}

Poly project(const Poly& p, const std::vector<int>& I) {
  std::vector<char> del(p.n, 0);
  for (int i : I) {
    require(i >= 0 && i < p.n, "project: coordinate out of range");
    del[i] = 1;
  }
  int m = p.n - (int)I.size();
  if (p.empty) {
    Poly r;
    r.n = m;
    return r;
  }
  QMat verts;
  for (const QVec& v : p.verts) {
    QVec w;
    for (int i = 0; i < p.n; ++i)
      if (!del[i]) w.push_back(v[i]);
    verts.push_back(w);
  }
  IMat rays;
  for (const IVec& r : p.rays) {
    IVec w;
    for (int i = 0; i < p.n; ++i)
      if (!del[i]) w.push_back(r[i]);
    if (!is_zero(w)) rays.push_back(w);
  }
  return poly_from_v(m, verts, rays);
}

Poly fiber(const Poly& p, const std::vector<int>& I, const QVec& b) {
  std::vector<char> keep(p.n, 0);
  for (int i : I) {
    require(i >= 0 && i < p.n, "fiber: coordinate out of range");
    keep[i] = 1;
  }
  require((int)b.size() == p.n - (int)I.size(), "fiber: base point dimension mismatch");
  auto split = [&](const HRow& r) {
    IVec aI;
    Rat rhs = r.c;
    int bi = 0;
    for (int i = 0; i < p.n; ++i) {
      if (keep[i])
        aI.push_back(r.a[i]);
      else
        rhs -= Rat(r.a[i]) * b[bi++];
    }
    return HRow{aI, rhs};
  };
  std::vector<HRow> ineqs, eqs;
  for (const HRow& r : p.ineqs) {
    HRow s = split(r);
    if (is_zero(s.a)) {
      if (s.c < 0) {  // infeasible
        Poly out;
        out.n = (int)I.size();
        return out;
      }
      continue;
    }
    ineqs.push_back(s);
  }
  for (const HRow& r : p.eqs) {
    HRow s = split(r);
    if (is_zero(s.a)) {
      if (s.c != 0) {
        Poly out;
        out.n = (int)I.size();
        return out;
      }
      continue;
    }
    eqs.push_back(s);
  }
  return poly_from_h((int)I.size(), ineqs, eqs);
}

std::vector<std::vector<int>> triangulate(const Poly& p) {
  require(!p.empty && is_bounded(p), "triangulate: needs a nonempty polytope");
  std::vector<Face> fl = faces(p);
  // memoized pulling triangulation over the face lattice, keyed by vertex set
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo;
  std::map<std::vector<int>, const Face*> by_vset;
  for (const Face& f : fl) by_vset[f.vset] = &f;

  std::function<const std::vector<std::vector<int>>&(const Face&)> tri =
      [&](const Face& f) -> const std::vector<std::vector<int>>& {
    auto it = memo.find(f.vset);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (f.dim == 0) {
      out.push_back({f.vset[0]});
    } else {
      // pull from the lex-smallest vertex (verts are sorted, so min index)
      int v0 = f.vset[0];
      for (const Face& g : fl) {
        if (g.dim != f.dim - 1) continue;
        if (!std::includes(f.vset.begin(), f.vset.end(), g.vset.begin(), g.vset.end()))
          continue;
        if (std::binary_search(g.vset.begin(), g.vset.end(), v0)) continue;
        for (const auto& s : tri(g)) {
          std::vector<int> t = s;
          t.push_back(v0);
          std::sort(t.begin(), t.end());
          out.push_back(t);
        }
      }
    }
    return memo.emplace(f.vset, std::move(out)).first->second;
  };
  return tri(fl.back());  // last face is p itself (max dim, full vset)
}

Rat lattice_volume(const Poly& p) {
  require(!p.empty, "lattice_volume: empty polyhedron");
  require(is_bounded(p), "lattice_volume: unbounded polyhedron");
  if (p.dim == 0) return 1;
  // coordinates in the saturated lattice of the direction space
  const QVec& v0 = p.verts[0];
  IMat dirs;
  for (size_t i = 1; i < p.verts.size(); ++i) dirs.push_back(clear_den(qsub(p.verts[i], v0)));
  IMat sat = saturation(dirs);
  invariant((int)sat.size() == p.dim, "lattice_volume: direction rank mismatch");
  QMat coords;
  for (const QVec& v : p.verts) {
    auto c = coords_in(sat, qsub(v, v0));
    invariant(c.has_value(), "lattice_volume: vertex outside direction span");
    coords.push_back(*c);
  }
  Rat vol = 0;
  for (const auto& simplex : triangulate(p)) {
    QMat m;
    for (size_t i = 1; i < simplex.size(); ++i)
      m.push_back(qsub(coords[simplex[i]], coords[simplex[0]]));
    Rat d = det_q(m);
    vol += abs(d);
  }
  return vol;
}

std::vector<VFace> v_faces(const Poly& p) {
  require(!p.empty, "v_faces: empty polyhedron");
  require(is_lattice_poly(p), "v_faces: vertices must be lattice points");
  // germ shape: recession cone is the full positive orthant
  IMat expect;
  for (int i = 0; i < p.n; ++i) {
    IVec e(p.n, 0);
    e[i] = 1;
    expect.push_back(e);
  }
  std::sort(expect.begin(), expect.end(), IVecLess{});
  require(p.rays == expect, "v_faces: recession cone must be the positive orthant");
  std::vector<VFace> out;
  for (const Face& f : faces(p)) {
    std::vector<char> in_j(p.n, 0);
    for (int vi : f.vset)
      for (int i = 0; i < p.n; ++i)
        if (p.verts[vi][i] != 0) in_j[i] = 1;
    std::vector<int> I;
    for (int ri : f.rset)
      for (int i = 0; i < p.n; ++i)
        if (p.rays[ri][i] != 0) {
          if (!in_j[i]) in_j[i] = 1;
          // ray support contributes to I below
        }
    std::vector<int> J;
    for (int i = 0; i < p.n; ++i)
      if (in_j[i]) J.push_back(i);
    if ((int)J.size() != f.dim + 1) continue;
    // an unbounded face touching every coordinate lies in no proper coordinate
    // subspace configuration; only bounded faces may use the full support
    if ((int)J.size() == p.n && !f.bounded) continue;
    std::vector<char> in_i(p.n, 0);
    for (int ri : f.rset)
      for (int i = 0; i < p.n; ++i)
        if (p.rays[ri][i] != 0) in_i[i] = 1;
    for (int i = 0; i < p.n; ++i)
      if (in_i[i]) I.push_back(i);
    // restrict to the J coordinates and take the primitive functional there
    QMat pts;
    for (int vi : f.vset) {
      QVec v;
      for (int j : J) v.push_back(p.verts[vi][j]);
      pts.push_back(v);
    }
    IMat dirs;
    for (int ri : f.rset) {
      IVec r;
      for (int j : J) r.push_back(p.rays[ri][j]);
      dirs.push_back(r);
    }
    PrimFun pf = primitive_functional(pts, dirs);
    invariant(pf.c.get_den() == 1 && pf.c >= 1, "v_faces: functional value must be a positive integer");
    VFace vf;
    vf.face = f;
    vf.J = J;
    vf.I = I;
    vf.m = pf.c.get_num();
    out.push_back(std::move(vf));
  }
  return out;
}

Poly fiber_polyhedron(const Poly& p, const std::vector<int>& I, const Poly& b) {
  Poly base = project(p, I);
  require(!b.empty && is_bounded(b), "fiber_polyhedron: base must be a bounded face");
  // locate b among the faces of the projection
  const std::vector<Face> bf = faces(base);
  const Face* fb = nullptr;
  for (const Face& f : bf)
    if (face_poly(base, f) == b) fb = &f;
  require(fb, "fiber_polyhedron: not a face of the projection");
  int k = fb->dim;
  if (k == 0) return fiber(p, I, b.verts[0]);

  // lift: the face of p selected by the supporting vector of b, extended by
  // zero on the I coordinates
  std::vector<char> keep(p.n, 0);
  for (int i : I) keep[i] = 1;
  IVec what(p.n, 0);
  {
    int bi = 0;
    for (int i = 0; i < p.n; ++i)
      if (!keep[i]) what[i] = fb->supp[bi++];
  }
  SupportData sd = support_data(p, what);
  invariant(sd.bounded, "fiber_polyhedron: lifted face is unbounded in the base direction");
  Poly gamma = sd.face;
  invariant(project(gamma, I) == b, "fiber_polyhedron: lift does not project onto the base");

  // base coordinates: offset b0 and saturated direction basis of b
  QVec b0 = lexmin_vertex(b);
  IMat dirs;
  for (size_t i = 1; i < b.verts.size(); ++i) dirs.push_back(clear_den(qsub(b.verts[i], b0)));
  IMat sat = saturation(dirs);
  invariant((int)sat.size() == k, "fiber_polyhedron: base coordinate rank mismatch");
  auto to_base = [&](const QVec& x) {  // x in the ambient of b
    auto c = coords_in(sat, qsub(x, b0));
    invariant(c.has_value(), "fiber_polyhedron: point outside the base span");
    return *c;
  };
  auto from_base = [&](const QVec& c) {
    QVec x = b0;
    for (int i = 0; i < k; ++i)
      for (size_t j = 0; j < x.size(); ++j) x[j] += c[i] * Rat(sat[i][j]);
    return x;
  };

  // chamber walls: facet hyperplanes (and degenerate affine hulls) of the
  // projections of all faces of gamma, in base coordinates
  auto drop_I = [&](const QVec& x) {
    QVec w;
    for (int i = 0; i < p.n; ++i)
      if (!keep[i]) w.push_back(x[i]);
    return w;
  };
  std::vector<HRow> walls;
  auto add_wall = [&](IVec a, Rat c) {
    HRow w = normalize_row(std::move(a), std::move(c), true);
    walls.push_back(std::move(w));
  };
  for (const Face& g : faces(gamma)) {
    QMat vs;
    for (int vi : g.vset) vs.push_back(to_base(drop_I(gamma.verts[vi])));
    Poly gp = poly_from_v(k, vs);
    for (const HRow& r : gp.ineqs) add_wall(r.a, r.c);
    for (const HRow& r : gp.eqs) add_wall(r.a, r.c);
  }
  std::sort(walls.begin(), walls.end(), hrow_less);
  walls.erase(std::unique(walls.begin(), walls.end()), walls.end());

  // split the base into chambers
  QMat bverts;
  for (const QVec& v : b.verts) bverts.push_back(to_base(v));
  std::vector<Poly> regions = {poly_from_v(k, bverts)};
  for (const HRow& w : walls) {
    std::vector<Poly> next;
    for (const Poly& r : regions) {
      // slice on the region's own rows: a bare halfspace is not pointed
      std::vector<HRow> lo_rows = r.ineqs, hi_rows = r.ineqs;
      lo_rows.push_back(w);
      hi_rows.push_back({ineg(w.a), -w.c});
      Poly lo = poly_from_h(k, lo_rows, r.eqs);
      Poly hi = poly_from_h(k, hi_rows, r.eqs);
      if (!lo.empty && lo.dim == k) next.push_back(lo);
      if (!hi.empty && hi.dim == k) next.push_back(hi);
      if ((lo.empty || lo.dim < k) && (hi.empty || hi.dim < k)) next.push_back(r);
    }
    regions = std::move(next);
  }

  // integrate against the lattice volume form of the base (the fibers are
  // piecewise linear, so on each simplex the integral is the value at the
  // centroid times the lattice volume): (1 + k) * sum of mu * fiber(centroid)
  Poly total;
  bool first = true;
  for (const Poly& reg : regions) {
    for (const auto& s : triangulate(reg)) {
      QMat m;
      for (size_t i = 1; i < s.size(); ++i) m.push_back(qsub(reg.verts[s[i]], reg.verts[s[0]]));
      Rat mu = abs(det_q(m));
      if (mu == 0) continue;
      QVec cen(k, Rat(0));
      for (int vi : s) cen = qadd(cen, reg.verts[vi]);
      cen = qscale(Rat(1, (long)s.size()), cen);
      Poly f = fiber(p, I, from_base(cen));
      require(!f.empty, "fiber_polyhedron: empty fiber over the base");
      Poly term = poly_dilate(f, Rat(1 + k) * mu);
      total = first ? term : minkowski_sum(total, term);
      first = false;
    }
  }
  invariant(!first, "fiber_polyhedron: no chambers");
  return total;
}

VPoly virtual_sub(const Poly& p, const Poly& q) {
  require(!p.empty && !q.empty, "virtual_sub: empty polyhedron");
  require(p.n == q.n && p.rays == q.rays, "virtual_sub: recession cones differ");
  return {p, q};
}

VPoly virtual_add(const VPoly& a, const VPoly& b) {
  return {minkowski_sum(a.plus, b.plus), minkowski_sum(a.minus, b.minus)};
}

bool virtual_is_trivial(const VPoly& v) {
  QVec t = qsub(lexmin_vertex(v.plus), lexmin_vertex(v.minus));
  return poly_translate(v.minus, t) == v.plus;
}

std::optional<Poly> virtual_is_genuine(const VPoly& v) {
  const Poly& p = v.plus;
  const Poly& q = v.minus;
  // test directions: facet normals of p + q generate the common refinement of
  // both normal fans, so the support function difference is linear on each
  // normal cone exactly when the difference is a polyhedron
  Poly s = minkowski_sum(p, q);
  auto h = [&](const Poly& x, const IVec& a) {
    Rat best = dotq(a, x.verts[0]);
    for (const QVec& w : x.verts) {
      Rat t = dotq(a, w);
      if (t > best) best = t;
    }
    return best;
  };
  std::vector<HRow> rows;
  auto add_dir = [&](const IVec& a) {
    for (const IVec& r : s.rays)
      if (dot(a, r) > 0) return;  // unbounded direction, no constraint
    rows.push_back({a, h(p, a) - h(q, a)});
  };
  for (const HRow& r : s.ineqs) add_dir(r.a);
  for (const HRow& r : s.eqs) {
    add_dir(r.a);
    add_dir(ineg(r.a));
  }
  Poly cand = poly_from_h(p.n, rows);
  if (cand.empty) return std::nullopt;
  if (minkowski_sum(cand, q) == p) return cand;
  return std::nullopt;
}

}  // namespace trop
