#include "trop/cone.h"

#include <algorithm>

namespace trop {

namespace {

IVec reduce(IVec v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

struct Ray {
  IVec v;
  std::vector<char> tight;  // indexed by processed inequality
};

}  // namespace

void dd_pair(int n, const IMat& ineq, const IMat& eq, IMat* rays_out, IMat* lin_out) {
  IMat lin = eq.empty() ? IMat() : integer_kernel(eq);
  if (eq.empty()) {
    lin.assign(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) lin[i][i] = 1;
  }
  std::vector<Ray> rays;
  size_t m = ineq.size();
  for (size_t i = 0; i < m; ++i) {
    const IVec& a = ineq[i];
    // does the constraint cut the lineality space?
    size_t j0 = lin.size();
    for (size_t j = 0; j < lin.size(); ++j)
      if (dot(a, lin[j]) != 0) {
        j0 = j;
        break;
      }
    if (j0 < lin.size()) {
      IVec v = lin[j0];
      if (dot(a, v) < 0) v = ineg(v);
      Int av = dot(a, v);
      IMat nl;
      for (size_t j = 0; j < lin.size(); ++j) {
        if (j == j0) continue;
        Int al = dot(a, lin[j]);
        IVec l2(n);
        for (int t = 0; t < n; ++t) l2[t] = av * lin[j][t] - al * v[t];
        if (!is_zero(l2)) nl.push_back(reduce(l2));
      }
      lin = nl;
      for (Ray& r : rays) {
        Int ar = dot(a, r.v);
        IVec r2(n);
        for (int t = 0; t < n; ++t) r2[t] = av * r.v[t] - ar * v[t];
        r.v = reduce(r2);
        r.tight.resize(i + 1, 0);
        r.tight[i] = 1;  // transformed rays are tight at the new wall
      }
      Ray nr;
      nr.v = reduce(v);
      nr.tight.assign(i + 1, 1);  // lineality satisfied everything before
      nr.tight[i] = 0;
      rays.push_back(std::move(nr));
      continue;
    }
    std::vector<size_t> pos, neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      rays[r].tight.resize(i + 1, 0);
      int s = sgn(dot(a, rays[r].v));
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else
        rays[r].tight[i] = 1;
    }
    if (neg.empty()) continue;
    std::vector<Ray> next;
    for (size_t r = 0; r < rays.size(); ++r) {
      int s = sgn(dot(a, rays[r].v));
      if (s >= 0) next.push_back(rays[r]);
    }
    for (size_t p : pos)
      for (size_t q : neg) {
        // combinatorial adjacency: no third ray tight everywhere p and q are
        std::vector<char> t(i + 1, 0);
        for (size_t j = 0; j < i; ++j) t[j] = rays[p].tight[j] & rays[q].tight[j];
        bool adjacent = true;
        for (size_t s2 = 0; s2 < rays.size() && adjacent; ++s2) {
          if (s2 == p || s2 == q) continue;
          bool covers = true;
          for (size_t j = 0; j < i; ++j)
            if (t[j] && !rays[s2].tight[j]) {
              covers = false;
              break;
            }
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        Int ap = dot(a, rays[p].v), aq = dot(a, rays[q].v);
        IVec w(n);
        for (int k = 0; k < n; ++k) w[k] = ap * rays[q].v[k] - aq * rays[p].v[k];
        if (is_zero(w)) continue;
        Ray nr;
        nr.v = reduce(w);
        nr.tight = t;
        nr.tight[i] = 1;
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }
  IMat rv;
  for (Ray& r : rays) rv.push_back(r.v);
  std::sort(rv.begin(), rv.end(), IVecLess{});
  rv.erase(std::unique(rv.begin(), rv.end()), rv.end());
  *rays_out = rv;
  *lin_out = hnf_rows(lin);
}

Cone cone_from_h(int n, const IMat& ineq, const IMat& eq) {
  Cone c;
  c.n = n;
  dd_pair(n, ineq, eq, &c.rays, &c.lin);
  // canonical irredundant facets: extreme rays of the polar
  IMat pi;
  for (const IVec& r : c.rays) pi.push_back(ineg(r));
  IMat prays, plin;
  dd_pair(n, pi, c.lin, &prays, &plin);
  c.ineq.clear();
  for (const IVec& s : prays) c.ineq.push_back(ineg(s));
  std::sort(c.ineq.begin(), c.ineq.end(), IVecLess{});
  c.eq = plin;
  c.dim = n - (int)c.eq.size();
  return c;
}

Cone cone_from_v(int n, const IMat& rays, const IMat& lin) {
  // polar has an explicit facet description; its generators give canonical
  // facets of the original cone, and a second pass canonicalizes generators
  IMat pi;
  for (const IVec& r : rays)
    if (!is_zero(r)) pi.push_back(ineg(r));
  IMat le;
  for (const IVec& l : lin)
    if (!is_zero(l)) le.push_back(l);
  IMat prays, plin;
  dd_pair(n, pi, le, &prays, &plin);
  IMat hineq;
  for (const IVec& s : prays) hineq.push_back(ineg(s));
  Cone c;
  c.n = n;
  dd_pair(n, hineq, plin, &c.rays, &c.lin);
  c.ineq = hineq;
  std::sort(c.ineq.begin(), c.ineq.end(), IVecLess{});
  c.eq = hnf_rows(plin);
  c.dim = n - (int)c.eq.size();
  return c;
}

Cone polar(const Cone& c) {
  IMat pi;
  for (const IVec& r : c.rays) pi.push_back(ineg(r));
  return cone_from_h(c.n, pi, c.lin);
}

Cone intersect(const Cone& a, const Cone& b) {
  IMat ineq = a.ineq, eq = a.eq;
  ineq.insert(ineq.end(), b.ineq.begin(), b.ineq.end());
  eq.insert(eq.end(), b.eq.begin(), b.eq.end());
  return cone_from_h(a.n, ineq, eq);
}

Cone product(const Cone& a, const Cone& b) {
  auto pad = [&](const IMat& m, bool front) {
    IMat r;
    for (const IVec& v : m) {
      IVec w(a.n + b.n, 0);
      for (size_t i = 0; i < v.size(); ++i) w[(front ? 0 : a.n) + i] = v[i];
      r.push_back(w);
    }
    return r;
  };
  IMat rays = pad(a.rays, true), lin = pad(a.lin, true);
  IMat rb = pad(b.rays, false), lb = pad(b.lin, false);
  rays.insert(rays.end(), rb.begin(), rb.end());
  lin.insert(lin.end(), lb.begin(), lb.end());
  return cone_from_v(a.n + b.n, rays, lin);
}

bool cone_contains(const Cone& c, const QVec& x) {
  for (const IVec& e : c.eq)
    if (dotq(e, x) != 0) return false;
  for (const IVec& a : c.ineq)
    if (dotq(a, x) < 0) return false;
  return true;
}
bool cone_contains_i(const Cone& c, const IVec& x) { return cone_contains(c, to_q(x)); }

bool in_relint(const Cone& c, const QVec& x) {
  for (const IVec& e : c.eq)
    if (dotq(e, x) != 0) return false;
  for (const IVec& a : c.ineq)
    if (dotq(a, x) <= 0) return false;
  return true;
}

bool cone_subset(const Cone& a, const Cone& b) {
  for (const IVec& r : a.rays)
    if (!cone_contains_i(b, r)) return false;
  for (const IVec& l : a.lin)
    if (!cone_contains_i(b, l) || !cone_contains_i(b, ineg(l))) return false;
  return true;
}

Cone minimal_face(const Cone& c, const QVec& x) {
  require(cone_contains(c, x), "minimal_face: point outside cone");
  IMat eq = c.eq, ineq;
  for (const IVec& a : c.ineq) {
    if (dotq(a, x) == 0)
      eq.push_back(a);
    else
      ineq.push_back(a);
  }
  return cone_from_h(c.n, ineq, eq);
}

QVec relint_point(const Cone& c) {
  QVec z(c.n, Rat(0));
  for (const IVec& r : c.rays)
    for (int i = 0; i < c.n; ++i) z[i] += Rat(r[i]);
  return z;
}

Cone cone_image(const Cone& c, const IMat& p) {
  IMat rays, lin;
  for (const IVec& r : c.rays) rays.push_back(apply_map(p, r));
  for (const IVec& l : c.lin) lin.push_back(apply_map(p, l));
  return cone_from_v((int)p.size(), rays, lin);
}

Cone full_space(int n) { return cone_from_h(n, {}, {}); }
Cone zero_cone(int n) { return cone_from_v(n, {}, {}); }
Cone orthant(int n) {
  IMat id(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  return cone_from_h(n, id, {});
}
Cone neg_orthant(int n) {
  IMat id(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = -1;
  return cone_from_h(n, id, {});
}

}  // namespace trop
