// Detection of roots of unity among nearby monodromy eigenvalues of a
// lattice Newton polyhedron.  Everything is driven by the V-faces of the
// coordinate projections: zeta factors and the codimension-0 test come from
// the bounded V-faces, the codimension-1 test assembles the virtual fiber
// class edge by edge and, when the coordinate complement is a plane,
// searches the same edges for a witness point with a nontrivial fiber.

#include "trop/monodromy.h"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

#include "trop/linalg.h"

namespace trop {

namespace {

IVec lattice_point(const QVec& v) {
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    invariant(v[i].get_den() == 1, "expected a lattice point");
    r[i] = v[i].get_num();
  }
  return r;
}

void add_divisors(const Int& d, std::set<Int>& out) {
  for (Int t = 1; t * t <= d; ++t)
    if (d % t == 0) {
      out.insert(t);
      out.insert(d / t);
    }
}

void check_germ(const Poly& N) {
  require(!N.empty, "empty polyhedron");
  require(recession_cone(N) == orthant(N.n), "Newton polyhedron germ required");
  require(is_lattice_poly(N), "lattice vertices required");
}

void check_index_set(const Poly& N, const std::vector<int>& I) {
  for (size_t i = 0; i < I.size(); ++i) {
    require(I[i] >= 0 && I[i] < N.n, "coordinate index out of range");
    require(i == 0 || I[i] > I[i - 1], "coordinate set must be strictly increasing");
  }
}

void check_query(const TneQuery& q) {
  check_index_set(q.N, q.I);
  require(q.m >= 2, "denominator must be at least 2");
  require(gcd(q.k, q.m) == 1, "numerator must be coprime to the denominator");
  if (!q.allow_tautological)
    require(tautological_denominators(q.N).count(q.m) == 0, "tautological denominator");
}

// projection with its face list and the lattice distances of its V-faces
struct ProjData {
  Poly P;
  std::vector<Face> faces_of;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Int> vdist;
};

ProjData proj_data(const Poly& N, const std::vector<int>& I) {
  ProjData pd;
  pd.P = project(N, I);
  pd.faces_of = faces(pd.P);
  for (const VFace& vf : v_faces(pd.P)) pd.vdist[{vf.face.vset, vf.face.rset}] = vf.m;
  return pd;
}

// V-face whose lattice distance is divisible by m
bool contributes(const ProjData& pd, const Face& f, const Int& m) {
  auto it = pd.vdist.find({f.vset, f.rset});
  return it != pd.vdist.end() && it->second % m == 0;
}

bool vertex_contributes(const ProjData& pd, int v, const Int& m) {
  auto it = pd.vdist.find({std::vector<int>{v}, std::vector<int>{}});
  return it != pd.vdist.end() && it->second % m == 0;
}

Int lattice_length(const ProjData& pd, const Face& f) {
  IVec a0 = lattice_point(pd.P.verts[f.vset[0]]);
  IVec a1 = lattice_point(pd.P.verts[f.vset[1]]);
  Int g = 0;
  for (size_t i = 0; i < a0.size(); ++i) g = gcd(g, a1[i] - a0[i]);
  return g;
}

}  // namespace

std::string zeta_to_string(const ZetaFactors& z) {
  if (z.e.empty()) return "1";
  std::string s;
  for (const auto& [M, e] : z.e) {
    if (!s.empty()) s += ' ';
    s += "(1-t^" + to_string(M) + ")^" + to_string(e);
  }
  return s;
}

std::set<Int> tautological_denominators(const Poly& N) {
  check_germ(N);
  std::set<Int> out{Int(1)};
  for (int i = 0; i < N.n; ++i) {
    IVec v(N.n, Int(0));
    v[i] = -1;
    SupportData sd = support_data(N, v);
    invariant(sd.bounded, "a germ is bounded below");
    Rat mn = -sd.value;
    if (mn > 0) {
      invariant(mn.get_den() == 1, "lattice minimum expected");
      add_divisors(mn.get_num(), out);
    }
  }
  return out;
}

ZetaFactors zeta_factors(const Poly& N, const std::vector<int>& I) {
  check_germ(N);
  check_index_set(N, I);
  ZetaFactors z;
  Poly P = project(N, I);
  for (const VFace& vf : v_faces(P)) {
    if (!vf.face.bounded) continue;
    Rat vol = lattice_volume(face_poly(P, vf.face));
    invariant(vol.get_den() == 1, "lattice volume of a lattice face is integral");
    Int e = vol.get_num();
    if (vf.face.dim % 2 == 1) e = -e;
    z.e[vf.m] += e;
  }
  for (auto it = z.e.begin(); it != z.e.end();)
    it = it->second == 0 ? z.e.erase(it) : std::next(it);
  return z;
}

bool tne_codim0(const TneQuery& q) {
  check_germ(q.N);
  check_query(q);
  ZetaFactors z = zeta_factors(q.N, q.I);
  Int s = 0;
  for (const auto& [M, e] : z.e)
    if (M % q.m == 0) s += e;
  return s != 0;
}

VPoly psi(const Poly& N, const std::vector<int>& I, const Int& m) {
  check_germ(N);
  check_index_set(N, I);
  require(m >= 1, "positive denominator required");
  int ni = static_cast<int>(I.size());
  IMat unit;
  for (int i = 0; i < ni; ++i) {
    IVec e(ni, Int(0));
    e[i] = 1;
    unit.push_back(e);
  }
  Poly orth = poly_from_v(ni, {QVec(ni, Rat(0))}, unit);
  VPoly acc = virtual_sub(orth, orth);
  ProjData pd = proj_data(N, I);
  for (const Face& f : pd.faces_of) {
    if (f.dim != 1 || !f.bounded) continue;
    bool ib = contributes(pd, f, m);
    bool i0 = vertex_contributes(pd, f.vset[0], m);
    bool i1 = vertex_contributes(pd, f.vset[1], m);
    if (!ib && !i0 && !i1) continue;
    Poly plus = orth;
    Poly minus = orth;
    if (ib) plus = minkowski_sum(plus, fiber_polyhedron(N, I, face_poly(pd.P, f)));
    if (i0) minus = minkowski_sum(minus, fiber(N, I, pd.P.verts[f.vset[0]]));
    if (i1) minus = minkowski_sum(minus, fiber(N, I, pd.P.verts[f.vset[1]]));
    acc = virtual_add(acc, VPoly{plus, minus});
  }
  return acc;
}

std::pair<bool, std::optional<TneWitness>> tne_codim1(const TneQuery& q) {
  check_germ(q.N);
  check_query(q);
  int nbar = q.N.n - static_cast<int>(q.I.size());
  require(nbar >= 2, "codim 1 undefined here");
  VPoly ps = psi(q.N, q.I, q.m);
  bool cls = !virtual_is_trivial(ps);
  if (nbar > 2) return {cls, std::nullopt};
  ProjData pd = proj_data(q.N, q.I);
  std::optional<TneWitness> wit;
  for (const Face& f : pd.faces_of) {
    if (wit) break;
    if (f.dim != 1 || !f.bounded || !contributes(pd, f, q.m)) continue;
    IVec a0 = lattice_point(pd.P.verts[f.vset[0]]);
    IVec a1 = lattice_point(pd.P.verts[f.vset[1]]);
    Int g = lattice_length(pd, f);
    for (Int t = 0; t <= g; ++t) {
      if (t == 0 && vertex_contributes(pd, f.vset[0], q.m)) continue;
      if (t == g && vertex_contributes(pd, f.vset[1], q.m)) continue;
      QVec a(a0.size());
      for (size_t i = 0; i < a0.size(); ++i) a[i] = Rat(a0[i] + t * (a1[i] - a0[i]) / g);
      if (!is_trivial(fiber(q.N, q.I, a))) {
        wit = TneWitness{lattice_point(a), face_poly(pd.P, f)};
        break;
      }
    }
  }
  invariant(wit.has_value() == cls, "codimension-1 witness search and the virtual class disagree");
  return {cls, wit};
}

Fan codim1_class(const Poly& N, const std::vector<int>& I, const Int& m) {
  check_germ(N);
  check_index_set(N, I);
  require(!I.empty(), "at least one fiber coordinate required");
  require(m >= 1, "positive denominator required");
  int ni = static_cast<int>(I.size());
  ProjData pd = proj_data(N, I);
  Fan acc = zero_fan(ni, ni - 1, neg_orthant(ni));
  for (const Face& f : pd.faces_of) {
    if (!f.bounded || !contributes(pd, f, m)) continue;
    Poly fp = fiber_polyhedron(N, I, face_poly(pd.P, f));
    Fan d1 = restrict_to_ambient(dual_fan(fp, 1), neg_orthant(ni));
    acc = fan_add(acc, fan_scale(Rat(f.dim % 2 == 0 ? 1 : -1), d1));
  }
  return normal_form(acc);
}

std::vector<Fan> push_face_class(const Poly& gamma, const std::vector<int>& I) {
  require(!gamma.empty, "empty polyhedron");
  check_index_set(gamma, I);
  int n = gamma.n;
  int ni = static_cast<int>(I.size());
  IMat gens;
  for (size_t i = 1; i < gamma.verts.size(); ++i)
    gens.push_back(clear_den(qsub(gamma.verts[i], gamma.verts[0])));
  for (const IVec& r : gamma.rays) gens.push_back(r);
  IMat bas = saturation(gens);
  int g = static_cast<int>(bas.size());
  for (int i : I) {
    IVec e(n, Int(0));
    e[i] = 1;
    require(coords_in(bas, to_q(e)).has_value(), "projection undefined for this face");
  }
  QMat lv;
  for (const QVec& v : gamma.verts) {
    auto c = coords_in(bas, qsub(v, gamma.verts[0]));
    invariant(c.has_value(), "vertex outside the face span");
    lv.push_back(*c);
  }
  IMat lr;
  for (const IVec& r : gamma.rays) {
    auto c = coords_in(bas, to_q(r));
    invariant(c.has_value(), "ray outside the face span");
    lr.push_back(clear_den(*c));
  }
  Poly loc = poly_from_v(g, lv, lr);
  IMat p;  // span coordinates -> the I coordinates of the original space
  for (int i : I) {
    IVec row(g);
    for (int j = 0; j < g; ++j) row[j] = bas[j][i];
    p.push_back(row);
  }
  std::vector<Fan> out;
  for (int c = 0; c <= ni; ++c) {
    int d = g - ni + c;
    if (d >= 1 && d <= g) {
      Fan pushed = direct_image(p, dual_fan(loc, d));
      Rat sgn((d - 1) % 2 == 0 ? 1 : -1);
      out.push_back(normal_form(restrict_to_ambient(fan_scale(sgn, pushed), neg_orthant(ni))));
    } else {
      out.push_back(zero_fan(ni, ni - c, neg_orthant(ni)));
    }
  }
  return out;
}

const char* germ_case_name(GermCase c) {
  switch (c) {
    case GermCase::TNE: return "TNE";
    case GermCase::CASE1: return "CASE1";
    case GermCase::CASE2: return "CASE2";
    case GermCase::CASE3: return "CASE3";
    case GermCase::CASE4: return "CASE4";
  }
  return "?";
}

GermCase classify_germ(const TneQuery& q) {
  check_germ(q.N);
  check_query(q);
  require(q.N.n - static_cast<int>(q.I.size()) == 2, "codim 1 undefined here");
  if (tne_codim0(q)) return GermCase::TNE;
  if (tne_codim1(q).first) return GermCase::TNE;
  ProjData pd = proj_data(q.N, q.I);
  std::vector<int> va;
  std::vector<Face> eb;
  for (const Face& f : pd.faces_of) {
    if (f.dim == 0 && contributes(pd, f, q.m)) va.push_back(f.vset[0]);
    if (f.dim == 1 && f.bounded && contributes(pd, f, q.m)) eb.push_back(f);
  }
  if (va.empty() && eb.empty()) return GermCase::CASE1;
  auto fiber_trivial_at = [&](const QVec& a) { return is_trivial(fiber(q.N, q.I, a)); };
  if (eb.size() == 1 && va.size() == 2) {
    // one edge of lattice length 2, both endpoints contribute, the fiber over
    // the interior lattice point is trivial
    const Face& B = eb[0];
    if (B.vset == va && lattice_length(pd, B) == 2) {
      QVec mid = qscale(Rat(1, 2), qadd(pd.P.verts[va[0]], pd.P.verts[va[1]]));
      if (fiber_trivial_at(mid)) return GermCase::CASE2;
    }
  }
  if (eb.size() == 1 && va.size() == 1) {
    // one vertex with one adjacent edge of lattice length 1, the fiber over
    // the other endpoint is trivial
    const Face& B = eb[0];
    int a = va[0];
    if ((B.vset[0] == a || B.vset[1] == a) && lattice_length(pd, B) == 1) {
      int other = B.vset[0] == a ? B.vset[1] : B.vset[0];
      if (fiber_trivial_at(pd.P.verts[other])) return GermCase::CASE3;
    }
  }
  if (eb.size() == 2 && va.size() == 2) {
    // two such vertex-edge pairs with distinct edges
    auto pair_ok = [&](int a, const Face& B) {
      if (B.vset[0] != a && B.vset[1] != a) return false;
      if (lattice_length(pd, B) != 1) return false;
      int other = B.vset[0] == a ? B.vset[1] : B.vset[0];
      if (other == va[0] || other == va[1]) return false;
      return fiber_trivial_at(pd.P.verts[other]);
    };
    if ((pair_ok(va[0], eb[0]) && pair_ok(va[1], eb[1])) ||
        (pair_ok(va[0], eb[1]) && pair_ok(va[1], eb[0])))
      return GermCase::CASE4;
  }
  throw InvariantError("contributing faces escape the classification");
}

std::vector<TneReport> tne_report(const Poly& N, int jobs) {
  check_germ(N);
  std::set<Int> taut = tautological_denominators(N);
  struct Job {
    std::vector<int> I;
    Int m;
  };
  std::vector<Job> work;
  int n = N.n;
  for (int mask = 0; mask + 1 < (1 << n); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) I.push_back(i);
    std::set<Int> cand;
    for (const VFace& vf : v_faces(project(N, I)))
      if (vf.face.bounded) add_divisors(vf.m, cand);
    for (const Int& m : cand)
      if (m >= 2 && !taut.count(m)) work.push_back({I, m});
  }
  std::vector<TneReport> out(work.size());
  auto run = [&](size_t i) {
    const Job& jb = work[i];
    TneQuery q{N, jb.I, Int(1), jb.m, false};
    TneReport r;
    r.query = q;
    r.zeta = zeta_factors(N, jb.I);
    r.codim0 = tne_codim0(q);
    r.psi = psi(N, jb.I, jb.m);
    int nbar = n - static_cast<int>(jb.I.size());
    if (nbar == 2) {
      auto [c1, w] = tne_codim1(q);
      r.codim1 = c1;
      r.witness = w;
      r.case_tag = classify_germ(q);
    } else if (nbar > 2) {
      r.codim1 = !virtual_is_trivial(r.psi);
    }
    out[i] = std::move(r);
  };
  if (jobs <= 1) {
    for (size_t i = 0; i < work.size(); ++i) run(i);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        try {
          for (size_t i = next++; i < work.size(); i = next++) run(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      });
    for (std::thread& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }
  return out;
}

}  // namespace trop
