#include "trop/linalg.h"

#include <algorithm>

namespace trop {

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

IVec primitive(const IVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  require(g != 0, "primitive: zero vector");
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IVec primitive_q(const QVec& v) { return primitive(clear_den(v)); }

IMat hnf_rows(IMat a) {
  if (a.empty()) return a;
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // clear column c below row r by gcd steps
    while (true) {
      size_t piv = rows;
      for (size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (piv == rows || cmp(abs(a[i][c]), abs(a[piv][c])) < 0)) piv = i;
      if (piv == rows) break;  // column is zero from r down
      std::swap(a[r], a[piv]);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Int q = a[i][c] / a[r][c];  // truncated division is fine for descent
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) clean = false;
      }
      if (clean) {
        if (a[r][c] < 0)
          for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        for (size_t i = 0; i < r; ++i) {  // reduce entries above into [0, pivot)
          Int q = a[i][c] / a[r][c];
          if (a[i][c] - q * a[r][c] < 0) q -= 1;
          if (q != 0)
            for (size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
        break;
      }
    }
  }
  a.resize(r);
  return a;
}

IMat integer_kernel(const IMat& a) {
  size_t m = a.size();
  size_t n = m ? a[0].size() : 0;
  if (m == 0) return {};  // caller handles "no constraints" case explicitly
  // rows of [a^T | I_n]; HNF row ops keep (x . a^T | x) structure
  IMat w(n, IVec(m + n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) w[i][j] = a[j][i];
    w[i][m + i] = 1;
  }
  // run the HNF elimination on the first m columns only, keeping all rows
  size_t r = 0;
  size_t rows = n, cols = m + n;
  for (size_t c = 0; c < m && r < rows; ++c) {
    while (true) {
      size_t piv = rows;
      for (size_t i = r; i < rows; ++i)
        if (w[i][c] != 0 && (piv == rows || cmp(abs(w[i][c]), abs(w[piv][c])) < 0)) piv = i;
      if (piv == rows) break;
      std::swap(w[r], w[piv]);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (w[i][c] == 0) continue;
        Int q = w[i][c] / w[r][c];
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) w[i][j] -= q * w[r][j];
        if (w[i][c] != 0) clean = false;
      }
      if (clean) {
        ++r;
        break;
      }
    }
  }
  IMat ker;
  for (size_t i = r; i < rows; ++i) {
    IVec x(w[i].begin() + m, w[i].end());
    bool z = true;
    for (size_t j = 0; j < m; ++j)
      if (w[i][j] != 0) z = false;
    invariant(z, "integer_kernel: elimination left nonzero head");
    ker.push_back(std::move(x));
  }
  return hnf_rows(ker);
}

static IMat identity_mat(size_t n) {
  IMat id(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// kernel with the convention that an empty constraint list over Z^n means Z^n
static IMat kernel_or_full(const IMat& a, size_t n) {
  if (a.empty()) return identity_mat(n);
  return integer_kernel(a);
}

int rank_of(const IMat& a) {
  QMat q;
  for (const IVec& r : a) q.push_back(to_q(r));
  return rank_of_q(q);
}

int rank_of_q(const QMat& a0) {
  QMat a = a0;
  size_t rows = a.size();
  if (rows == 0) return 0;
  size_t cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return (int)r;
}

IMat saturation(const IMat& gens) {
  if (gens.empty()) return {};
  size_t n = gens[0].size();
  IMat w = kernel_or_full(gens, n);  // orthogonal complement lattice
  if (w.empty()) return identity_mat(n);
  IMat s = integer_kernel(w);
  return s;  // already HNF
}

std::optional<QVec> solve_linear(const QMat& a0, const QVec& rhs0) {
  QMat a = a0;
  QVec rhs = rhs0;
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<size_t> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    std::swap(rhs[r], rhs[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivcol[i]] = rhs[i] / a[i][pivcol[i]];
  return x;
}

std::optional<QVec> coords_in(const IMat& b, const QVec& v) {
  size_t k = b.size();
  size_t n = k ? b[0].size() : v.size();
  // solve sum_i x_i b_i = v, i.e. B^T x = v
  QMat bt(n, QVec(k, Rat(0)));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) bt[j][i] = Rat(b[i][j]);
  return solve_linear(bt, v);
}

Int det_int(const IMat& a0) {
  size_t n = a0.size();
  if (n == 0) return 1;
  IMat a = a0;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t piv = n;
      for (size_t i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

Rat det_q(QMat a) {
  size_t n = a.size();
  if (n == 0) return 1;
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t i = c; i < n; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Int index_in_saturation(const IMat& gens) {
  IMat h = hnf_rows(gens);
  if (h.empty()) return 1;
  IMat s = saturation(gens);
  invariant(s.size() == h.size(), "index_in_saturation: rank mismatch");
  QMat m(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    auto c = coords_in(s, to_q(h[i]));
    invariant(c.has_value(), "index_in_saturation: generator outside saturation");
    m[i] = *c;
  }
  Rat d = det_q(m);
  invariant(d != 0 && d.get_den() == 1, "index_in_saturation: non-integral index");
  return abs(d.get_num());
}

IVec apply_map(const IMat& p, const IVec& x) {
  IVec y(p.size());
  for (size_t j = 0; j < p.size(); ++j) y[j] = dot(p[j], x);
  return y;
}
QVec apply_map_q(const IMat& p, const QVec& x) {
  QVec y(p.size());
  for (size_t j = 0; j < p.size(); ++j) y[j] = dotq(p[j], x);
  return y;
}

Int lattice_index(const IMat& sub_gens, const IMat& p) {
  IMat s = saturation(sub_gens);
  IMat ps;
  for (const IVec& v : s) ps.push_back(apply_map(p, v));
  require(rank_of(ps) == (int)s.size(), "lattice_index: map not injective on span");
  // basis of p(Z^n): images of the unit vectors
  size_t n = p.empty() ? 0 : p[0].size();
  IMat cols;
  for (size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    cols.push_back(apply_map(p, e));
  }
  IMat hl = hnf_rows(cols);
  IMat in_l;
  for (const IVec& v : ps) {
    auto c = coords_in(hl, to_q(v));
    invariant(c.has_value(), "lattice_index: image outside image lattice");
    IVec ci(c->size());
    for (size_t j = 0; j < c->size(); ++j) {
      invariant((*c)[j].get_den() == 1, "lattice_index: non-integral coordinates");
      ci[j] = (*c)[j].get_num();
    }
    in_l.push_back(ci);
  }
  return index_in_saturation(in_l);
}

PrimFun primitive_functional(const QMat& points, const IMat& directions) {
  require(!points.empty(), "primitive_functional: no points");
  size_t n = points[0].size();
  IMat d;
  for (size_t i = 1; i < points.size(); ++i) {
    QVec diff = qsub(points[i], points[0]);
    if (!is_zeroq(diff)) d.push_back(clear_den(diff));
  }
  for (const IVec& v : directions)
    if (!is_zero(v)) d.push_back(v);
  IMat k = kernel_or_full(d, n);
  require(k.size() == 1, "primitive_functional: affine span is not of codimension one");
  IVec l = primitive(k[0]);
  Rat c = dotq(l, points[0]);
  if (c < 0) {
    l = ineg(l);
    c = -c;
  } else if (c == 0) {
    for (const Int& x : l) {
      if (x > 0) break;
      if (x < 0) {
        l = ineg(l);
        break;
      }
    }
  }
  return {l, c};
}

// xoshiro256** with splitmix64 seeding: identical streams everywhere
static uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
static inline uint64_t rotl64(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
}

uint64_t Rng::next_u64() {
  uint64_t result = rotl64(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl64(s_[3], 45);
  return result;
}

long Rng::uniform(long lo, long hi) {
  require(lo <= hi, "Rng::uniform: empty range");
  uint64_t span = (uint64_t)(hi - lo) + 1;
  if (span == 0) return (long)next_u64();  // full 64-bit range
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t u;
  do {
    u = next_u64();
  } while (u >= limit);
  return lo + (long)(u % span);
}

IVec Rng::vec(int n, long lo, long hi) {
  IVec v(n);
  for (int i = 0; i < n; ++i) v[i] = Int(uniform(lo, hi));
  return v;
}

}  // namespace trop
