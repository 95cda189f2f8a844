#pragma once
// Exact arithmetic base types and small helpers shared by the whole library.

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trop {

using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

// error taxonomy mirrored by CLI exit codes
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw PreconditionError(msg);
}
inline void invariant(bool ok, const std::string& msg) {
  if (!ok) throw InvariantError(msg);
}

inline QVec to_q(const IVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// lcm of denominators, >= 1
inline Int common_den(const QVec& v) {
  Int d = 1;
  for (const Rat& x : v) d = lcm(d, x.get_den());
  return d;
}

// v * common_den(v), as integers
inline IVec clear_den(const QVec& v, Int* den_out = nullptr) {
  Int d = common_den(v);
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * d;
    r[i] = s.get_num();
  }
  if (den_out) *den_out = d;
  return r;
}

inline Int dot(const IVec& a, const IVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline Rat dotq(const IVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}
inline Rat dotqq(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IVec& v) {
  for (const Int& x : v) if (x != 0) return false;
  return true;
}
inline bool is_zeroq(const QVec& v) {
  for (const Rat& x : v) if (x != 0) return false;
  return true;
}

inline IVec ineg(const IVec& v) {
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

inline QVec qadd(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline QVec qsub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline QVec qscale(const Rat& c, const QVec& a) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// strict lexicographic compare
inline int lex_cmp(const IVec& a, const IVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}
inline int lex_cmpq(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

struct IVecLess {
  bool operator()(const IVec& a, const IVec& b) const { return lex_cmp(a, b) < 0; }
};
struct QVecLess {
  bool operator()(const QVec& a, const QVec& b) const { return lex_cmpq(a, b) < 0; }
};

std::string to_string(const Int& x);
std::string to_string(const Rat& x);

}  // namespace trop
