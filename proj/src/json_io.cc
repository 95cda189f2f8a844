#include "trop/json_io.h"

#include <fstream>

namespace trop {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int small_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<int>();
}

IVec ivec_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of integers");
  IVec v;
  for (const Json& x : j) v.push_back(int_from_json(x));
  return v;
}

QVec qvec_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals");
  QVec v;
  for (const Json& x : j) v.push_back(rat_from_json(x));
  return v;
}

Json ivec_to_json(const IVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

Json qvec_to_json(const QVec& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(rat_to_json(x));
  return a;
}

IMat imat_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of integer vectors");
  IMat m;
  for (const Json& r : j) m.push_back(ivec_from_json(r));
  return m;
}

Json imat_to_json(const IMat& m) {
  Json a = Json::array();
  for (const IVec& r : m) a.push_back(ivec_to_json(r));
  return a;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("invalid JSON in " + path + ": " + e.what());
  }
}

Json int_to_json(const Int& v) { return to_string(v); }

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw SchemaError("not an integer: \"" + j.get<std::string>() + "\"");
    }
  }
  throw SchemaError("expected an integer (number or decimal string)");
}

Json rat_to_json(const Rat& v) { return to_string(v); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    Rat r;
    try {
      r = Rat(j.get<std::string>());
    } catch (const std::exception&) {
      throw SchemaError("not a rational: \"" + j.get<std::string>() + "\"");
    }
    if (r.get_den() == 0) throw SchemaError("zero denominator");
    r.canonicalize();
    return r;
  }
  throw SchemaError("expected a rational (number or \"p/q\" string)");
}

Json poly_to_json(const Poly& p) {
  Json j = Json::object();
  j["dim"] = p.n;
  if (p.empty) {
    j["empty"] = true;
    return j;
  }
  Json vs = Json::array();
  for (const QVec& v : p.verts) vs.push_back(qvec_to_json(v));
  j["vertices"] = vs;
  j["recession"] = imat_to_json(p.rays);
  return j;
}

Poly poly_from_json(const Json& j) {
  int n = small_int(field(j, "dim"), "dim");
  if (n < 0) throw SchemaError("negative dimension");
  if (j.contains("empty") && j.at("empty").is_boolean() && j.at("empty").get<bool>()) {
    Poly p;
    p.n = n;
    p.empty = true;
    return p;
  }
  const Json& vj = field(j, "vertices");
  if (!vj.is_array() || vj.empty()) throw SchemaError("vertices must be a nonempty array");
  QMat verts;
  for (const Json& v : vj) {
    QVec q = qvec_from_json(v);
    if (static_cast<int>(q.size()) != n) throw SchemaError("vertex length differs from dim");
    verts.push_back(q);
  }
  IMat rays;
  if (j.contains("recession")) {
    rays = imat_from_json(j.at("recession"));
    for (const IVec& r : rays)
      if (static_cast<int>(r.size()) != n) throw SchemaError("ray length differs from dim");
  } else {
    for (int i = 0; i < n; ++i) {
      IVec e(n, Int(0));
      e[i] = 1;
      rays.push_back(e);
    }
  }
  return poly_from_v(n, verts, rays);
}

Json cone_to_json(const Cone& c) {
  Json j = Json::object();
  if (!c.rays.empty()) j["rays"] = imat_to_json(c.rays);
  if (!c.lin.empty()) j["lin"] = imat_to_json(c.lin);
  return j;
}

Cone cone_from_json(const Json& j, int n) {
  if (!j.is_object()) throw SchemaError("cone must be an object");
  IMat rays, lin;
  if (j.contains("rays")) rays = imat_from_json(j.at("rays"));
  if (j.contains("lin")) lin = imat_from_json(j.at("lin"));
  for (const IVec& r : rays)
    if (static_cast<int>(r.size()) != n) throw SchemaError("cone ray length differs from dim");
  for (const IVec& r : lin)
    if (static_cast<int>(r.size()) != n) throw SchemaError("cone line length differs from dim");
  return cone_from_v(n, rays, lin);
}

Json fan_to_json(const Fan& f) {
  Json j = Json::object();
  j["dim"] = f.n;
  j["k"] = f.k;
  j["ambient"] = cone_to_json(f.amb);
  Json cs = Json::array();
  for (const Cell& c : f.cells) {
    Json cj = Json::object();
    cj["gens"] = imat_to_json(c.cone.rays);
    if (!c.cone.lin.empty()) cj["lin"] = imat_to_json(c.cone.lin);
    cj["weight"] = rat_to_json(c.weight);
    cs.push_back(cj);
  }
  j["cells"] = cs;
  return j;
}

Fan fan_from_json(const Json& j) {
  int n = small_int(field(j, "dim"), "dim");
  int k = small_int(field(j, "k"), "k");
  if (n < 0 || k < 0 || k > n) throw SchemaError("fan grading out of range");
  Cone amb = cone_from_json(field(j, "ambient"), n);
  const Json& cj = field(j, "cells");
  if (!cj.is_array()) throw SchemaError("cells must be an array");
  std::vector<Cell> cells;
  for (const Json& c : cj) {
    if (!c.is_object()) throw SchemaError("cell must be an object");
    IMat gens = c.contains("gens") ? imat_from_json(c.at("gens")) : IMat{};
    IMat lin = c.contains("lin") ? imat_from_json(c.at("lin")) : IMat{};
    for (const IVec& r : gens)
      if (static_cast<int>(r.size()) != n) throw SchemaError("cell ray length differs from dim");
    for (const IVec& r : lin)
      if (static_cast<int>(r.size()) != n) throw SchemaError("cell line length differs from dim");
    cells.push_back(Cell{cone_from_v(n, gens, lin), rat_from_json(field(c, "weight"))});
  }
  return make_fan(n, k, amb, cells);
}

Json relpoly_to_json(const RelPoly& rp) {
  Json j = Json::object();
  j["A"] = poly_to_json(rp.A);
  j["B"] = poly_to_json(rp.B);
  return j;
}

RelPoly relpoly_from_json(const Json& j) {
  Poly a = poly_from_json(field(j, "A"));
  Poly b = poly_from_json(field(j, "B"));
  return make_relative(a, b);
}

Json resolution_to_json(const ResolutionData& rd) {
  Json j = Json::object();
  j["dim"] = rd.n;
  Json fans = Json::array();
  for (const Cone& c : rd.fan) fans.push_back(cone_to_json(c));
  j["fan"] = fans;
  Json rows = Json::array();
  for (const StratumRow& r : rd.strata) {
    Json rj = Json::object();
    rj["M"] = int_to_json(r.M);
    rj["H"] = r.H;
    rj["E"] = r.E;
    rj["euler"] = int_to_json(r.euler);
    rows.push_back(rj);
  }
  j["strata"] = rows;
  j["compact"] = rd.compact;
  return j;
}

ResolutionData resolution_from_json(const Json& j) {
  ResolutionData rd;
  rd.n = small_int(field(j, "dim"), "dim");
  const Json& fj = field(j, "fan");
  if (!fj.is_array()) throw SchemaError("fan must be an array of cones");
  for (const Json& c : fj) rd.fan.push_back(cone_from_json(c, rd.n));
  const Json& sj = field(j, "strata");
  if (!sj.is_array()) throw SchemaError("strata must be an array");
  for (const Json& r : sj) {
    StratumRow row;
    row.M = int_from_json(field(r, "M"));
    row.H = small_int(field(r, "H"), "H");
    row.E = small_int(field(r, "E"), "E");
    row.euler = int_from_json(field(r, "euler"));
    rd.strata.push_back(row);
  }
  const Json& kj = field(j, "compact");
  if (!kj.is_array()) throw SchemaError("compact must be an array of indices");
  for (const Json& c : kj) rd.compact.push_back(small_int(c, "compact index"));
  validate_resolution(rd);
  return rd;
}

Json zeta_to_json(const ZetaFactors& z) {
  Json j = Json::object();
  Json f = Json::object();
  for (const auto& [M, e] : z.e) f[to_string(M)] = int_to_json(e);
  j["factors"] = f;
  j["display"] = zeta_to_string(z);
  return j;
}

}  // namespace trop
