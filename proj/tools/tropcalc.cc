// tropcalc: command line front end for the library.
//
// Every subcommand reads JSON files, computes exactly, and prints a JSON
// document on stdout (or a short table with --human).  Exit codes: 0 on
// success, 2 for malformed input, 3 for violated preconditions, 4 when an
// internal invariant is breached.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trop/json_io.h"
#include "trop/linalg.h"
#include "trop/monodromy.h"
#include "trop/relative.h"
#include "trop/resolution.h"

using namespace trop;

namespace {

// --------------------------------------------------------------- helpers

// comma separated 1-based coordinate list -> sorted 0-based index set
std::vector<int> parse_index_set(const std::string& s, int n) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      throw SchemaError("--I expects a comma separated list of integers");
    }
    if (pos != tok.size())
      throw SchemaError("--I expects a comma separated list of integers");
    require(v >= 1 && v <= n, "coordinate index out of range 1.." +
                                  std::to_string(n) + ": " + tok);
    out.push_back(static_cast<int>(v) - 1);
  }
  std::sort(out.begin(), out.end());
  for (size_t i = 0; i + 1 < out.size(); ++i)
    require(out[i] != out[i + 1], "repeated coordinate index");
  return out;
}

QVec parse_point(const std::string& s) {
  QVec out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(rat_from_json(Json(tok)));
  return out;
}

Json index_set_to_json(const std::vector<int>& I) {
  Json a = Json::array();
  for (int i : I) a.push_back(i + 1);  // external indices are 1-based
  return a;
}

Json ivec_to_json(const IVec& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

std::string rat_str(const Rat& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string vec_str(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string vec_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_str(v[i]);
  return s + ")";
}

std::string set_str(const std::vector<int>& I) {
  std::string s = "{";
  for (size_t i = 0; i < I.size(); ++i)
    s += (i ? "," : "") + std::to_string(I[i] + 1);
  return s + "}";
}

void print_poly_human(const Poly& p) {
  if (p.verts.empty()) {
    std::cout << "empty polyhedron in Q^" << p.n << "\n";
    return;
  }
  std::cout << "polyhedron in Q^" << p.n << ", dim " << p.dim << "\n";
  std::cout << "  vertices:";
  for (const QVec& v : p.verts) std::cout << " " << vec_str(v);
  std::cout << "\n";
  if (!p.rays.empty()) {
    std::cout << "  rays:";
    for (const IVec& r : p.rays) std::cout << " " << vec_str(r);
    std::cout << "\n";
  }
}

void print_fan_human(const Fan& f) {
  std::cout << "fan in Q^" << f.n << ", cells of dim " << f.k << ", "
            << f.cells.size() << (f.cells.size() == 1 ? " cell" : " cells")
            << "\n";
  for (const Cell& c : f.cells) {
    std::cout << "  weight " << rat_str(c.weight) << ", rays";
    for (const IVec& r : c.cone.rays) std::cout << " " << vec_str(r);
    for (const IVec& l : c.cone.lin) {
      std::cout << " +/-" << vec_str(l);
    }
    std::cout << "\n";
  }
}

bool is_germ(const Poly& p) {
  if (p.verts.empty() || !is_lattice_poly(p)) return false;
  Cone rec = recession_cone(p);
  Cone orth = orthant(p.n);
  return cone_subset(rec, orth) && cone_subset(orth, rec);
}

// ambient-degree mixed volume by inclusion-exclusion over Minkowski sums;
// summands of lower dimension contribute zero at the top degree
Rat mixed_volume(const std::vector<Poly>& ps) {
  require(!ps.empty(), "mixed volume needs at least one polytope");
  int n = ps[0].n;
  require(static_cast<int>(ps.size()) == n,
          "mixed volume needs exactly one polytope per dimension");
  for (const Poly& p : ps) {
    require(p.n == n, "mixed volume inputs live in different spaces");
    require(!p.verts.empty() && is_bounded(p),
            "mixed volume inputs must be nonempty polytopes");
  }
  Rat total = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    Poly s;
    int bits = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      s = bits ? minkowski_sum(s, ps[i]) : ps[i];
      ++bits;
    }
    if (s.dim != n) continue;
    Rat v = lattice_volume(s);
    total += ((n - bits) % 2 == 0) ? v : -v;
  }
  Rat fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return total / fact;
}

std::vector<Int> divisors_at_least_two(const std::set<Int>& ms) {
  std::set<Int> out;
  for (const Int& m : ms)
    for (Int d = 2; d <= m; ++d)
      if (m % d == 0) out.insert(d);
  return {out.begin(), out.end()};
}

void emit(const Json& j, bool human) {
  if (!human) std::cout << j.dump(2) << "\n";
}

// ------------------------------------------------------------- commands

int cmd_info(const std::string& input, bool human) {
  Json j = load_json_file(input);
  Json out;
  if (j.contains("strata")) {
    ResolutionData rd = resolution_from_json(j);
    out["type"] = "resolution";
    out["ambient_dim"] = rd.n;
    out["cones"] = rd.fan.size();
    out["strata"] = rd.strata.size();
    Json comp = Json::array();
    for (int c : rd.compact) comp.push_back(c);
    out["compact"] = comp;
    if (human)
      std::cout << "resolution data in Q^" << rd.n << ": " << rd.fan.size()
                << " cones, " << rd.strata.size() << " strata, "
                << rd.compact.size() << " compact orbit closures\n";
  } else if (j.contains("A")) {
    RelPoly rp = relpoly_from_json(j);
    out["type"] = "relative";
    out["ambient_dim"] = rp.A.n;
    out["volume"] = rat_to_json(relative_volume(rp));
    if (human)
      std::cout << "relative pair in Q^" << rp.A.n << ", volume "
                << rat_str(relative_volume(rp)) << "\n";
  } else if (j.contains("cells")) {
    Fan f = fan_from_json(j);
    out["type"] = "fan";
    out["ambient_dim"] = f.n;
    out["cell_dim"] = f.k;
    out["cells"] = f.cells.size();
    out["balanced"] = is_balanced(f);
    if (human) print_fan_human(f);
  } else {
    Poly p = poly_from_json(j);
    out["type"] = "polyhedron";
    out["ambient_dim"] = p.n;
    out["dim"] = p.verts.empty() ? -1 : p.dim;
    out["vertices"] = p.verts.size();
    out["rays"] = p.rays.size();
    out["bounded"] = !p.verts.empty() && is_bounded(p);
    out["lattice"] = !p.verts.empty() && is_lattice_poly(p);
    out["germ"] = is_germ(p);
    if (human) print_poly_human(p);
  }
  emit(out, human);
  return 0;
}

int cmd_volume(const std::string& input, bool human) {
  Json j = load_json_file(input);
  Json out;
  Rat v;
  if (j.contains("A")) {
    v = relative_volume(relpoly_from_json(j));
    out["relative_volume"] = rat_to_json(v);
  } else {
    Poly p = poly_from_json(j);
    require(!p.verts.empty() && is_bounded(p),
            "lattice volume needs a nonempty bounded polytope");
    v = lattice_volume(p);
    out["volume"] = rat_to_json(v);
  }
  if (human) std::cout << rat_str(v) << "\n";
  emit(out, human);
  return 0;
}

int cmd_vfaces(const std::string& input, bool human) {
  Poly p = poly_from_json(load_json_file(input));
  std::vector<VFace> vfs = v_faces(p);
  Json rows = Json::array();
  for (const VFace& vf : vfs) {
    Json r;
    r["dim"] = vf.face.dim;
    r["bounded"] = vf.face.bounded;
    r["m"] = int_to_json(vf.m);
    r["J"] = index_set_to_json(vf.J);
    r["I"] = index_set_to_json(vf.I);
    Json verts = Json::array();
    for (int vi : vf.face.vset) {
      Json c = Json::array();
      for (const Rat& x : p.verts[vi]) c.push_back(rat_to_json(x));
      verts.push_back(c);
    }
    r["vertices"] = verts;
    Json rays = Json::array();
    for (int ri : vf.face.rset) rays.push_back(ivec_to_json(p.rays[ri]));
    r["rays"] = rays;
    rows.push_back(r);
    if (human) {
      std::cout << "dim " << vf.face.dim
                << (vf.face.bounded ? " bounded" : " unbounded")
                << "  m=" << vf.m.get_str() << "  J=" << set_str(vf.J)
                << "  I=" << set_str(vf.I) << "  vertices";
      for (int vi : vf.face.vset) std::cout << " " << vec_str(p.verts[vi]);
      std::cout << "\n";
    }
  }
  Json out;
  out["count"] = vfs.size();
  out["vfaces"] = rows;
  emit(out, human);
  return 0;
}

int cmd_fiber(const std::string& input, const std::string& iset,
              const std::string& at, bool human) {
  Poly p = poly_from_json(load_json_file(input));
  std::vector<int> I = parse_index_set(iset, p.n);
  QVec b = parse_point(at);
  require(static_cast<int>(b.size() + I.size()) == p.n,
          "--at needs one coordinate per projected-away direction");
  Poly f = fiber(p, I, b);
  if (human) print_poly_human(f);
  emit(poly_to_json(f), human);
  return 0;
}

int cmd_fiberpoly(const std::string& input, const std::string& iset,
                  bool human) {
  Poly p = poly_from_json(load_json_file(input));
  std::vector<int> I = parse_index_set(iset, p.n);
  Poly base = project(p, I);
  require(!base.verts.empty() && is_bounded(base),
          "fiber polytope needs a bounded projection");
  Poly f = fiber_polyhedron(p, I, base);
  if (human) print_poly_human(f);
  emit(poly_to_json(f), human);
  return 0;
}

int cmd_dualfan(const std::string& input, int k, bool human) {
  Poly p = poly_from_json(load_json_file(input));
  Fan f = dual_fan(p, k);
  if (human) print_fan_human(f);
  emit(fan_to_json(f), human);
  return 0;
}

int cmd_intersect(const std::vector<std::string>& inputs, long seed,
                  int verify, bool human) {
  require(inputs.size() == 2, "intersect needs exactly two fans");
  Fan a = fan_from_json(load_json_file(inputs[0]));
  Fan b = fan_from_json(load_json_file(inputs[1]));
  Rng rng(static_cast<uint64_t>(seed));
  Fan f = stable_intersect(a, b, rng, verify);
  Json out;
  out["fan"] = fan_to_json(f);
  if (f.k == 0) {
    Rat total = 0;
    for (const Cell& c : f.cells) total += c.weight;
    out["total_weight"] = rat_to_json(total);
  }
  if (human) print_fan_human(f);
  emit(out, human);
  return 0;
}

int cmd_mixedvol(const std::vector<std::string>& inputs, bool human) {
  std::vector<Poly> ps;
  for (const std::string& path : inputs)
    ps.push_back(poly_from_json(load_json_file(path)));
  Rat v = mixed_volume(ps);
  Json out;
  out["mixed_volume"] = rat_to_json(v);
  if (human) std::cout << rat_str(v) << "\n";
  emit(out, human);
  return 0;
}

int cmd_relmv(const std::vector<std::string>& inputs, bool human) {
  std::vector<RelPoly> rps;
  for (const std::string& path : inputs)
    rps.push_back(relpoly_from_json(load_json_file(path)));
  Rat v = relative_mixed_volume(rps);
  Json out;
  out["relative_mixed_volume"] = rat_to_json(v);
  if (human) std::cout << rat_str(v) << "\n";
  emit(out, human);
  return 0;
}

int cmd_relkbk(const std::vector<std::string>& inputs, int n, bool human) {
  std::vector<RelPoly> rps;
  for (const std::string& path : inputs)
    rps.push_back(relpoly_from_json(load_json_file(path)));
  Int e = relkbk_euler(rps, n);
  Json out;
  out["euler"] = int_to_json(e);
  if (human) std::cout << e.get_str() << "\n";
  emit(out, human);
  return 0;
}

int cmd_zeta(const std::string& input, const std::string& iset, bool human) {
  Poly p = poly_from_json(load_json_file(input));
  std::vector<int> I = parse_index_set(iset, p.n);
  ZetaFactors z = zeta_factors(p, I);
  Json out;
  out["I"] = index_set_to_json(I);
  out["zeta"] = zeta_to_json(z);
  if (human) std::cout << zeta_to_string(z) << "\n";
  emit(out, human);
  return 0;
}

Json witness_to_json(const TneWitness& w) {
  Json out;
  out["point"] = ivec_to_json(w.a);
  out["edge"] = poly_to_json(w.B);
  return out;
}

int cmd_tne(const std::string& input, int jobs, bool experimental,
            bool human) {
  Poly p = poly_from_json(load_json_file(input));
  std::vector<TneReport> rows = tne_report(p, jobs);
  Json out;
  Json taut = Json::array();
  for (const Int& m : tautological_denominators(p))
    taut.push_back(int_to_json(m));
  out["ambient_dim"] = p.n;
  out["tautological"] = taut;
  Json jrows = Json::array();
  for (const TneReport& r : rows) {
    Json jr;
    jr["I"] = index_set_to_json(r.query.I);
    jr["m"] = int_to_json(r.query.m);
    jr["codim0"] = r.codim0;
    jr["codim1"] = r.codim1;
    jr["zeta"] = zeta_to_json(r.zeta);
    if (r.witness) jr["witness"] = witness_to_json(*r.witness);
    if (r.case_tag) jr["case"] = germ_case_name(*r.case_tag);
    if (experimental && !r.query.I.empty())
      jr["class"] = fan_to_json(codim1_class(p, r.query.I, r.query.m));
    jrows.push_back(jr);
    if (human) {
      std::cout << "I=" << set_str(r.query.I) << "  m=" << r.query.m.get_str()
                << "  zeta=" << zeta_to_string(r.zeta)
                << "  codim0=" << (r.codim0 ? "yes" : "no")
                << "  codim1=" << (r.codim1 ? "yes" : "no");
      if (r.witness) std::cout << "  witness=" << vec_str(r.witness->a);
      if (r.case_tag) std::cout << "  case=" << germ_case_name(*r.case_tag);
      std::cout << "\n";
    }
  }
  out["rows"] = jrows;
  emit(out, human);
  return 0;
}

int cmd_classify(const std::string& input, const std::string& iset, long m,
                 long k, bool allow_taut, bool human) {
  Poly p = poly_from_json(load_json_file(input));
  TneQuery q;
  q.N = p;
  q.I = parse_index_set(iset, p.n);
  q.m = Int(m);
  q.k = Int(k);
  q.allow_tautological = allow_taut;
  GermCase c = classify_germ(q);
  bool c0 = tne_codim0(q);
  auto [c1, wit] = tne_codim1(q);
  Json out;
  out["I"] = index_set_to_json(q.I);
  out["m"] = int_to_json(q.m);
  out["k"] = int_to_json(q.k);
  out["case"] = germ_case_name(c);
  out["codim0"] = c0;
  out["codim1"] = c1;
  if (wit) out["witness"] = witness_to_json(*wit);
  if (human) std::cout << germ_case_name(c) << "\n";
  emit(out, human);
  return 0;
}

int cmd_resolution_tne(const std::string& input, const std::string& iset,
                       long m, bool experimental, bool human) {
  ResolutionData rd = resolution_from_json(load_json_file(input));
  std::vector<int> I = parse_index_set(iset, rd.n);
  ZetaFactors z = acampo_zeta(rd, I);
  std::vector<Int> ms;
  if (m > 0) {
    ms.push_back(Int(m));
  } else {
    std::set<Int> present;
    for (const StratumRow& row : rd.strata) present.insert(row.M);
    ms = divisors_at_least_two(present);
  }
  Json out;
  out["I"] = index_set_to_json(I);
  out["zeta"] = zeta_to_json(z);
  Json rows = Json::array();
  if (human) std::cout << "zeta: " << zeta_to_string(z) << "\n";
  for (const Int& mm : ms) {
    std::vector<Fan> phi = phi_from_resolution(rd, I, mm);
    Json r;
    r["m"] = int_to_json(mm);
    r["codim0"] = !fan_is_zero(phi[0]);
    if (experimental) {
      Json cls = Json::array();
      for (const Fan& f : phi) cls.push_back(fan_to_json(f));
      r["classes"] = cls;
    }
    rows.push_back(r);
    if (human)
      std::cout << "m=" << mm.get_str()
                << "  codim0=" << (fan_is_zero(phi[0]) ? "no" : "yes") << "\n";
  }
  out["rows"] = rows;
  emit(out, human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact lattice polyhedra, tropical fans, and nearby monodromy "
               "eigenvalues of Newton polyhedra"};
  app.require_subcommand(1);

  std::string input, iset, at;
  std::vector<std::string> inputs;
  long m = 0, k_num = 1;
  long seed = 0;
  int verify = 0, jobs = 1, grade = 1, ndim = 0;
  bool human = false, allow_taut = false, experimental = false;

  auto common = [&](CLI::App* c, bool with_input) {
    if (with_input)
      c->add_option("--input", input, "input JSON file")->required();
    c->add_flag("--human", human, "print a table instead of JSON");
    return c;
  };

  auto* c_info = common(app.add_subcommand(
      "info", "summarize a polyhedron, fan, pair, or resolution file"), true);
  (void)c_info;

  common(app.add_subcommand(
      "volume", "lattice volume of a polytope or a relative pair"), true);

  common(app.add_subcommand(
      "vfaces", "faces of a germ visible from the coordinate planes"), true);

  auto* c_fiber = common(app.add_subcommand(
      "fiber", "slice a polyhedron at fixed values of some coordinates"),
      true);
  c_fiber->add_option("--I", iset, "kept coordinates, 1-based, comma separated");
  c_fiber->add_option("--at", at, "values of the remaining coordinates")
      ->required();

  auto* c_fpoly = common(app.add_subcommand(
      "fiberpoly", "Minkowski integral of the fibers over the projection"),
      true);
  c_fpoly->add_option("--I", iset, "kept coordinates, 1-based, comma separated")
      ->required();

  auto* c_dual = common(app.add_subcommand(
      "dualfan", "weighted dual fan of a lattice polyhedron"), true);
  c_dual->add_option("--k", grade, "codimension grade (default 1)");

  auto* c_int = app.add_subcommand("intersect", "stable intersection of two fans");
  c_int->add_option("--inputs", inputs, "two fan JSON files")
      ->required()->expected(2);
  c_int->add_option("--seed", seed, "displacement seed (default 0)");
  c_int->add_option("--verify-displacements", verify,
                    "extra displacement draws that must agree");
  c_int->add_flag("--human", human, "print a table instead of JSON");

  auto* c_mv = app.add_subcommand("mixedvol", "mixed volume of n polytopes in Q^n");
  c_mv->add_option("--inputs", inputs, "polytope JSON files")->required();
  c_mv->add_flag("--human", human, "print a table instead of JSON");

  auto* c_rmv = app.add_subcommand("relmv", "relative mixed volume of n pairs");
  c_rmv->add_option("--inputs", inputs, "pair JSON files")->required();
  c_rmv->add_flag("--human", human, "print a table instead of JSON");

  auto* c_rkbk = app.add_subcommand(
      "relkbk", "Euler characteristic bound via relative mixed volumes");
  c_rkbk->add_option("--inputs", inputs, "pair JSON files")->required();
  c_rkbk->add_option("--n", ndim, "ambient dimension")->required();
  c_rkbk->add_flag("--human", human, "print a table instead of JSON");

  auto* c_zeta = common(app.add_subcommand(
      "zeta", "zeta factors of a germ along a coordinate subset"), true);
  c_zeta->add_option("--I", iset, "deleted coordinates, 1-based");

  auto* c_tne = common(app.add_subcommand(
      "tne", "full eigenvalue report over all coordinate subsets"), true);
  c_tne->add_option("--jobs", jobs, "worker threads (default 1)");
  c_tne->add_flag("--experimental-class", experimental,
                  "emit the codimension-1 class fan per row");

  auto* c_cls = common(app.add_subcommand(
      "classify", "classify one (I, m) query of a germ"), true);
  c_cls->add_option("--I", iset, "deleted coordinates, 1-based");
  c_cls->add_option("--m", m, "candidate order")->required();
  c_cls->add_option("--k", k_num, "numerator coprime to m (default 1)");
  c_cls->add_flag("--allow-tautological", allow_taut,
                  "permit orders carried by a monomial factor");

  auto* c_res = common(app.add_subcommand(
      "resolution-tne", "eigenvalue report from a resolution strata table"),
      true);
  c_res->add_option("--I", iset, "deleted coordinates, 1-based");
  c_res->add_option("--m", m, "single candidate order (default: all divisors)");
  c_res->add_flag("--experimental-class", experimental,
                  "emit all graded class fans per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string cmd = app.get_subcommands().at(0)->get_name();
    if (cmd == "info") return cmd_info(input, human);
    if (cmd == "volume") return cmd_volume(input, human);
    if (cmd == "vfaces") return cmd_vfaces(input, human);
    if (cmd == "fiber") return cmd_fiber(input, iset, at, human);
    if (cmd == "fiberpoly") return cmd_fiberpoly(input, iset, human);
    if (cmd == "dualfan") return cmd_dualfan(input, grade, human);
    if (cmd == "intersect") return cmd_intersect(inputs, seed, verify, human);
    if (cmd == "mixedvol") return cmd_mixedvol(inputs, human);
    if (cmd == "relmv") return cmd_relmv(inputs, human);
    if (cmd == "relkbk") return cmd_relkbk(inputs, ndim, human);
    if (cmd == "zeta") return cmd_zeta(input, iset, human);
    if (cmd == "tne") return cmd_tne(input, jobs, experimental, human);
    if (cmd == "classify")
      return cmd_classify(input, iset, m, k_num, allow_taut, human);
    if (cmd == "resolution-tne")
      return cmd_resolution_tne(input, iset, m, experimental, human);
    throw InvariantError("unhandled subcommand " + cmd);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant breached: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
