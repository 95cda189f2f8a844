// End-to-end tests of the tropcalc binary: contract examples, exit codes,
// determinism, and round-tripping of the emitted JSON.  argv[1] is the path
// to the binary under test.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "trop/json_io.h"

using namespace trop;

namespace {

std::string g_bin;
std::filesystem::path g_dir;

// run the binary with the given arguments, return stdout, set the exit code
std::string run(const std::string& args, int& code) {
  std::string cmd = "'" + g_bin + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string run_ok(const std::string& args) {
  int code = -1;
  std::string out = run(args, code);
  CHECK(code == 0);
  return out;
}

int run_code(const std::string& args) {
  int code = -1;
  run(args, code);
  return code;
}

// write a file under the scratch directory, return its quoted path
std::string save(const std::string& name, const std::string& text) {
  std::filesystem::path p = g_dir / name;
  std::ofstream(p) << text;
  return "'" + p.string() + "'";
}

std::string cusp_file, case2_file, tri_file, seg_file, mono_file, bad_file,
    pair1_file, pair2_file, res_file, badres_file;

void write_fixtures() {
  cusp_file = save("cusp.json", R"({"dim": 2, "vertices": [[2, 0], [0, 3]]})");
  case2_file =
      save("case2.json", R"({"dim": 3, "vertices": [[0, 2, 0], [0, 0, 2]]})");
  tri_file = save(
      "T.json",
      R"({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "recession": []})");
  seg_file = save(
      "S.json", R"({"dim": 2, "vertices": [[0, 0], [1, 1]], "recession": []})");
  mono_file = save("mono.json", R"({"dim": 2, "vertices": [[1, 2]]})");
  bad_file = save("bad.json", R"({"dim": 2, "vertices": [[2 BROKEN)");
  pair1_file = save(
      "pair1.json",
      R"({"A": {"dim": 2, "vertices": [[0, 0], [1, 0]], "recession": [[0, 1]]},
          "B": {"dim": 2, "vertices": [[0, 2], [1, 3]], "recession": [[0, 1]]}})");
  pair2_file = save(
      "pair2.json",
      R"({"A": {"dim": 2, "vertices": [[0, 0], [1, 0]], "recession": [[0, 1]]},
          "B": {"dim": 2, "vertices": [[0, 1], [1, 4]], "recession": [[0, 1]]}})");
  // a resolution table matching the case2 germ (one exceptional multiplicity)
  res_file = save("res.json", R"({
    "dim": 3,
    "fan": [
      {"rays": []},
      {"rays": [[-1, 0, 0]]},
      {"rays": [[0, -1, 0]]},
      {"rays": [[0, 0, -1]]},
      {"rays": [[0, -1, -1]]},
      {"rays": [[-1, 0, 0], [0, -1, 0]]},
      {"rays": [[-1, 0, 0], [0, 0, -1]]},
      {"rays": [[-1, 0, 0], [0, -1, -1]]},
      {"rays": [[0, -1, 0], [0, -1, -1]]},
      {"rays": [[0, 0, -1], [0, -1, -1]]},
      {"rays": [[-1, 0, 0], [0, 0, -1], [0, -1, -1]]},
      {"rays": [[-1, 0, 0], [0, -1, 0], [0, -1, -1]]}
    ],
    "compact": [7, 10, 11],
    "strata": [
      {"M": 2, "H": 7, "E": 7, "euler": -2},
      {"M": 2, "H": 7, "E": 10, "euler": 1},
      {"M": 2, "H": 7, "E": 11, "euler": 1},
      {"M": 2, "H": 10, "E": 10, "euler": 1},
      {"M": 2, "H": 11, "E": 11, "euler": 1},
      {"M": 2, "H": 4, "E": 4, "euler": 0},
      {"M": 2, "H": 4, "E": 7, "euler": -2},
      {"M": 2, "H": 4, "E": 10, "euler": 1},
      {"M": 2, "H": 4, "E": 11, "euler": 1},
      {"M": 2, "H": 8, "E": 8, "euler": 0},
      {"M": 2, "H": 8, "E": 11, "euler": 1},
      {"M": 2, "H": 9, "E": 9, "euler": 0},
      {"M": 2, "H": 9, "E": 10, "euler": 1}
    ]})");
  // its codimension-0 class at the full index set is a single quadrant that
  // is not the negative orthant, so reading off the zeta function must fail
  badres_file = save("badres.json", R"({
    "dim": 2,
    "fan": [
      {"rays": []},
      {"rays": [[-1, 0]]},
      {"rays": [[0, -1]]},
      {"rays": [[-1, -1]]},
      {"rays": [[-1, 0], [-1, -1]]},
      {"rays": [[-1, -1], [0, -1]]}
    ],
    "compact": [3, 4, 5],
    "strata": [
      {"M": 2, "H": 0, "E": 0, "euler": 1},
      {"M": 2, "H": 0, "E": 4, "euler": 1}
    ]})");
}

}  // namespace

TEST_CASE("the cusp report matches the contract") {
  Json out = Json::parse(run_ok("tne --input " + cusp_file));
  Json want = Json::object({{"2", "1"}, {"3", "1"}, {"6", "-1"}});
  REQUIRE(out["rows"].size() == 3);
  for (const Json& row : out["rows"]) {
    CHECK(row["I"].empty());
    CHECK(row["zeta"]["factors"] == want);
    CHECK(row["codim1"] == false);
    CHECK(!row.contains("witness"));
  }
  CHECK(out["rows"][0]["m"] == "2");
  CHECK(out["rows"][0]["codim0"] == false);
  CHECK(out["rows"][0]["case"] == "CASE3");
  CHECK(out["rows"][1]["m"] == "3");
  CHECK(out["rows"][1]["case"] == "CASE3");
  CHECK(out["rows"][2]["m"] == "6");
  CHECK(out["rows"][2]["codim0"] == true);
  CHECK(out["rows"][2]["case"] == "TNE");
}

TEST_CASE("mixed volume of the triangle and the diagonal segment") {
  Json out = Json::parse(
      run_ok("mixedvol --inputs " + tri_file + " " + seg_file));
  CHECK(out["mixed_volume"] == "2");
  CHECK(run_ok("mixedvol --human --inputs " + tri_file + " " + seg_file) ==
        "2\n");
}

TEST_CASE("classification of the case2 germ") {
  Json out = Json::parse(
      run_ok("classify --input " + case2_file + " --I 1 --m 2"));
  CHECK(out["case"] == "CASE2");
  CHECK(out["codim0"] == false);
  CHECK(out["codim1"] == false);
  CHECK(out["I"] == Json::array({1}));
  CHECK(run_ok("classify --input " + case2_file + " --I 1 --m 2 --human") ==
        "CASE2\n");
}

TEST_CASE("exit codes follow the error taxonomy") {
  CHECK(run_code("info --input " + bad_file) == 2);
  CHECK(run_code("info --input '" + (g_dir / "nosuch.json").string() + "'") ==
        2);
  CHECK(run_code("frobnicate --input " + cusp_file) == 2);
  CHECK(run_code("classify --input " + cusp_file) == 2);  // --m missing
  CHECK(run_code("classify --input " + cusp_file + " --I x --m 2") == 2);
  CHECK(run_code("--help") == 0);

  CHECK(run_code("classify --input " + cusp_file + " --m 1") == 3);
  CHECK(run_code("classify --input " + mono_file + " --m 2") == 3);
  CHECK(run_code("classify --input " + mono_file +
                 " --m 2 --allow-tautological") == 0);
  CHECK(run_code("classify --input " + cusp_file + " --I 3 --m 2") == 3);
  CHECK(run_code("volume --input " + cusp_file) == 3);  // unbounded
  CHECK(run_code("fiber --input " + cusp_file + " --I 2 --at 1,1") == 3);
  CHECK(run_code("mixedvol --inputs " + tri_file) == 3);

  CHECK(run_code("resolution-tne --input " + badres_file + " --I 1,2") == 4);
}

TEST_CASE("output is deterministic") {
  std::string a = run_ok("tne --input " + cusp_file);
  std::string b = run_ok("tne --input " + cusp_file);
  std::string c = run_ok("tne --input " + cusp_file + " --jobs 3");
  CHECK(a == b);
  CHECK(a == c);

  std::string dt = save("dualT.json", run_ok("dualfan --input " + tri_file));
  std::string ds = save("dualS.json", run_ok("dualfan --input " + seg_file));
  std::string i0 =
      run_ok("intersect --inputs " + dt + " " + ds + " --seed 0");
  std::string i9 = run_ok("intersect --inputs " + dt + " " + ds +
                          " --seed 9 --verify-displacements 3");
  CHECK(i0 == i9);
  Json out = Json::parse(i0);
  CHECK(out["total_weight"] == "2");
}

TEST_CASE("emitted JSON re-parses to equal values") {
  Json jf = Json::parse(run_ok("dualfan --input " + cusp_file));
  Fan f = fan_from_json(jf);
  CHECK(fan_to_json(f) == jf);

  Json jp = Json::parse(
      run_ok("fiber --input " + cusp_file + " --I 2 --at 1"));
  Poly p = poly_from_json(jp);
  CHECK(poly_to_json(p) == jp);

  Json jq = Json::parse(run_ok("fiberpoly --input " + tri_file + " --I 1"));
  Poly q = poly_from_json(jq);
  CHECK(poly_to_json(q) == jq);
}

TEST_CASE("relative pair commands") {
  Json v = Json::parse(run_ok("volume --input " + pair1_file));
  CHECK(v["relative_volume"] == "5");
  Json mv = Json::parse(
      run_ok("relmv --inputs " + pair1_file + " " + pair2_file));
  CHECK(mv["relative_mixed_volume"] == "4");
  int code = -1;
  Json eu = Json::parse(
      run("relkbk --inputs " + pair1_file + " " + pair2_file + " --n 2",
          code));
  CHECK(code == 0);
  CHECK(eu.contains("euler"));
}

TEST_CASE("resolution report agrees with the polyhedral one") {
  Json res = Json::parse(run_ok("resolution-tne --input " + res_file));
  Json direct = Json::parse(run_ok("zeta --input " + case2_file));
  CHECK(res["zeta"] == direct["zeta"]);
  REQUIRE(res["rows"].size() == 1);
  CHECK(res["rows"][0]["m"] == "2");
  CHECK(res["rows"][0]["codim0"] == false);

  Json res1 =
      Json::parse(run_ok("resolution-tne --input " + res_file + " --I 1"));
  Json direct1 =
      Json::parse(run_ok("zeta --input " + case2_file + " --I 1"));
  CHECK(res1["zeta"] == direct1["zeta"]);
}

TEST_CASE("info detects every input kind") {
  CHECK(Json::parse(run_ok("info --input " + cusp_file))["type"] ==
        "polyhedron");
  CHECK(Json::parse(run_ok("info --input " + cusp_file))["germ"] == true);
  CHECK(Json::parse(run_ok("info --input " + pair1_file))["type"] ==
        "relative");
  CHECK(Json::parse(run_ok("info --input " + res_file))["type"] ==
        "resolution");
  std::string dt = save("dualT2.json", run_ok("dualfan --input " + tri_file));
  CHECK(Json::parse(run_ok("info --input " + dt))["type"] == "fan");
  CHECK(Json::parse(run_ok("info --input " + dt))["balanced"] == true);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-tropcalc>\n");
    return 1;
  }
  g_bin = argv[1];
  char tmpl[] = "/tmp/tropcalc_cli_XXXXXX";
  if (!mkdtemp(tmpl)) return 1;
  g_dir = tmpl;
  write_fixtures();
  doctest::Context ctx(1, argv);
  int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}
