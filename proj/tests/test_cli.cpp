// End-to-end tests for the gowerslab binary. The harness exports
// GOWERSLAB_BIN; every case shells out and inspects exit code and output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("GOWERSLAB_BIN");
  REQUIRE_MESSAGE(b != nullptr, "GOWERSLAB_BIN must point at the CLI binary");
  return b;
}

RunResult run(const std::string& args, bool merge_stderr = false) {
  std::string cmd = bin() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expect_exit = 0) {
  auto r = run(args);
  REQUIRE_MESSAGE(r.exit_code == expect_exit, "command: ", args, " output: ", r.out);
  return json::parse(r.out);
}

std::string strip_runtime(json env) {
  env["meta"].erase("runtime_ms");
  return env.dump();
}

}  // namespace

TEST_CASE("json envelope: command, params, result, meta") {
  auto env = run_json("primes gamma --pmax 100000");
  CHECK(env["command"] == "primes gamma");
  CHECK(env["params"]["pmax"] == 100000);
  CHECK(env["result"]["value"].get<double>() == doctest::Approx(0.51890010566440164).epsilon(1e-12));
  CHECK(env["result"]["tail_bound"].get<double>() > 0.0);
  CHECK(env["result"]["tail_bound"].get<double>() < 1e-4);
  CHECK(env["meta"]["version"].is_string());
  CHECK(env["meta"]["seed"] == 0);
  CHECK(env["meta"]["precision"] == "float");
  CHECK(env["meta"].contains("runtime_ms"));
}

TEST_CASE("bracket verify passes exactly over ten thousand random pairs") {
  auto env = run_json("bracket verify --case key --n-max 10000");
  CHECK(env["result"]["pass"] == true);
  CHECK(env["result"]["checked"] == 10000);
  CHECK(env["result"]["worst_residual"] == 0.0);

  auto lemma = run_json("bracket verify --case iv --n-max 500 --seed 7");
  CHECK(lemma["result"]["pass"] == true);
  CHECK(lemma["result"]["checked"] == 500);

  auto tri = run_json("bracket verify --case trilinear --n-max 60 --seed 3");
  CHECK(tri["result"]["pass"] == true);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("gowers norm --k 7 --domain cyclic --len 32 --phase 0,0.5", true).exit_code == 2);
  CHECK(run("--definitely-not-a-flag", true).exit_code == 2);
  CHECK(run("frobnicate", true).exit_code == 2);
  CHECK(run("gowers norm --domain cyclic --k 2", true).exit_code == 2);  // no input source
  CHECK(run("primes gamma", true).exit_code == 2);                       // missing --pmax
  CHECK(run("primes gamma --pmax 3", true).exit_code == 2);              // below first factor
  CHECK(run("verify l1 --params 'not json'", true).exit_code == 2);
}

TEST_CASE("gowers norm: characters and quadratic phases") {
  auto u2 = run_json("gowers norm --domain cyclic --k 2 --len 64 --phase poly:0,1/4 --precision rational");
  CHECK(u2["result"]["norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u2["result"]["domain"] == "Z_64");
  CHECK(u2["meta"]["precision"] == "rational");

  auto u3 = run_json("gowers norm --domain interval --k 3 --len 64 --phase 0,0.1,0.31830988618367");
  CHECK(u3["result"]["norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(u3["result"]["k"] == 3);
}

TEST_CASE("gowers quadruples reproduces the full-family count") {
  auto env = run_json(
      "gowers quadruples --params "
      "'{\"N\":64,\"H\":64,\"alpha\":0.2951,\"beta\":0.117}'");
  CHECK(env["result"]["count"] == 174784);
  CHECK(env["result"]["additive_quadruples"] == 174784);
  CHECK(env["result"]["eta"] == 1.0);
  CHECK(env["result"]["c"] == 0.01);
  CHECK(env["result"]["nprime"] == 129);
}

TEST_CASE("nil eval emits n,phase CSV by default") {
  auto r = run("nil eval --group free3 --seq "
               "'{\"alpha\":\"1/5\",\"beta\":\"1/3\",\"gamma\":\"1/7\"}' "
               "--coord t312 --n-max 3 --precision rational");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "n,phase\n1,0.0\n2,0.009523809523809523\n3,0.9619047619047618\n");

  auto bad = run("nil eval --group free3 --seq '{\"alpha\":0,\"beta\":0,\"gamma\":0}' "
                 "--coord t999 --n-max 2", true);
  CHECK(bad.exit_code == 2);
}

TEST_CASE("nil power-check is exact") {
  auto env = run_json("nil power-check --params "
                      "'{\"alpha\":\"1/5\",\"beta\":\"1/3\",\"gamma\":\"1/7\",\"n_max\":100}'");
  CHECK(env["result"]["pass"] == true);
  CHECK(env["result"]["max_residual"] == 0.0);
}

TEST_CASE("equidist: rational approximation and witness detection") {
  auto ra = run_json("equidist ratapprox --params '{\"alpha\":0.6180339887498949,\"Q\":100}'");
  CHECK(ra["result"]["a"] == 55);
  CHECK(ra["result"]["q"] == 89);
  CHECK(ra["result"]["approx"] == "55/89");

  auto et = run_json("equidist test --params '{\"alphas\":[0.5],\"N\":64,\"eps\":0.1,\"M\":4}'");
  CHECK(et["result"]["equidistributed"] == false);
  CHECK(et["result"]["witness"][0] == 2);
  CHECK(et["result"]["magnitude"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  auto ir = run_json("equidist relation --params '{\"alphas\":[0.5,0.25],\"M\":4,\"tol\":1e-9}'");
  CHECK(ir["result"]["found"] == true);
}

TEST_CASE("bohr build lists members as CSV by default") {
  auto r = run("bohr build --params '{\"S\":[0.25],\"rho\":0.3,\"N\":40}'");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("member\n1\n3\n4\n5\n", 0) == 0);

  auto env = run_json("bohr build --params '{\"S\":[0.25],\"rho\":0.3,\"N\":40}' --output json");
  CHECK(env["result"]["size"] == 9);
  CHECK(env["result"]["members"][0] == 1);

  auto reg = run_json("bohr regular --params '{\"S\":[0.6180339887498949],\"rho0\":0.1,\"N\":2000}'");
  CHECK(reg["result"]["found"] == true);
  double rho = reg["result"]["rho"].get<double>();
  CHECK(rho >= 0.1);
  CHECK(rho <= 0.2);
}

TEST_CASE("sumset subcommands read CSV inputs") {
  const char* dir = std::getenv("TMPDIR");
  std::string base = dir ? dir : "/tmp";
  {
    std::ofstream a(base + "/gl_A.csv");
    a << "elem\n";
    for (int e = 1; e <= 100; ++e) a << e << "\n";
    std::ofstream p(base + "/gl_P.csv");
    p << "x,y\n1,1\n";
    std::ofstream e(base + "/gl_E.csv");
    e << "set,x,r\n1,0,0\n2,0,0\n3,0,0\n4,0,0\n";
  }
  auto lev = run_json("sumset lev --input " + base + "/gl_A.csv --params '{\"N\":100,\"k\":2}'");
  CHECK(lev["result"]["found"] == true);
  CHECK(lev["result"]["d"] == 1);

  auto bl = run("sumset bilinear --input " + base + "/gl_P.csv --params '{\"N\":4}' --output csv");
  CHECK(bl.exit_code == 0);
  CHECK(bl.out == "x,y\n0,1\n1,0\n1,2\n2,1\n");

  auto en = run_json("sumset energy --input " + base + "/gl_E.csv --params '{\"grid\":8}'");
  CHECK(en["result"]["energy"] == 1);

  CHECK(run("sumset lev --input " + base + "/gl_missing.csv --params '{\"N\":10,\"k\":2}'", true)
            .exit_code == 2);
}

TEST_CASE("verify reports round-trip through their reproduce strings") {
  const std::string args =
      "verify pipeline --params "
      "'{\"N\":64,\"kind\":\"pure-quadratic\",\"alpha\":0.2951,\"beta\":0.117,\"H\":48,"
      "\"delta\":0.25}' --seed 0";
  auto env = run_json(args);
  CHECK(env["result"]["pass"] == true);
  CHECK(env["result"]["measured"]["count"] == 73744.0);
  std::string repro = env["result"]["reproduce"].get<std::string>();
  CHECK(repro.substr(repro.find(' ') + 1) == args);

  // a failed check exits 1 but still prints the report
  auto bad = run("verify l1 --params "
                 "'{\"item\":5,\"N\":512,\"alpha\":0.37,\"beta\":0.1,\"M\":10,\"eps\":0.01}'");
  CHECK(bad.exit_code == 1);
  auto rep = json::parse(bad.out);
  CHECK(rep["result"]["pass"] == false);
  CHECK(rep["result"]["note"].get<std::string>().find("precondition") != std::string::npos);
}

TEST_CASE("output is byte-identical across thread counts, modulo runtime_ms") {
  const std::string args =
      "verify necessity --params "
      "'{\"s\":3,\"family\":\"bracket312\",\"alpha\":0.6180339887498949,"
      "\"beta\":0.41421356237309515,\"gamma\":0.32471795724474602,\"grid\":[64,128]}'";
  auto a = run_json(args + " --threads 1");
  auto b = run_json(args + " --threads 8");
  CHECK(strip_runtime(a) == strip_runtime(b));

  auto c = run_json("gowers quadruples --params '{\"N\":48,\"H\":48,\"alpha\":0.3,\"beta\":0.1}' --threads 1");
  auto d = run_json("gowers quadruples --params '{\"N\":48,\"H\":48,\"alpha\":0.3,\"beta\":0.1}' --threads 8");
  CHECK(strip_runtime(c) == strip_runtime(d));
}

TEST_CASE("csv output mode flattens scalar results") {
  auto r = run("primes count-ap --n 1000 --output csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "key,value\ncount,58\n");
}
