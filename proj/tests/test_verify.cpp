#include "gowerslab/verify.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <thread>

#include "gowerslab/parallel.hpp"

using namespace gowerslab;
using namespace gowerslab::verify;

namespace {

double get(const VerificationReport& r, const std::string& key) {
  for (auto& [k, v] : r.measured)
    if (k == key) return v;
  FAIL("missing measured key ", key);
  return 0.0;
}

}  // namespace

TEST_CASE("check_necessity: pure phases give norm exactly 1") {
  NilseqSpec lin{"linear", 0.7071067811865476, 0.0, 0.0};
  auto r = check_necessity(1, lin, {64, 256});
  CHECK(r.pass);
  CHECK(get(r, "norm@64") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(get(r, "norm@256") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(get(r, "min_norm") >= get(r, "floor"));
  CHECK(r.reproduce.find("verify necessity") != std::string::npos);
  CHECK(r.reproduce.find("--seed 0") != std::string::npos);

  NilseqSpec quad{"quadratic", 0.31830988618367, 0.1, 0.0};
  auto r2 = check_necessity(2, quad, {64, 128});
  CHECK(r2.pass);
  CHECK(get(r2, "norm@64") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(get(r2, "norm@128") == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(check_necessity(1, quad, {64}), std::invalid_argument);
  CHECK_THROWS_AS(check_necessity(4, lin, {64}), std::invalid_argument);
  CHECK_THROWS_AS(check_necessity(1, lin, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_necessity(1, lin, {2}), std::invalid_argument);
  CHECK_THROWS_AS(check_necessity(3, NilseqSpec{"bracket312", 0.1, 0.2, 0.3}, {64, 1024}),
                  std::length_error);
}

TEST_CASE("check_necessity: bracket-312 family keeps its norm floor across N") {
  NilseqSpec br{"bracket312", 0.6180339887498949, 0.41421356237309515, 0.32471795724474602};
  auto r = check_necessity(3, br, {64, 128, 256});
  CHECK(r.pass);
  CHECK(get(r, "norm@64") == doctest::Approx(0.889926848851).epsilon(1e-9));
  CHECK(get(r, "norm@128") == doctest::Approx(0.858314148884).epsilon(1e-9));
  CHECK(get(r, "norm@256") == doctest::Approx(0.831721812639).epsilon(1e-9));
  CHECK(get(r, "min_norm") == doctest::Approx(0.831721812639).epsilon(1e-9));
  CHECK(get(r, "floor") == doctest::Approx(0.9 * 0.889926848851).epsilon(1e-9));
  CHECK(r.margin == doctest::Approx(0.831721812639 - 0.9 * 0.889926848851).epsilon(1e-6));

  // grid order must not matter
  auto shuffled = check_necessity(3, br, {256, 64, 128});
  CHECK(shuffled.pass);
  CHECK(get(shuffled, "floor") == get(r, "floor"));
  CHECK(get(shuffled, "min_norm") == get(r, "min_norm"));
}

TEST_CASE("check_l1_approx item 3: equidistributed branch meets the L1 target") {
  L1Params p;
  p.N = 4096;
  p.alpha = 0.37;
  p.beta = 0.6180339887498949;
  auto r = check_l1_approx(3, p, 0.05);
  CHECK(r.pass);
  CHECK(r.note.empty());
  CHECK(get(r, "weyl_magnitude") == doctest::Approx(0.001028529099).epsilon(1e-6));
  CHECK(get(r, "l1_error") == doctest::Approx(0.004462896239).epsilon(1e-9));
  CHECK(get(r, "l1_error") <= 0.05);
  CHECK(get(r, "lipschitz") == doctest::Approx(182.615265).epsilon(1e-6));
  CHECK(get(r, "lipschitz") <= 100.0 / 0.05);
  CHECK(r.margin == doctest::Approx(0.05 - 0.004462896239).epsilon(1e-6));
  CHECK(r.reproduce.find("\"item\":3") != std::string::npos);
}

TEST_CASE("check_l1_approx item 3: rational beta is detected, not smoothed") {
  L1Params p;
  p.N = 4096;
  p.alpha = 0.37;
  p.beta = 0.5;
  auto r = check_l1_approx(3, p, 0.05);
  CHECK(r.pass);
  CHECK(r.note.find("rational structure") != std::string::npos);
  CHECK(get(r, "q") == 2.0);
  CHECK(get(r, "a") == 1.0);
  CHECK(get(r, "approx_err") == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("check_l1_approx item 4: Fourier model of the double-fractional phase") {
  L1Params p;
  p.N = 512;
  p.alpha = 0.41421356237309515;
  p.beta = 0.6180339887498949;
  auto r = check_l1_approx(4, p, 0.05);
  CHECK(r.pass);
  CHECK(get(r, "fourier_cutoff") == 16.0);
  CHECK(get(r, "grid_sup") == doctest::Approx(0.001408617).epsilon(1e-6));
  CHECK(get(r, "l1_error") == doctest::Approx(0.000105704145).epsilon(1e-6));

  auto tight = check_l1_approx(4, p, 0.002);
  CHECK(tight.pass);
  CHECK(get(tight, "fourier_cutoff") == 32.0);
  CHECK(get(tight, "grid_sup") == doctest::Approx(0.000160739).epsilon(1e-5));
  CHECK(get(tight, "l1_error") == doctest::Approx(0.000007881674).epsilon(1e-5));
}

TEST_CASE("check_l1_approx item 5: exact interval decomposition") {
  L1Params p;
  p.N = 512;
  p.alpha = 0.37;
  p.beta = 3.0 / 512.0;
  p.M = 10.0;
  auto r = check_l1_approx(5, p, 0.01);
  CHECK(r.pass);
  CHECK(get(r, "intervals") == 4.0);
  CHECK(get(r, "max_floor") == 3.0);
  CHECK(get(r, "l1_error") == 0.0);

  p.beta = 0.0;
  auto z = check_l1_approx(5, p, 0.01);
  CHECK(z.pass);
  CHECK(get(z, "intervals") == 1.0);
  CHECK(get(z, "l1_error") == 0.0);

  p.beta = 0.1;  // far beyond M/N
  auto bad = check_l1_approx(5, p, 0.01);
  CHECK_FALSE(bad.pass);
  CHECK(bad.note.find("precondition") != std::string::npos);

  CHECK_THROWS_AS(check_l1_approx(2, p, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(check_l1_approx(5, p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_l1_approx(5, L1Params{8, 0, 0, 1}, 0.01), std::invalid_argument);
}

TEST_CASE("run_gowers_pipeline: full shift family meets the claimed-delta floor") {
  PhaseFamily fam{"pure-quadratic", 0.2951, 0.117, 64};
  auto r = run_gowers_pipeline(64, fam, 1.0);
  CHECK(r.pass);
  CHECK(get(r, "count") == 174784.0);
  CHECK(get(r, "additive_quadruples") == 174784.0);  // (2 n^3 + n) / 3 at n = 64
  CHECK(get(r, "eta") == 1.0);
  CHECK(get(r, "delta_measured") == 0.0);  // h = N contributes an empty overlap
  CHECK(get(r, "threshold_used") == 0.0);
  CHECK(get(r, "floor") == 131072.0);  // N^3 / 2
  CHECK(get(r, "sample1_corr") == doctest::Approx(63.0 / 64.0).epsilon(1e-12));
  CHECK(get(r, "sample1_a") == 0.0);
  CHECK(get(r, "sample1_b") == 0.0);
  CHECK(get(r, "sample2_corr") == doctest::Approx(62.0 / 64.0).epsilon(1e-12));
  CHECK(get(r, "sample3_corr") == doctest::Approx(62.0 / 64.0).epsilon(1e-12));
  CHECK(r.margin == doctest::Approx(43712.0 / 262144.0).epsilon(1e-12));
  CHECK(r.reproduce.find("verify pipeline") != std::string::npos);
}

TEST_CASE("run_gowers_pipeline: proper subfamily with genuine measured delta") {
  PhaseFamily fam{"pure-quadratic", 0.2951, 0.117, 48};
  auto r = run_gowers_pipeline(64, fam, 0.25);
  CHECK(r.pass);
  CHECK(get(r, "count") == 73744.0);  // every additive quadruple clears the tiny threshold
  CHECK(get(r, "additive_quadruples") == 73744.0);
  CHECK(get(r, "eta") == 0.75);
  CHECK(get(r, "delta_measured") == 0.25);  // (64 - 48) / 64 exactly
  CHECK(get(r, "threshold_used") == doctest::Approx(1.9775390625e-4).epsilon(1e-12));
  const double floor_v = std::pow(0.75, 8) * std::pow(0.25, 4) * std::pow(64.0, 3) / 2.0;
  CHECK(get(r, "floor") == doctest::Approx(floor_v).epsilon(1e-12));
  CHECK(get(r, "sample1_corr") == doctest::Approx(63.0 / 64.0).epsilon(1e-12));
  CHECK(get(r, "sample2_corr") == doctest::Approx(62.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("run_gowers_pipeline: empty family is a vacuous pass") {
  auto r = run_gowers_pipeline(64, PhaseFamily{"empty", 0.0, 0.0, 0}, 0.5);
  CHECK(r.pass);
  CHECK(r.note.find("vacuous") != std::string::npos);
  CHECK(get(r, "count") == 0.0);

  CHECK_THROWS_AS(run_gowers_pipeline(200, PhaseFamily{"pure-quadratic", 0.1, 0.1, 10}, 0.5),
                  std::length_error);
  CHECK_THROWS_AS(run_gowers_pipeline(64, PhaseFamily{"pure-quadratic", 0.1, 0.1, 10}, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_gowers_pipeline(64, PhaseFamily{"sparse", 0.1, 0.1, 10}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("reports are identical across thread budgets") {
  NilseqSpec br{"bracket312", 0.6180339887498949, 0.41421356237309515, 0.32471795724474602};
  PhaseFamily fam{"pure-quadratic", 0.2951, 0.117, 48};
  L1Params p;
  p.N = 512;
  p.alpha = 0.41421356237309515;
  p.beta = 0.6180339887498949;

  set_thread_budget(1);
  auto n1 = check_necessity(3, br, {64, 128});
  auto p1 = run_gowers_pipeline(64, fam, 0.25);
  auto l1 = check_l1_approx(4, p, 0.05);
  set_thread_budget(4);
  auto n2 = check_necessity(3, br, {64, 128});
  auto p2 = run_gowers_pipeline(64, fam, 0.25);
  auto l2 = check_l1_approx(4, p, 0.05);
  set_thread_budget(static_cast<int>(std::thread::hardware_concurrency()));

  REQUIRE(n1.measured.size() == n2.measured.size());
  for (std::size_t i = 0; i < n1.measured.size(); ++i) {
    CHECK(n1.measured[i].first == n2.measured[i].first);
    CHECK(n1.measured[i].second == n2.measured[i].second);
  }
  REQUIRE(p1.measured.size() == p2.measured.size());
  for (std::size_t i = 0; i < p1.measured.size(); ++i) CHECK(p1.measured[i].second == p2.measured[i].second);
  REQUIRE(l1.measured.size() == l2.measured.size());
  for (std::size_t i = 0; i < l1.measured.size(); ++i) CHECK(l1.measured[i].second == l2.measured[i].second);
}
