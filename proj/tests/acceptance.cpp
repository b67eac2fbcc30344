// Acceptance gate: one pass/fail line per shipped guarantee, with the
// measured value and the pinned tolerance side by side. Exits nonzero if any
// line fails. Kept separate from the unit suites so a release check is a
// single binary run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <utility>

#include "floquet/bounds.hpp"
#include "floquet/conjugation.hpp"
#include "floquet/decomposition.hpp"
#include "floquet/pipeline.hpp"
#include "floquet/potential.hpp"
#include "floquet/propagator.hpp"
#include "floquet/report.hpp"
#include "test_support.hpp"

using namespace floquet;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int n, const std::function<std::pair<bool, std::string>()>& fn) {
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = fn();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in.good()) return {};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

RunConfig reference_config(int K, int N) {
  RunConfig cfg;
  cfg.h = 2.0 * M_PI;
  cfg.K = K;
  cfg.N = N;
  cfg.margin = 16;
  cfg.potential = testsupport::reference_potential();
  return cfg;
}

}  // namespace

int main() {
  apply_thread_cap();

  // --- 1: driven-free agreement -------------------------------------------
  criterion(1, [] {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double h : {1.0, 4.0, 2.0 * M_PI}) {
      ModeGrid grid(32, 8);
      OperatorMatrix m = monodromy(FourierPotential(), h, grid, IntegratorConfig{});
      OperatorMatrix free = build_m0(grid, h);
      worst = std::max(worst, (m.m - free.m).cwiseAbs().maxCoeff());
    }
    double el = seconds_since(t0);
    bool ok = worst <= 1e-9 && el < 5.0;
    return std::make_pair(ok, "free-particle monodromy defect " + num(worst) +
                                  " (tol 1e-9) across h in {1, 4, 2pi}, " + num(el) +
                                  "s (budget 5s)");
  });

  // Shared reference runs: K = 32 and K = 48 decompositions of the same
  // potential. Their wall time is the budget checked by criterion 5.
  std::optional<DecomposeReport> r32, r48;
  DecomposeArtifacts art32;
  std::string run_error;
  double t_decompose = 0.0;
  try {
    auto t0 = std::chrono::steady_clock::now();
    r32 = run_decompose(reference_config(32, 8), &art32);
    r48 = run_decompose(reference_config(48, 8));
    t_decompose = seconds_since(t0);
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  auto need_runs = [&]() -> std::optional<std::pair<bool, std::string>> {
    if (!r32 || !r48)
      return std::make_pair(false, "reference decomposition failed: " + run_error);
    return std::nullopt;
  };

  // --- 2: unitarity level and step-size response ---------------------------
  criterion(2, [&]() -> std::pair<bool, std::string> {
    if (auto bail = need_runs()) return *bail;
    ModeGrid grid(32, 8);
    IntegratorConfig half;
    half.dt = r32->dt / 2.0;
    OperatorMatrix m = monodromy(*art32.potential, r32->h, grid, half);
    double d_half = unitarity_defect(m, 16);
    double ratio = d_half > 0.0 ? r32->unitarity_defect / d_half
                                : std::numeric_limits<double>::infinity();
    bool ok = r32->unitarity_defect <= 1e-7 && ratio >= 8.0;
    return {ok, "unitarity defect " + num(r32->unitarity_defect) +
                    " (tol 1e-7), improvement at half step " + num(ratio) + "x (need 8x)"};
  });

  // --- 3: integrator cross-check ------------------------------------------
  criterion(3, [&]() -> std::pair<bool, std::string> {
    if (auto bail = need_runs()) return *bail;
    ModeGrid grid(32, 8);
    IntegratorConfig rk;
    rk.method = Method::RK4;
    rk.dt = r32->dt / 4.0;
    IntegratorConfig ss;
    ss.method = Method::SplitStep;
    ss.dt = r32->dt / 16.0;
    OperatorMatrix a = monodromy(*art32.potential, r32->h, grid, rk);
    OperatorMatrix b = monodromy(*art32.potential, r32->h, grid, ss);
    double d = max_abs_diff(a, b, 16);
    return {d <= 1e-7, "integrator disagreement " + num(d) +
                           " on the interior block (tol 1e-7)"};
  });

  // --- 4: explicit first-order part is the commutator ----------------------
  criterion(4, [] {
    const double h = 2.0 * M_PI;
    ModeGrid grid(32, 8);
    double worst = 0.0;
    FourierPotential pots[] = {testsupport::reference_potential(),
                               testsupport::random_potential(11),
                               testsupport::random_potential(22),
                               testsupport::random_potential(33)};
    for (const FourierPotential& raw : pots) {
      auto [pot, gauge] = gauge_normalize(raw);
      OperatorMatrix m0 = build_m0(grid, h);
      OperatorMatrix m1 = build_m1(pot, grid, h);
      Generator gen = build_generator(pot, grid);
      CMatrix comm = m0.m * gen.G.m - gen.G.m * m0.m;
      worst = std::max(worst, (m1.m - comm).cwiseAbs().maxCoeff());
    }
    return std::make_pair(worst <= 1e-12,
                          "first-order commutator identity defect " + num(worst) +
                              " (tol 1e-12) over 4 potentials");
  });

  // --- 5: residual decay template, stability under K -----------------------
  criterion(5, [&]() -> std::pair<bool, std::string> {
    if (auto bail = need_runs()) return *bail;
    double c32 = r32->m2_bound.c_min, c48 = r48->m2_bound.c_min;
    double drift = std::abs(c48 - c32) / c32;
    bool ok = std::isfinite(c32) && c32 > 0.0 && drift <= 0.20 &&
              r32->m2_bound.row_slope <= -1.5 && r32->m2_bound.diag_slope <= -1.5 &&
              t_decompose < 120.0;
    return {ok, "residual constant " + num(c32) + " (K 32 -> 48 drift " +
                    num(100.0 * drift) + "%, cap 20%), slopes " +
                    num(r32->m2_bound.row_slope) + "/" + num(r32->m2_bound.diag_slope) +
                    " (cap -1.5), " + num(t_decompose) + "s (budget 120s)"};
  });

  // --- 6: conjugated residual obeys the same template -----------------------
  criterion(6, [&]() -> std::pair<bool, std::string> {
    if (auto bail = need_runs()) return *bail;
    double c32 = r32->sms_bound.c_min, c48 = r48->sms_bound.c_min;
    double drift = std::abs(c48 - c32) / c32;
    bool ok = std::isfinite(c32) && c32 > 0.0 && drift <= 0.20 &&
              r32->sms_bound.row_slope <= -1.5 && r32->sms_bound.diag_slope <= -1.5;
    return {ok, "conjugated residual constant " + num(c32) + " (K 32 -> 48 drift " +
                    num(100.0 * drift) + "%, cap 20%), slopes " +
                    num(r32->sms_bound.row_slope) + "/" + num(r32->sms_bound.diag_slope) +
                    " (cap -1.5)"};
  });

  // --- 7: backward run matches the adjoint ----------------------------------
  criterion(7, [&]() -> std::pair<bool, std::string> {
    if (auto bail = need_runs()) return *bail;
    return {r32->adjoint_gap <= 1e-6,
            "backward-run adjoint gap " + num(r32->adjoint_gap) + " (tol 1e-6)"};
  });

  // --- 8: block orthonormalization ------------------------------------------
  std::optional<DiagonalizeReport> dia32;
  criterion(8, [&]() -> std::pair<bool, std::string> {
    dia32 = run_diagonalize(reference_config(32, 8));
    bool ok = dia32->orthonormality_defect <= 1e-12 &&
              dia32->max_lambda_ratio <= 1.0 + 1e-9 &&
              std::isfinite(dia32->wprime_c) && dia32->wprime_c > 0.0;
    return {ok, "orthonormality defect " + num(dia32->orthonormality_defect) +
                    " (tol 1e-12), step-bound ratio " + num(dia32->max_lambda_ratio) +
                    " (cap 1), correction constant " + num(dia32->wprime_c)};
  });

  // --- 9: middle block shrinks as the block widens ---------------------------
  criterion(9, [&]() -> std::pair<bool, std::string> {
    if (!dia32) return {false, "depends on criterion 8, which failed"};
    DiagonalizeReport dia48 = run_diagonalize(reference_config(48, 16));
    double ratio = dia48.middle_sup > 0.0 ? dia32->middle_sup / dia48.middle_sup
                                          : std::numeric_limits<double>::infinity();
    return {ratio >= 2.0, "middle-block sup " + num(dia32->middle_sup) + " (N=8) vs " +
                              num(dia48.middle_sup) + " (N=16): shrink " + num(ratio) +
                              "x (need 2x)"};
  });

  // --- 10: index inequalities, convolution constant, power growth -----------
  criterion(10, [&]() -> std::pair<bool, std::string> {
    if (!art32.potential) return {false, "reference decomposition failed: " + run_error};
    LemmasReport lr = run_lemmas(64);
    CnuResult cnu2 = empirical_cnu(2.0, 0.0, 32);
    CnuResult cnu3 = empirical_cnu(3.0, 0.0, 32);
    ModeGrid grid(32, 8);
    Generator gen = build_generator(*art32.potential, grid);
    const PotentialClass& klass = art32.potential->klass();
    PowerDecayReport pd =
        power_decay_check(gen, klass, 6, 3.0 * klass.c_v * cnu3.value);
    bool ok = lr.pass && lr.ineq1.max_ratio <= 1.0 && lr.ineq2.max_ratio <= 1.0 &&
              cnu2.stable && cnu2.drift < 0.01 && pd.geometric;
    return {ok, "inequality ratios " + num(lr.ineq1.max_ratio) + "/" +
                    num(lr.ineq2.max_ratio) + " (cap 1), convolution constant " +
                    num(cnu2.value) + " (drift " + num(100.0 * cnu2.drift) +
                    "%, cap 1%), power growth " + num(pd.max_ratio) + " vs bound " +
                    num(pd.ratio_bound)};
  });

  // --- 11: byte-identical reruns --------------------------------------------
  criterion(11, [] {
    fs::path dir = fs::temp_directory_path();
    fs::path csv1 = dir / "floquet_acceptance_1.csv";
    fs::path csv2 = dir / "floquet_acceptance_2.csv";
    fs::path json1 = dir / "floquet_acceptance_1.json";
    fs::path json2 = dir / "floquet_acceptance_2.json";
    std::string cfg = std::string(FLOQUET_CONFIG_DIR) + "/p1_k32.json";
    auto run = [&](const fs::path& csv, const fs::path& json) {
      std::string cmd = std::string(FLOQUET_CLI_PATH) + " decompose --config " + cfg +
                        " --csv " + csv.string() + " --out " + json.string() +
                        " >/dev/null 2>&1";
      int status = std::system(cmd.c_str());
      return status == -1 ? -1 : WEXITSTATUS(status);
    };
    int ec1 = run(csv1, json1);
    int ec2 = run(csv2, json2);
    std::string a = slurp(csv1), b = slurp(csv2);
    bool same = ec1 == 0 && ec2 == 0 && !a.empty() && a == b &&
                slurp(json1) == slurp(json2);
    for (const auto& p : {csv1, csv2, json1, json2}) fs::remove(p);
    return std::make_pair(same, std::string("two identical runs: exit codes ") +
                                    std::to_string(ec1) + "/" + std::to_string(ec2) +
                                    ", outputs " + (same ? "byte-identical" : "differ"));
  });

  if (g_failures == 0) std::printf("acceptance: all 11 criteria pass\n");
  else std::printf("acceptance: %d criterion(s) failing\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
