#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floquet/blockdiag.hpp"
#include "floquet/bounds.hpp"
#include "floquet/config.hpp"
#include "floquet/conjugation.hpp"
#include "floquet/decomposition.hpp"

namespace floquet {

// Everything the decompose pipeline measured. pass reflects the gates listed
// in `failures` when they trip; fitted constants and slopes are always
// reported so a failing run can still be diagnosed from the JSON.
struct DecomposeReport {
  double h = 0.0;
  int K = 0;
  int N = 0;
  int margin = 0;
  std::string method;
  double dt_requested = 0.0;
  double eta = 0.0;
  long steps = 0;
  double dt = 0.0;
  double resonance_gap = 0.0;
  bool resonant = false;
  double gauge_average = 0.0;
  ClassReport potential_class;
  double unitarity_defect = 0.0;   // at the configured margin
  double m1_identity_defect = 0.0; // ||M1 - (M0 G - G M0)||_max
  double adjoint_gap = 0.0;        // backward run vs adjoint of the forward one
  double psi11_max_ratio = 0.0;    // first-order tail against its closed bound
  bool md_support_ok = false;
  double m2_interior_max = 0.0;
  BoundCheckReport m2_bound;
  FitResult m2_fit;
  double sms_interior_max = 0.0;
  BoundCheckReport sms_bound;
  FitResult sms_fit;
  bool slopes_checked = false;
  bool pass = false;
  std::vector<std::string> failures;
};

// Matrices the pipeline built, for callers that keep working with them
// (CSV emission, acceptance checks, the diagonalize chain).
struct DecomposeArtifacts {
  std::optional<FourierPotential> potential;  // gauge-normalized
  GaugePhase gauge;
  std::optional<OperatorMatrix> monodromy;
  std::optional<Decomposition> parts;
  std::optional<Generator> generator;
  std::optional<OperatorMatrix> s;           // e^{-G}
  std::optional<OperatorMatrix> conjugated;  // S* M S
  std::optional<OperatorMatrix> sms_residual;
};

DecomposeReport run_decompose(const RunConfig& cfg,
                              DecomposeArtifacts* artifacts = nullptr);

struct DiagonalizeReport {
  double h = 0.0;
  int K = 0;
  int N = 0;
  std::string method;
  long steps = 0;
  double dt = 0.0;
  double sms_c = 0.0;     // envelope constant, fitted on the conjugated residual
  double c_alpha1 = 0.0;  // empirical convolution constant at power alpha-1
  double monodromy_defect = 0.0;
  double conjugated_defect = 0.0;
  double route_gap = 0.0;
  double herm_defect = 0.0;
  double envelope_ratio = 0.0;
  bool envelope_ok = false;
  double eee_max = 0.0;
  bool lemma_eee_ok = false;
  double tight_c = 0.0;
  double eee_max_tight = 0.0;
  bool lemma_eee_tight_ok = false;
  double orthonormality_defect = 0.0;
  double max_lambda_ratio = 0.0;
  double max_sigma_ratio = 0.0;
  double max_sigma_prime = 0.0;
  double max_eps_diag = 0.0;
  double wprime_c = 0.0;  // constant of the U - W template
  double diag_residual = 0.0;
  double modulus_defect = 0.0;
  int clusters = 0;
  double embed_defect_gap = 0.0;
  double middle_sup = 0.0;
  RegionalFit fit_middle, fit_row_strip, fit_col_strip, fit_outer;
  bool pass = false;
  std::vector<std::string> failures;
};

struct DiagonalizeArtifacts {
  std::optional<OperatorMatrix> conjugated;
  std::optional<GramReport> gram;
  std::optional<BlockOrthogonalization> orth;
  std::optional<UnitaryDiagonalization> diag;
  std::optional<DiagonalForm> form;
};

// Full chain: decompose, conjugate, Gram analysis, block orthogonalization,
// diagonalization, final splitting. Throws NTooSmall when the measured
// envelope violates the smallness the construction needs.
DiagonalizeReport run_diagonalize(const RunConfig& cfg,
                                  DiagonalizeArtifacts* artifacts = nullptr);

struct LemmasReport {
  int range = 0;
  LemmaReport ineq1;
  LemmaReport ineq2;
  CnuResult cnu2;
  CnuResult cnu3;
  bool pass = false;
};

LemmasReport run_lemmas(int range);

struct ConvergeReport {
  std::vector<int> Ks;
  std::vector<double> deltas;  // interior max difference between consecutive K
  double final_delta = 0.0;
  bool monotone = false;
  bool pass = false;
  std::vector<DecomposeReport> runs;
};

ConvergeReport run_converge(const RunConfig& cfg, const std::vector<int>& Ks);

}  // namespace floquet
