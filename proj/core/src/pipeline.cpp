#include "floquet/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "floquet/errors.hpp"

namespace floquet {

namespace {

// Gates only engage on entries that rise above integrator noise; a zero
// potential leaves nothing to regress on and must still pass.
constexpr double kSlopeFloor = 1e-10;
constexpr double kIdentityTol = 1e-12;
constexpr double kUnitarityTol = 1e-6;
constexpr double kAdjointTol = 1e-6;
constexpr double kRatioSlack = 1e-9;

void require(bool ok, const std::string& what, std::vector<std::string>& failures) {
  if (!ok) failures.push_back(what);
}

// Worst ratio of the first-order tail column against its closed-form bound
// 2 pi h c_v e^{-beta|k-k0|} / (<k0>^2 <k-k0>^alpha), scanned over interior
// columns and rows.
double psi11_worst_ratio(const FourierPotential& p, const ModeGrid& grid, double h) {
  const PotentialClass& klass = p.klass();
  const int interior = grid.K / 2;
  double worst = 0.0;
  for (int k0 = -interior; k0 <= interior; ++k0) {
    StateVector tail = first_order_tail(p, grid, h, k0, 2.0 * M_PI);
    for (int k = -interior; k <= interior; ++k) {
      if (k * k == k0 * k0) continue;
      double a = std::abs(tail.amps(grid.index(k)));
      if (a == 0.0) continue;
      double bound = 2.0 * M_PI * h * klass.c_v *
                     std::exp(-klass.beta * std::abs(k - k0)) /
                     (bracket(k0) * bracket(k0) * std::pow(bracket(k - k0), klass.alpha));
      worst = std::max(worst, a / bound);
    }
  }
  return worst;
}

bool md_support_matches_table(const OperatorMatrix& md, const FourierPotential& p) {
  for (int j = -md.K; j <= md.K; ++j) {
    for (int k = -md.K; k <= md.K; ++k) {
      bool nonzero = md.at(j, k) != Complex{0.0, 0.0};
      bool allowed = (j == -k) && p.harmonic(-2 * k, 0) != Complex{0.0, 0.0};
      if (nonzero && !allowed) return false;
      if (!nonzero && allowed) return false;
    }
  }
  return true;
}

}  // namespace

DecomposeReport run_decompose(const RunConfig& cfg, DecomposeArtifacts* artifacts) {
  DecomposeReport rep;
  rep.h = cfg.h;
  rep.K = cfg.K;
  rep.N = cfg.N;
  rep.margin = cfg.margin;
  rep.method = cfg.integrator.method == Method::RK4 ? "rk4" : "splitstep";
  rep.dt_requested = cfg.integrator.dt;
  rep.eta = cfg.integrator.eta;

  ModeGrid grid(cfg.K, cfg.N);
  StepPlan plan = plan_steps(2.0 * M_PI, cfg.h, cfg.K, cfg.integrator);
  rep.steps = plan.steps;
  rep.dt = plan.dt;
  rep.resonance_gap = resonance_gap(cfg.h, cfg.K);
  rep.resonant = rep.resonance_gap < kResonanceWarnGap;

  auto [pot, gauge] = gauge_normalize(cfg.potential);
  rep.gauge_average = gauge.average;
  rep.potential_class = classify(pot);
  if (!rep.potential_class.pass) {
    verify_class(pot);  // throws ClassViolation with the worst mode spelled out
  }

  const double alpha = pot.klass().alpha;
  const double beta = pot.klass().beta;

  OperatorMatrix m = monodromy(pot, cfg.h, grid, cfg.integrator);
  rep.unitarity_defect = unitarity_defect(m, cfg.margin);

  Decomposition parts = residual_m2(m, pot, grid, cfg.h);
  Generator gen = build_generator(pot, grid);

  // M1 = M0 G - G M0 is exact algebra, independent of the integrator.
  rep.m1_identity_defect =
      (parts.m1.m - (parts.m0.m * gen.G.m - gen.G.m * parts.m0.m)).cwiseAbs().maxCoeff();

  // The backward fundamental matrix must be the adjoint of the forward one
  // (the truncated flow is unitary), which is the adjoint-symmetry statement
  // for the residual parts.
  OperatorMatrix back = fundamental_matrix(pot, cfg.h, grid, cfg.integrator, 0.0, -2.0 * M_PI);
  rep.adjoint_gap = (back.m - m.m.adjoint()).cwiseAbs().maxCoeff();

  rep.psi11_max_ratio = psi11_worst_ratio(pot, grid, cfg.h);
  rep.md_support_ok = md_support_matches_table(parts.md, pot);

  const Region interior = Region::square(cfg.K / 2);
  DecayBound shape{1.0, beta, 1.0, 1.0, alpha - 1.0};
  rep.m2_bound = check_bound(parts.m2, shape, interior);
  rep.m2_fit = fit_bound(parts.m2, interior, shape);
  rep.m2_interior_max = parts.m2.max_abs_interior(cfg.K / 2);

  OperatorMatrix s = exp_skew(gen, -1);
  OperatorMatrix n = conjugate(m, s);
  n.label = "N";
  OperatorMatrix sms(cfg.K, "N - M0 - Md");
  sms.m = n.m - parts.m0.m - parts.md.m;
  rep.sms_bound = check_bound(sms, shape, interior);
  rep.sms_fit = fit_bound(sms, interior, shape);
  rep.sms_interior_max = sms.max_abs_interior(cfg.K / 2);

  require(rep.m1_identity_defect <= kIdentityTol, "m1 commutator identity", rep.failures);
  require(rep.unitarity_defect <= kUnitarityTol, "unitarity defect", rep.failures);
  require(rep.adjoint_gap <= kAdjointTol, "adjoint symmetry", rep.failures);
  require(rep.psi11_max_ratio <= 1.0 + kRatioSlack, "first-order tail bound", rep.failures);
  require(rep.md_support_ok, "anti-diagonal support", rep.failures);

  rep.slopes_checked =
      beta == 0.0 && rep.m2_interior_max > kSlopeFloor && rep.m2_bound.rows_used >= 3;
  if (rep.slopes_checked) {
    require(rep.m2_bound.row_slope <= -(alpha - 1.0) + 0.5, "m2 row decay slope",
            rep.failures);
    require(rep.m2_bound.diag_slope <= -1.5, "m2 diagonal decay slope", rep.failures);
  }
  rep.pass = rep.failures.empty();

  if (artifacts != nullptr) {
    artifacts->potential = std::move(pot);
    artifacts->gauge = gauge;
    artifacts->monodromy = std::move(m);
    artifacts->parts = std::move(parts);
    artifacts->generator = std::move(gen);
    artifacts->s = std::move(s);
    artifacts->conjugated = std::move(n);
    artifacts->sms_residual = std::move(sms);
  }
  return rep;
}

DiagonalizeReport run_diagonalize(const RunConfig& cfg, DiagonalizeArtifacts* artifacts) {
  DiagonalizeReport rep;
  rep.h = cfg.h;
  rep.K = cfg.K;
  rep.N = cfg.N;
  rep.method = cfg.integrator.method == Method::RK4 ? "rk4" : "splitstep";

  DecomposeArtifacts base;
  DecomposeReport dec = run_decompose(cfg, &base);
  rep.steps = dec.steps;
  rep.dt = dec.dt;
  rep.monodromy_defect = dec.unitarity_defect;

  const FourierPotential& pot = *base.potential;
  const OperatorMatrix& n = *base.conjugated;
  rep.conjugated_defect = unitarity_defect(n, cfg.margin);

  const double alpha = pot.klass().alpha;
  const double beta = pot.klass().beta;
  if (alpha <= 2.0)
    throw ConfigError("diagonalize needs potential.alpha > 2; the envelope power "
                      "alpha - 1 must exceed 1 for the convolution constant");
  rep.sms_c = dec.sms_bound.c_min;
  rep.c_alpha1 = empirical_cnu(alpha - 1.0, beta, 32).value;

  EnvelopeParams params{rep.sms_c, rep.c_alpha1, alpha, beta};
  GramReport gr = gram(n, cfg.N, params);
  rep.route_gap = gr.route_gap;
  rep.herm_defect = gr.herm_defect;
  rep.envelope_ratio = gr.envelope_ratio;
  rep.envelope_ok = gr.envelope_ok;
  rep.eee_max = gr.eee_max;
  rep.lemma_eee_ok = gr.lemma_eee_ok;
  rep.tight_c = gr.tight_c;
  rep.eee_max_tight = gr.eee_max_tight;
  rep.lemma_eee_tight_ok = gr.lemma_eee_tight_ok;

  // The construction is justified only while the measured Gram defect is
  // small in the envelope sense; otherwise the block is too short.
  double eps_diag_max = gr.eps_tight.diagonal().maxCoeff();
  if (!gr.lemma_eee_tight_ok)
    throw NTooSmall("block half-width N = " + std::to_string(cfg.N) +
                    ": envelope convolution reaches " + std::to_string(gr.eee_max_tight) +
                    " > 1/2");
  if (eps_diag_max >= 0.5)
    throw NTooSmall("block half-width N = " + std::to_string(cfg.N) +
                    ": envelope diagonal reaches " + std::to_string(eps_diag_max));

  const int K = cfg.K;
  const int blockn = 2 * cfg.N + 1;
  CMatrix wblock = n.m.block(K - cfg.N, K - cfg.N, blockn, blockn);
  BlockOrthogonalization orth = orthonormalize(wblock);
  rep.orthonormality_defect = orth.orthonormality_defect;

  StepBoundReport sb = check_step_bounds(orth, gr.eps_tight);
  rep.max_lambda_ratio = sb.max_lambda_ratio;
  rep.max_sigma_ratio = sb.max_sigma_ratio;
  rep.max_sigma_prime = sb.max_sigma_prime;
  rep.max_eps_diag = sb.max_eps_diag;
  if (rep.max_sigma_prime >= 0.5)
    throw NTooSmall("block half-width N = " + std::to_string(cfg.N) +
                    ": normalization shift reaches " + std::to_string(rep.max_sigma_prime));

  // U - W against its template, constant out in front of (N+1)^{-2}.
  double wc = 0.0;
  for (int j = -cfg.N; j <= cfg.N; ++j)
    for (int k = -cfg.N; k <= cfg.N; ++k)
      wc = std::max(wc, std::abs(orth.Wprime(j + cfg.N, k + cfg.N)) *
                            bracket(j) * bracket(k) *
                            static_cast<double>(cfg.N + 1) * (cfg.N + 1) *
                            std::pow(bracket(j - k), alpha - 1.0) *
                            std::exp(beta * std::abs(j - k)));
  rep.wprime_c = wc;

  UnitaryDiagonalization diag = diagonalize_unitary(orth.U);
  rep.diag_residual = diag.residual;
  rep.modulus_defect = diag.modulus_defect;
  rep.clusters = diag.clusters;

  DiagonalForm form = assemble_theorem2(n, diag, cfg.N, pot, cfg.h);
  OperatorMatrix t = conjugate(n, form.Uhat);
  rep.embed_defect_gap =
      std::abs(unitarity_defect(t, cfg.margin) - rep.conjugated_defect);
  rep.middle_sup = form.middle_sup;
  rep.fit_middle = form.fit_middle;
  rep.fit_row_strip = form.fit_row_strip;
  rep.fit_col_strip = form.fit_col_strip;
  rep.fit_outer = form.fit_outer;

  for (const auto& f : dec.failures) rep.failures.push_back("decompose: " + f);
  require(rep.orthonormality_defect <= 1e-12, "block orthonormality", rep.failures);
  require(sb.lambda_ok, "per-step coefficient bound", rep.failures);
  require(sb.sigma_ok, "per-step normalization bound", rep.failures);
  require(rep.diag_residual <= 1e-10, "diagonalization residual", rep.failures);
  require(rep.modulus_defect <= 1e-10, "eigenvalue modulus", rep.failures);
  require(rep.embed_defect_gap <= 1e-10, "embedded conjugation unitarity", rep.failures);
  rep.pass = rep.failures.empty();

  if (artifacts != nullptr) {
    artifacts->conjugated = n;
    artifacts->gram = std::move(gr);
    artifacts->orth = std::move(orth);
    artifacts->diag = std::move(diag);
    artifacts->form = std::move(form);
  }
  return rep;
}

LemmasReport run_lemmas(int range) {
  if (range < 2) throw ConfigError("lemma range must be >= 2");
  LemmasReport rep;
  rep.range = range;
  rep.ineq1 = check_ineq1(range);
  rep.ineq2 = check_ineq2(range);
  rep.cnu2 = empirical_cnu(2.0, 0.0, range);
  rep.cnu3 = empirical_cnu(3.0, 0.0, range);
  rep.pass = rep.ineq1.pass && rep.ineq2.pass && rep.cnu2.stable && rep.cnu3.stable;
  return rep;
}

ConvergeReport run_converge(const RunConfig& cfg, const std::vector<int>& Ks) {
  if (Ks.size() < 2) throw ConfigError("converge needs at least two K values");
  for (std::size_t i = 0; i + 1 < Ks.size(); ++i)
    if (Ks[i] >= Ks[i + 1]) throw ConfigError("K list must be strictly ascending");

  ConvergeReport rep;
  rep.Ks = Ks;
  std::vector<OperatorMatrix> monodromies;
  for (int K : Ks) {
    RunConfig c = cfg;
    c.K = K;
    if (3 * c.N > c.K)
      throw ConfigError("K = " + std::to_string(K) + " too small for N = " +
                        std::to_string(c.N));
    if (c.margin >= c.K) throw ConfigError("margin too large for K = " + std::to_string(K));
    DecomposeArtifacts art;
    rep.runs.push_back(run_decompose(c, &art));
    monodromies.push_back(std::move(*art.monodromy));
  }

  for (std::size_t i = 0; i + 1 < monodromies.size(); ++i) {
    int radius = std::min(Ks[i], Ks[i + 1]) / 2;
    double delta = 0.0;
    for (int j = -radius; j <= radius; ++j)
      for (int k = -radius; k <= radius; ++k)
        delta = std::max(delta,
                         std::abs(monodromies[i].at(j, k) - monodromies[i + 1].at(j, k)));
    rep.deltas.push_back(delta);
  }
  rep.final_delta = rep.deltas.back();
  rep.monotone = std::is_sorted(rep.deltas.rbegin(), rep.deltas.rend());
  rep.pass = rep.final_delta <= 1e-6;
  return rep;
}

}  // namespace floquet
