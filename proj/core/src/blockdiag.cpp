#include "floquet/blockdiag.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "floquet/conjugation.hpp"
#include "floquet/decomposition.hpp"
#include "floquet/errors.hpp"

namespace floquet {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kClusterGap = 1e-8;
constexpr double kUnitaryTol = 1e-10;
constexpr double kRcondFloor = 1e-12;

// Envelope at c = 1; the constant enters squared, so eps(c) = c^2 * eps(1).
Eigen::MatrixXd envelope_base(int N, const EnvelopeParams& params) {
  Eigen::MatrixXd eps(2 * N + 1, 2 * N + 1);
  double scale = static_cast<double>(N + 1) * (N + 1);
  for (int j = -N; j <= N; ++j)
    for (int k = -N; k <= N; ++k)
      eps(j + N, k + N) = params.c_alpha1 * std::exp(-params.beta * std::abs(j - k)) /
                          (bracket(j) * bracket(k) * scale *
                           std::pow(bracket(j - k), params.alpha - 1.0));
  return eps;
}

// max over (j,k) of (eps^2)_{jk} / eps_{jk}; scales like c^2.
double eee_ratio(const Eigen::MatrixXd& eps) {
  Eigen::MatrixXd prod = eps * eps;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < eps.rows(); ++j)
    for (Eigen::Index k = 0; k < eps.cols(); ++k)
      if (eps(j, k) > 0.0) worst = std::max(worst, prod(j, k) / eps(j, k));
  return worst;
}

double safe_ratio(double num, double den) {
  if (num <= 1e-15) return 0.0;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

GramReport gram(const OperatorMatrix& nfull, int N, const EnvelopeParams& params) {
  const int K = nfull.K;
  if (N < 1) throw std::invalid_argument("gram: N must be >= 1");
  if (3 * N > K)
    throw BlockTooLarge("gram: N = " + std::to_string(N) + " exceeds K/3 with K = " +
                        std::to_string(K));

  GramReport rep;
  rep.N = N;
  rep.params = params;

  const int n = 2 * N + 1;
  CMatrix w = nfull.m.block(K - N, K - N, n, n);
  rep.E = w.adjoint() * w - CMatrix::Identity(n, n);

  // Unitarity route: the same defect as minus the tail sums of the full
  // columns over N < |k| <= K.
  CMatrix top = nfull.m.block(0, K - N, K - N, n);
  CMatrix bot = nfull.m.block(K + N + 1, K - N, K - N, n);
  rep.E_tail = -(top.adjoint() * top + bot.adjoint() * bot);
  rep.route_gap = (rep.E - rep.E_tail).cwiseAbs().maxCoeff();
  rep.herm_defect = (rep.E - rep.E.adjoint()).cwiseAbs().maxCoeff();

  Eigen::MatrixXd base = envelope_base(N, params);
  double eee_base = eee_ratio(base);

  rep.eps = (params.c * params.c) * base;
  rep.envelope_ratio = 0.0;
  double tight_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double a = std::abs(rep.E(j, k));
      rep.envelope_ratio = std::max(rep.envelope_ratio, safe_ratio(a, rep.eps(j, k)));
      if (base(j, k) > 0.0) tight_sq = std::max(tight_sq, a / base(j, k));
    }
  }
  rep.envelope_ok = rep.envelope_ratio <= 1.0;
  rep.eee_max = params.c * params.c * eee_base;
  rep.lemma_eee_ok = rep.eee_max <= 0.5;

  rep.tight_c = std::sqrt(tight_sq);
  rep.eps_tight = tight_sq * base;
  rep.eee_max_tight = tight_sq * eee_base;
  rep.lemma_eee_tight_ok = rep.eee_max_tight <= 0.5;
  return rep;
}

BlockOrthogonalization orthonormalize(const CMatrix& wblock) {
  const Eigen::Index n = wblock.rows();
  if (wblock.cols() != n || n % 2 == 0)
    throw std::invalid_argument("orthonormalize: block must be square of odd size");
  const int N = static_cast<int>((n - 1) / 2);

  BlockOrthogonalization out;
  out.N = N;
  out.U = CMatrix::Zero(n, n);

  CMatrix gramm = wblock.adjoint() * wblock;

  // Elimination order N, -N, N-1, -(N-1), ..., 1, -1, 0.
  std::vector<int> order;
  for (int mm = N; mm >= 1; --mm) {
    order.push_back(mm);
    order.push_back(-mm);
  }
  order.push_back(0);

  for (int m : order) {
    OrthStep step;
    step.m = m;
    for (int j = -std::abs(m); j < std::abs(m); ++j)
      if (j != m) step.basis.push_back(j);
    const int s = static_cast<int>(step.basis.size());

    CVector bprime = wblock.col(m + N);
    if (s > 0) {
      CMatrix sub(s, s);
      CVector mu(s);
      for (int a = 0; a < s; ++a) {
        mu(a) = gramm(step.basis[a] + N, m + N);
        for (int b = 0; b < s; ++b) sub(a, b) = gramm(step.basis[a] + N, step.basis[b] + N);
      }
      Eigen::PartialPivLU<CMatrix> lu(sub);
      if (lu.rcond() < kRcondFloor)
        throw SingularGram("orthonormalize: sub-Gram system at m = " + std::to_string(m) +
                           " is numerically singular");
      CVector lambda = lu.solve(mu);
      for (int a = 0; a < s; ++a) {
        step.lambdas.push_back(lambda(a));
        bprime -= lambda(a) * wblock.col(step.basis[a] + N);
      }
    }

    double norm = bprime.norm();
    if (norm < 1e-14)
      throw SingularGram("orthonormalize: column " + std::to_string(m) +
                         " collapses to zero");
    out.U.col(m + N) = bprime / norm;
    step.sigma_prime = norm - 1.0;
    out.steps.push_back(step);
  }

  out.Wprime = out.U - wblock;
  out.orthonormality_defect =
      (out.U.adjoint() * out.U - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  return out;
}

StepBoundReport check_step_bounds(const BlockOrthogonalization& orth,
                                  const Eigen::MatrixXd& eps) {
  const int N = orth.N;
  if (eps.rows() != 2 * N + 1 || eps.cols() != 2 * N + 1)
    throw std::invalid_argument("check_step_bounds: envelope size mismatch");

  StepBoundReport rep;
  for (const auto& step : orth.steps) {
    double sigma_bound = eps(step.m + N, step.m + N);
    for (std::size_t i = 0; i < step.basis.size(); ++i) {
      int j = step.basis[i];
      double e_jm = eps(j + N, step.m + N);
      rep.max_lambda_ratio =
          std::max(rep.max_lambda_ratio, safe_ratio(std::abs(step.lambdas[i]), 2.0 * e_jm));
      sigma_bound += 2.0 * e_jm * (1.0 + eps(j + N, j + N));
    }
    rep.max_sigma_ratio =
        std::max(rep.max_sigma_ratio, safe_ratio(std::abs(step.sigma_prime), sigma_bound));
    rep.max_sigma_prime = std::max(rep.max_sigma_prime, std::abs(step.sigma_prime));
  }
  rep.max_eps_diag = eps.diagonal().maxCoeff();
  rep.lambda_ok = rep.max_lambda_ratio <= 1.0 + 1e-9;
  rep.sigma_ok = rep.max_sigma_ratio <= 1.0 + 1e-9;
  return rep;
}

UnitaryDiagonalization diagonalize_unitary(const CMatrix& u) {
  const Eigen::Index n = u.rows();
  if (u.cols() != n) throw std::invalid_argument("diagonalize_unitary: matrix not square");
  double defect =
      (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTol)
    throw NotUnitary("diagonalize_unitary: unitarity defect " + std::to_string(defect));

  Eigen::ComplexEigenSolver<CMatrix> ces(u);
  if (ces.info() != Eigen::Success)
    throw std::runtime_error("diagonalize_unitary: eigensolver failed");

  // Sort eigenpairs around the circle, then group nearly equal eigenvalues.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::arg(ces.eigenvalues()(a)) < std::arg(ces.eigenvalues()(b));
  });

  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index i : idx) {
    if (!clusters.empty() &&
        std::abs(ces.eigenvalues()(i) - ces.eigenvalues()(clusters.back().back())) <=
            kClusterGap) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }
  // The circle wraps: the first and last groups may belong together.
  if (clusters.size() > 1 &&
      std::abs(ces.eigenvalues()(clusters.front().front()) -
               ces.eigenvalues()(clusters.back().back())) <= kClusterGap) {
    for (Eigen::Index i : clusters.back()) clusters.front().push_back(i);
    clusters.pop_back();
  }

  // Re-orthonormalize each cluster's eigenvector block.
  CMatrix v(n, n);
  Eigen::Index col = 0;
  for (const auto& cluster : clusters) {
    const Eigen::Index c = static_cast<Eigen::Index>(cluster.size());
    CMatrix block(n, c);
    for (Eigen::Index i = 0; i < c; ++i) block.col(i) = ces.eigenvectors().col(cluster[i]);
    Eigen::HouseholderQR<CMatrix> qr(block);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, c);
    v.middleCols(col, c) = q;
    col += c;
  }

  // Polish the whole frame to orthonormality (V <- V (V*V)^{-1/2}).
  Eigen::SelfAdjointEigenSolver<CMatrix> pol(v.adjoint() * v);
  CVector invsqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = pol.eigenvalues()(i);
    if (s <= 0.0)
      throw std::runtime_error("diagonalize_unitary: degenerate eigenvector frame");
    invsqrt(i) = 1.0 / std::sqrt(s);
  }
  v = v * (pol.eigenvectors() * invsqrt.asDiagonal() * pol.eigenvectors().adjoint());

  // Rayleigh quotients; record how far they sit from the circle, then project.
  CVector d(n);
  double modulus_defect = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex q = v.col(i).dot(u * v.col(i));
    double mod = std::abs(q);
    if (mod == 0.0)
      throw std::runtime_error("diagonalize_unitary: zero Rayleigh quotient");
    modulus_defect = std::max(modulus_defect, std::abs(mod - 1.0));
    d(i) = q / mod;
  }

  // Assign each column to the block index it dominates, largest entries
  // first, so a diagonal input reproduces the identity.
  std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> weights;
  weights.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index c2 = 0; c2 < n; ++c2)
    for (Eigen::Index r = 0; r < n; ++r)
      weights.emplace_back(std::abs(v(r, c2)), r, c2);
  std::sort(weights.begin(), weights.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<Eigen::Index> col_to_row(static_cast<std::size_t>(n), -1);
  std::vector<bool> row_taken(static_cast<std::size_t>(n), false);
  Eigen::Index assigned = 0;
  for (const auto& [a, r, c2] : weights) {
    (void)a;
    if (assigned == n) break;
    if (row_taken[static_cast<std::size_t>(r)] ||
        col_to_row[static_cast<std::size_t>(c2)] >= 0)
      continue;
    col_to_row[static_cast<std::size_t>(c2)] = r;
    row_taken[static_cast<std::size_t>(r)] = true;
    ++assigned;
  }

  UnitaryDiagonalization out;
  out.Uhat = CMatrix::Zero(n, n);
  out.d = CVector::Zero(n);
  for (Eigen::Index c2 = 0; c2 < n; ++c2) {
    Eigen::Index r = col_to_row[static_cast<std::size_t>(c2)];
    Complex pivot = v(r, c2);
    Complex phase = std::abs(pivot) > 0.0 ? Complex(std::conj(pivot) / std::abs(pivot))
                                          : Complex{1.0, 0.0};
    out.Uhat.col(r) = v.col(c2) * phase;
    out.d(r) = d(c2);
  }
  out.modulus_defect = modulus_defect;
  out.clusters = static_cast<int>(clusters.size());
  out.residual =
      (out.Uhat.adjoint() * u * out.Uhat - CMatrix(out.d.asDiagonal())).cwiseAbs().maxCoeff();
  return out;
}

OperatorMatrix embed_block(const CMatrix& ublock, const ModeGrid& grid) {
  const Eigen::Index n = ublock.rows();
  if (ublock.cols() != n || n % 2 == 0)
    throw std::invalid_argument("embed_block: block must be square of odd size");
  const int N = static_cast<int>((n - 1) / 2);
  if (N > grid.K) throw std::invalid_argument("embed_block: block larger than grid");
  OperatorMatrix out(grid.K, "Uhat");
  out.m.setIdentity();
  out.m.block(grid.K - N, grid.K - N, n, n) = ublock;
  return out;
}

DiagonalForm assemble_theorem2(const OperatorMatrix& nfull,
                               const UnitaryDiagonalization& diag, int N,
                               const FourierPotential& p, double h) {
  const int K = nfull.K;
  if (diag.Uhat.rows() != 2 * N + 1)
    throw std::invalid_argument("assemble_theorem2: block size does not match N");
  ModeGrid grid(K, N);

  DiagonalForm out;
  out.N = N;
  out.Uhat = embed_block(diag.Uhat, grid);

  OperatorMatrix t = conjugate(nfull, out.Uhat);

  out.d = CVector(2 * K + 1);
  for (int j = -K; j <= K; ++j) {
    if (std::abs(j) <= N) {
      out.d(j + K) = diag.d(j + N);
    } else {
      double jj = static_cast<double>(j) * j;
      out.d(j + K) = std::exp(-kI * (2.0 * M_PI * jj / h));
    }
  }

  out.tilde0 = OperatorMatrix(K, "tilde M0");
  out.tilde0.m = out.d.asDiagonal();

  out.tilded = build_md(p, grid, h);
  out.tilded.label = "tilde Md";
  out.tilded.m.block(K - N, K - N, 2 * N + 1, 2 * N + 1).setZero();

  out.tildec = OperatorMatrix(K, "tilde Mc");
  out.tildec.m = t.m - out.tilde0.m - out.tilded.m;

  const double alpha = p.klass().alpha;
  const double beta = p.klass().beta;
  const int interior = K / 2;
  const double mid_scale = static_cast<double>(N + 1) * (N + 1);

  out.fit_middle.region = "middle";
  out.fit_row_strip.region = "row-strip";
  out.fit_col_strip.region = "col-strip";
  out.fit_outer.region = "outer";

  for (int j = -interior; j <= interior; ++j) {
    for (int k = -interior; k <= interior; ++k) {
      double a = std::abs(out.tildec.at(j, k));
      bool jin = std::abs(j) <= N;
      bool kin = std::abs(k) <= N;
      RegionalFit* fit = nullptr;
      double weight = 0.0;
      if (jin && kin) {
        fit = &out.fit_middle;
        weight = mid_scale;
      } else if (kin) {
        fit = &out.fit_row_strip;
        weight = std::exp(2.0 * beta * (std::abs(j) - N)) * bracket(j) * bracket(j);
      } else if (jin) {
        fit = &out.fit_col_strip;
        weight = std::exp(2.0 * beta * (std::abs(k) - N)) * bracket(k) * bracket(k);
      } else {
        fit = &out.fit_outer;
        weight = std::exp(2.0 * beta * std::abs(j - k)) * bracket(j) * bracket(k) *
                 std::pow(bracket(j - k), alpha - 1.0);
      }
      ++fit->cells;
      fit->sup = std::max(fit->sup, a);
      fit->c = std::max(fit->c, a * weight);
    }
  }
  out.middle_sup = out.fit_middle.sup;
  return out;
}

}  // namespace floquet
