#include "floquet/conjugation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "floquet/errors.hpp"

namespace floquet {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kSkewTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
}  // namespace

Generator build_generator(const FourierPotential& p, const ModeGrid& grid) {
  if (!p.gauge_normalized())
    throw std::invalid_argument("build_generator: potential must be gauge-normalized");
  Generator g{OperatorMatrix(grid.K, "G")};
  for (int j = -grid.K; j <= grid.K; ++j) {
    for (int k = -grid.K; k <= grid.K; ++k) {
      if (j * j == k * k) continue;
      Complex v0 = p.coefficient(j - k, 0.0);
      if (v0 == Complex{0.0, 0.0}) continue;
      double denom = static_cast<double>(j) * j - static_cast<double>(k) * k;
      g.G.at(j, k) = v0 / denom;
    }
  }
  return g;
}

double skew_defect(const OperatorMatrix& a) {
  return (a.m + a.m.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix exp_skew(const Generator& g, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("exp_skew: sign must be +1 or -1");
  double defect = skew_defect(g.G);
  if (defect > kSkewTol)
    throw NotSkew("exp_skew: skew-Hermitian defect " + std::to_string(defect));

  // iG is Hermitian, so G = V (-i Lambda) V* with real Lambda and unitary V.
  CMatrix herm = kI * g.G.m;
  herm = Complex{0.5, 0.0} * (herm + herm.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("exp_skew: eigendecomposition failed");

  CVector phases(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(-kI * (static_cast<double>(sign) * solver.eigenvalues()(i)));
  OperatorMatrix out(g.G.K, sign > 0 ? "exp(G)" : "exp(-G)");
  out.m = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();

  double udef = (out.m * out.m.adjoint() - CMatrix::Identity(out.m.rows(), out.m.cols()))
                    .cwiseAbs()
                    .maxCoeff();
  if (udef > kUnitaryTol)
    throw NotUnitary("exp_skew: unitarity defect " + std::to_string(udef));
  return out;
}

OperatorMatrix conjugate(const OperatorMatrix& m, const OperatorMatrix& s) {
  if (m.K != s.K)
    throw std::invalid_argument("conjugate: matrix sizes differ");
  OperatorMatrix out(m.K, m.label + " conj");
  out.m = s.m.adjoint() * m.m * s.m;
  return out;
}

PowerDecayReport power_decay_check(const Generator& g, const PotentialClass& klass,
                                   int n_max, double ratio_bound) {
  if (n_max < 1) throw std::invalid_argument("power_decay_check: n_max must be >= 1");
  PowerDecayReport rep;
  rep.n_max = n_max;
  rep.ratio_bound = ratio_bound;

  const int K = g.G.K;
  CMatrix power = g.G.m;
  for (int n = 1; n <= n_max; ++n) {
    double c_n = 0.0;
    for (int j = -K; j <= K; ++j) {
      for (int k = -K; k <= K; ++k) {
        double a = std::abs(power(j + K, k + K));
        if (a == 0.0) continue;
        double w = n == 1 ? bracket(j) + bracket(k) : bracket(j) * bracket(k);
        w *= std::pow(bracket(j - k), klass.alpha) * std::exp(klass.beta * std::abs(j - k));
        double c = a * w;
        if (c > c_n) c_n = c;
      }
    }
    rep.constants.push_back(c_n);
    if (n < n_max) power = (power * g.G.m).eval();
  }

  for (int i = 0; i + 1 < n_max; ++i) {
    double prev = rep.constants[i];
    double next = rep.constants[i + 1];
    double ratio = prev == 0.0 ? 0.0 : next / prev;
    rep.ratios.push_back(ratio);
    // The n = 1 constant lives on a different weight; growth is judged on the
    // product-weight powers only.
    if (i >= 1 && ratio > rep.max_ratio) rep.max_ratio = ratio;
  }
  rep.geometric = rep.max_ratio <= ratio_bound;
  return rep;
}

}  // namespace floquet
