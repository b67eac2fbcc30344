#include "floquet/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "floquet/errors.hpp"

namespace floquet {

namespace {

constexpr Complex kI{0.0, 1.0};

// d_k(t) = e^{-i t k^2 / h} for k = -K..K.
CVector free_phases(double h, int K, double t) {
  CVector d(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    double kk = static_cast<double>(k) * k;
    d(k + K) = std::exp(-kI * (t * kk / h));
  }
  return d;
}

// out += factor * B(t) * y where B(t) is the convolution matrix
// B_{kj} = v_{k-j}(t). Works band by band; y may have any column count.
void conv_accumulate(const FourierPotential& p, double t, const CMatrix& y,
                     CMatrix& out, Complex factor) {
  const int n = static_cast<int>(y.rows());
  for (const auto& [offset, series] : p.modes()) {
    Complex c = factor * series.value(t);
    if (c == Complex{0.0, 0.0}) continue;
    if (offset == 0) {
      out.noalias() += c * y;
      continue;
    }
    int lo = std::max(0, offset);
    int hi = std::min(n - 1, n - 1 + offset);
    int len = hi - lo + 1;
    if (len <= 0) continue;
    out.middleRows(lo, len).noalias() += c * y.middleRows(lo - offset, len);
  }
}

// Workspace for the rotating-frame right-hand side
//   F(t, Phi) = (1/(ih)) D(t)^* B(t) D(t) Phi,  D(t) = diag(e^{-i t k^2/h}).
struct RotatingRhs {
  const FourierPotential& p;
  double h;
  int K;
  CMatrix scaled;
  CMatrix conv;

  RotatingRhs(const FourierPotential& pot, double hh, int KK, Eigen::Index cols)
      : p(pot), h(hh), K(KK), scaled(2 * KK + 1, cols), conv(2 * KK + 1, cols) {}

  void eval(double t, const CMatrix& phi, CMatrix& out) {
    CVector d = free_phases(h, K, t);
    scaled = d.asDiagonal() * phi;
    conv.setZero();
    conv_accumulate(p, t, scaled, conv, Complex{1.0, 0.0});
    out = (-kI / h) * (d.conjugate().asDiagonal() * conv);
  }
};

// Classical RK4 on the rotating-frame system, whole matrix at once.
void rk4_rotating(const FourierPotential& p, double h, int K, CMatrix& phi,
                  double t0, double dt, long steps) {
  RotatingRhs rhs(p, h, K, phi.cols());
  CMatrix k1 = phi, k2 = phi, k3 = phi, k4 = phi, tmp = phi;
  for (long s = 0; s < steps; ++s) {
    double t = t0 + static_cast<double>(s) * dt;
    rhs.eval(t, phi, k1);
    tmp = phi + (dt / 2.0) * k1;
    rhs.eval(t + dt / 2.0, tmp, k2);
    tmp = phi + (dt / 2.0) * k2;
    rhs.eval(t + dt / 2.0, tmp, k3);
    tmp = phi + dt * k3;
    rhs.eval(t + dt, tmp, k4);
    phi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

// e^{(dt/(ih)) B(t_mid)} y by the exponential series. The number of terms is
// fixed up front from the l1 bound on the band coefficients so every step
// does identical work.
struct PotentialExponential {
  const FourierPotential& p;
  double h;
  double dt;
  int terms;
  CMatrix term;
  CMatrix next;

  PotentialExponential(const FourierPotential& pot, double hh, double step,
                       Eigen::Index rows, Eigen::Index cols)
      : p(pot), h(hh), dt(step), terms(0), term(rows, cols), next(rows, cols) {
    double l1 = 0.0;
    for (const auto& [offset, series] : p.modes()) {
      (void)offset;
      for (const auto& [m, c] : series.coefficients()) {
        (void)m;
        l1 += std::abs(c);
      }
    }
    double x = std::abs(dt) * l1 / h;
    double bound = 1.0;
    while (terms < 80 && bound > 1e-18) {
      ++terms;
      bound *= x / static_cast<double>(terms);
    }
  }

  void apply(double t_mid, CMatrix& y) {
    term = y;
    Complex base = dt / (kI * h);
    for (int n = 1; n <= terms; ++n) {
      next.setZero();
      conv_accumulate(p, t_mid, term, next, base / static_cast<double>(n));
      term.swap(next);
      y += term;
    }
  }
};

// Strang splitting in the lab frame: half a free step, the full potential
// exponential at the interval midpoint, half a free step.
void splitstep_lab(const FourierPotential& p, double h, int K, CMatrix& psi,
                   double t0, double dt, long steps) {
  CVector half = free_phases(h, K, dt / 2.0);
  PotentialExponential expb(p, h, dt, psi.rows(), psi.cols());
  for (long s = 0; s < steps; ++s) {
    double t = t0 + static_cast<double>(s) * dt;
    psi = half.asDiagonal() * psi;
    expb.apply(t + dt / 2.0, psi);
    psi = half.asDiagonal() * psi;
  }
}

// Propagate lab-frame columns y from t0 to t1 in place.
void propagate_lab(const FourierPotential& p, double h, int K, CMatrix& y,
                   double t0, double t1, const IntegratorConfig& cfg) {
  double span = t1 - t0;
  if (span == 0.0) return;
  StepPlan plan = plan_steps(span, h, K, cfg);
  switch (cfg.method) {
    case Method::RK4: {
      CVector d0 = free_phases(h, K, t0);
      CMatrix phi = d0.conjugate().asDiagonal() * y;
      rk4_rotating(p, h, K, phi, t0, plan.dt, plan.steps);
      CVector d1 = free_phases(h, K, t1);
      y = d1.asDiagonal() * phi;
      break;
    }
    case Method::SplitStep:
      splitstep_lab(p, h, K, y, t0, plan.dt, plan.steps);
      break;
  }
}

}  // namespace

StepPlan plan_steps(double span, double h, int K, const IntegratorConfig& cfg) {
  if (span == 0.0) return {0, 0.0};
  if (!(h > 0.0)) throw std::invalid_argument("plan_steps: h must be positive");
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("plan_steps: eta must be positive");
  double safety = cfg.eta * h / (static_cast<double>(K) * K);
  double requested = cfg.dt > 0.0 ? cfg.dt : safety;
  StepPlan plan;
  plan.steps = static_cast<long>(std::ceil(std::abs(span) / requested - 1e-12));
  if (plan.steps < 1) plan.steps = 1;
  plan.dt = span / static_cast<double>(plan.steps);
  if (std::abs(plan.dt) > safety * (1.0 + 1e-9)) {
    throw StepSizeTooLarge("step " + std::to_string(std::abs(plan.dt)) +
                           " exceeds safety bound " + std::to_string(safety) +
                           " = eta*h/K^2 (eta=" + std::to_string(cfg.eta) +
                           ", h=" + std::to_string(h) +
                           ", K=" + std::to_string(K) + ")");
  }
  return plan;
}

StateVector to_rotating(const StateVector& s, double h, double t) {
  if (s.frame == Frame::Rotating) return s;
  CVector d = free_phases(h, s.K, t);
  StateVector out;
  out.K = s.K;
  out.frame = Frame::Rotating;
  out.amps = d.conjugate().asDiagonal() * s.amps;
  return out;
}

StateVector to_lab(const StateVector& s, double h, double t) {
  if (s.frame == Frame::Lab) return s;
  CVector d = free_phases(h, s.K, t);
  StateVector out;
  out.K = s.K;
  out.frame = Frame::Lab;
  out.amps = d.asDiagonal() * s.amps;
  return out;
}

StateVector rotating_rhs(const FourierPotential& p, double h, double t,
                         const StateVector& phi) {
  if (phi.frame != Frame::Rotating)
    throw std::invalid_argument("rotating_rhs: state must be in the rotating frame");
  RotatingRhs rhs(p, h, phi.K, 1);
  CMatrix in = phi.amps;
  CMatrix out(in.rows(), 1);
  rhs.eval(t, in, out);
  StateVector res;
  res.K = phi.K;
  res.frame = Frame::Rotating;
  res.amps = out.col(0);
  return res;
}

StateVector propagate_column(const FourierPotential& p, double h,
                             const ModeGrid& grid, int k0, double t1,
                             const IntegratorConfig& cfg) {
  if (!grid.contains(k0))
    throw std::invalid_argument("propagate_column: k0 outside the grid");
  CMatrix y = CMatrix::Zero(grid.size(), 1);
  y(grid.index(k0), 0) = 1.0;
  propagate_lab(p, h, grid.K, y, 0.0, t1, cfg);
  StateVector out;
  out.K = grid.K;
  out.frame = Frame::Lab;
  out.amps = y.col(0);
  return out;
}

OperatorMatrix fundamental_matrix(const FourierPotential& p, double h,
                                  const ModeGrid& grid, const IntegratorConfig& cfg,
                                  double t0, double t1) {
  OperatorMatrix w(grid.K, "W");
  w.m.setIdentity();
  propagate_lab(p, h, grid.K, w.m, t0, t1, cfg);
  return w;
}

OperatorMatrix monodromy(const FourierPotential& p, double h, const ModeGrid& grid,
                         const IntegratorConfig& cfg) {
  if (!p.gauge_normalized())
    throw std::invalid_argument(
        "monodromy: potential must be gauge-normalized (zero mean of v_0); "
        "apply gauge_normalize first");
  OperatorMatrix m = fundamental_matrix(p, h, grid, cfg, 0.0, 2.0 * M_PI);
  m.label = "M";
  return m;
}

double unitarity_defect(const OperatorMatrix& m, int margin) {
  if (margin < 0 || margin >= m.K)
    throw std::invalid_argument("unitarity_defect: need 0 <= margin < K");
  CMatrix defect = m.m.adjoint() * m.m;
  defect.diagonal().array() -= 1.0;
  int radius = m.K - margin;
  int lo = m.K - radius;
  int size = 2 * radius + 1;
  return defect.block(lo, lo, size, size).cwiseAbs().maxCoeff();
}

double resonance_gap(double h, int K) {
  if (!(h > 0.0)) throw std::invalid_argument("resonance_gap: h must be positive");
  double gap = 2.0 * M_PI;
  for (int j = 0; j <= K; ++j) {
    for (int k = 0; k < j; ++k) {
      double delta = static_cast<double>(j) * j - static_cast<double>(k) * k;
      double frac = delta / h - std::round(delta / h);
      double dist = 2.0 * M_PI * std::abs(frac);
      if (dist < gap) gap = dist;
    }
  }
  return gap;
}

}  // namespace floquet
