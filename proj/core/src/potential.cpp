#include "floquet/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace floquet {

namespace {
constexpr double kResonantPhase = 1e-9;
constexpr double kRealityTol = 1e-12;
const Complex kI(0.0, 1.0);
}  // namespace

void HarmonicSeries::set(int m, Complex c) { coeffs_[m] = c; }

Complex HarmonicSeries::get(int m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

int HarmonicSeries::max_harmonic() const {
  int mx = 0;
  for (const auto& [m, c] : coeffs_) mx = std::max(mx, std::abs(m));
  return mx;
}

Complex HarmonicSeries::value(double t) const {
  Complex sum(0.0, 0.0);
  for (const auto& [m, c] : coeffs_) sum += c * std::exp(kI * (m * t));
  return sum;
}

Complex HarmonicSeries::derivative(int order, double t) const {
  if (order == 0) return value(t);
  Complex sum(0.0, 0.0);
  for (const auto& [m, c] : coeffs_) {
    if (m == 0) continue;
    sum += c * std::pow(kI * double(m), order) * std::exp(kI * (m * t));
  }
  return sum;
}

namespace {
// int_0^t e^{i mu tau} dtau with a series branch near mu = 0.
Complex phase_integral(double mu, double t) {
  if (std::abs(mu) < kResonantPhase)
    return Complex(t, 0.0) + kI * (mu * t * t / 2.0);
  return (std::exp(kI * (mu * t)) - 1.0) / (kI * mu);
}
}  // namespace

Complex HarmonicSeries::oscillatory_integral(double omega, double t) const {
  Complex sum(0.0, 0.0);
  for (const auto& [m, c] : coeffs_) sum += c * phase_integral(m + omega, t);
  return sum;
}

Complex HarmonicSeries::oscillatory_integral_derivative(double omega, double t) const {
  Complex sum(0.0, 0.0);
  for (const auto& [m, c] : coeffs_) {
    if (m == 0) continue;
    sum += c * (kI * double(m)) * phase_integral(m + omega, t);
  }
  return sum;
}

FourierPotential::FourierPotential(const std::vector<ModeHarmonics>& entries,
                                   PotentialClass klass)
    : klass_(klass) {
  for (const auto& entry : entries) {
    if (entry.k < 0)
      throw std::invalid_argument(
          "FourierPotential: supply only k >= 0; negative modes are derived");
    if (modes_.count(entry.k))
      throw std::invalid_argument("FourierPotential: duplicate mode k=" +
                                  std::to_string(entry.k));
    HarmonicSeries s;
    for (const auto& [m, c] : entry.harmonics) {
      if (s.coefficients().count(m))
        throw std::invalid_argument("FourierPotential: duplicate harmonic m=" +
                                    std::to_string(m) + " for k=" +
                                    std::to_string(entry.k));
      s.set(m, c);
    }
    if (entry.k == 0) {
      // Reality ties v_{0,-m} = conj(v_{0,m}) within the same mode. Derive the
      // missing half, reject inconsistent pairs.
      HarmonicSeries sym;
      for (const auto& [m, c] : s.coefficients()) {
        Complex mirror = std::conj(c);
        auto it = s.coefficients().find(-m);
        if (it != s.coefficients().end()) {
          if (std::abs(it->second - mirror) > kRealityTol)
            throw std::invalid_argument(
                "FourierPotential: k=0 harmonics violate reality at m=" +
                std::to_string(m));
          sym.set(m, c);
        } else {
          sym.set(m, c);
          sym.set(-m, mirror);
        }
      }
      modes_[0] = sym;
    } else {
      modes_[entry.k] = s;
      HarmonicSeries neg;
      for (const auto& [m, c] : s.coefficients()) neg.set(-m, std::conj(c));
      modes_[-entry.k] = neg;
    }
  }
}

Complex FourierPotential::coefficient(int k, double t) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? Complex(0.0, 0.0) : it->second.value(t);
}

Complex FourierPotential::coefficient_derivative(int k, int order, double t) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? Complex(0.0, 0.0) : it->second.derivative(order, t);
}

Complex FourierPotential::harmonic(int k, int m) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? Complex(0.0, 0.0) : it->second.get(m);
}

const HarmonicSeries* FourierPotential::mode(int k) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? nullptr : &it->second;
}

std::vector<int> FourierPotential::stored_modes() const {
  std::vector<int> ks;
  ks.reserve(modes_.size());
  for (const auto& [k, s] : modes_) ks.push_back(k);
  return ks;
}

int FourierPotential::max_spatial_mode() const {
  int mx = 0;
  for (const auto& [k, s] : modes_) mx = std::max(mx, std::abs(k));
  return mx;
}

Complex GaugePhase::scalar_multiplier(double t, double h) const {
  // exp(average * t / (i h)) = exp(-i average t / h)
  return std::exp(-kI * (average * t / h));
}

Complex GaugePhase::periodic_factor(double t, double h) const {
  double a = antiderivative.value(t).real();
  return std::exp(-kI * (a / h));
}

std::pair<FourierPotential, GaugePhase> gauge_normalize(const FourierPotential& p) {
  GaugePhase phase;
  const HarmonicSeries* zero = p.mode(0);
  if (zero == nullptr) return {p, phase};

  phase.average = zero->get(0).real();
  // A(t) = sum_{m != 0} v_{0,m} (e^{imt} - 1)/(im): harmonic m gets
  // v_{0,m}/(im) and the constant collects the -1 terms.
  Complex constant(0.0, 0.0);
  for (const auto& [m, c] : zero->coefficients()) {
    if (m == 0) continue;
    Complex a = c / (kI * double(m));
    phase.antiderivative.set(m, a);
    constant -= a;
  }
  if (std::abs(constant) > 0.0) phase.antiderivative.set(0, constant);

  std::vector<ModeHarmonics> entries;
  for (const auto& [k, s] : p.modes()) {
    if (k <= 0) continue;
    ModeHarmonics mh;
    mh.k = k;
    for (const auto& [m, c] : s.coefficients()) mh.harmonics.push_back({m, c});
    entries.push_back(std::move(mh));
  }
  return {FourierPotential(entries, p.klass()), phase};
}

ClassReport classify(const FourierPotential& p, int grid_points) {
  if (grid_points < 4)
    throw std::invalid_argument("classify: grid_points must be >= 4");
  const PotentialClass& cls = p.klass();
  ClassReport report;
  report.grid_points = grid_points;

  const double period = 2.0 * std::numbers::pi;
  for (const auto& [k, series] : p.modes()) {
    double norm = 0.0;
    for (int s = 0; s <= cls.gamma; ++s) {
      for (int i = 0; i < grid_points; ++i) {
        double t = period * i / grid_points;
        norm = std::max(norm, std::abs(series.derivative(s, t)));
      }
    }
    double weight = std::pow(bracket(k), cls.alpha) * std::exp(cls.beta * std::abs(k));
    double bound = cls.c_v / weight;
    ModeClassEntry entry{k, norm, bound, bound > 0.0 ? norm / bound : 0.0};
    report.max_ratio = std::max(report.max_ratio, entry.ratio);
    report.min_admissible_c_v = std::max(report.min_admissible_c_v, norm * weight);
    report.modes.push_back(entry);
  }
  report.pass = report.max_ratio <= 1.0 + 1e-12;
  return report;
}

ClassReport verify_class(const FourierPotential& p, int grid_points) {
  ClassReport report = classify(p, grid_points);
  if (!report.pass) {
    int worst = 0;
    for (const auto& e : report.modes)
      if (e.ratio == report.max_ratio) worst = e.k;
    throw ClassViolation(
        "potential exceeds its declared coefficient class: mode k=" +
        std::to_string(worst) + " has ratio " + std::to_string(report.max_ratio) +
        " (declared c_v=" + std::to_string(p.klass().c_v) +
        ", minimal admissible c_v=" + std::to_string(report.min_admissible_c_v) + ")");
  }
  return report;
}

}  // namespace floquet
