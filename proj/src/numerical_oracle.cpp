#include "kkscatter/numerical_oracle.hpp"

#include <cmath>
#include <string>

#include "kkscatter/analytic_scattering.hpp"

namespace kkscatter {

namespace {

constexpr Complex kI{0.0, 1.0};

// Slack for "nonincreasing" when errors are at rounding level.
constexpr double kMonotoneSlack = 1e-15;

// Interior transfer matrix [[c, s], [m21, c]] acting on (psi, psi'),
// stored divided by `scale` (cosh(kappa a) below the barrier, 1 otherwise).
struct InteriorMatrix {
  double c;
  double s;
  double m21;
  double inverse_scale;  // 1 / scale
};

InteriorMatrix interior_matrix(double q2, double a) {
  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    return {std::cos(q * a), std::sin(q * a) / q, -q * std::sin(q * a), 1.0};
  }
  if (q2 < 0.0) {
    const double kappa = std::sqrt(-q2);
    const double x = kappa * a;
    const double th = std::tanh(x);
    // sech(x) = 2 e^{-x} / (1 + e^{-2x}) stays finite for large x.
    const double e = std::exp(-x);
    return {1.0, th / kappa, kappa * th, 2.0 * e / (1.0 + e * e)};
  }
  return {1.0, a, 0.0, 1.0};
}

}  // namespace

BarrierSpec::BarrierSpec(double height, double width)
    : height_(height), width_(width) {
  if (!(std::isfinite(width) && width > 0.0)) {
    throw Error(ErrorKind::InvalidBarrier,
                "barrier width must be > 0, got " + std::to_string(width));
  }
  if (!std::isfinite(height) || !std::isfinite(height * width)) {
    throw Error(ErrorKind::InvalidBarrier, "barrier area must be finite");
  }
}

BarrierAmplitudes barrier_amplitudes(double k1, const BarrierSpec& barrier,
                                     const PhysicalConfig& config) {
  if (!(std::isfinite(k1) && k1 > 0.0)) {
    throw Error(ErrorKind::NonPropagating,
                "non-propagating incident wave: k1 must be > 0");
  }
  const double a = barrier.width();
  const double left = -0.5 * a;
  const double right = 0.5 * a;
  const double hbar2 = config.hbar() * config.hbar();
  const double q2 = k1 * k1 - 2.0 * config.mass() * barrier.height() / hbar2;
  const InteriorMatrix m = interior_matrix(q2, a);

  // Outgoing wave t e^{i k1 z} on the right, propagated back through the
  // inverse interior matrix [[c, -s], [-m21, c]] (unit determinant).
  const Complex psi_right = std::exp(kI * k1 * right);
  const Complex dpsi_right = kI * k1 * psi_right;
  const Complex psi_left = m.c * psi_right - m.s * dpsi_right;
  const Complex dpsi_left = -m.m21 * psi_right + m.c * dpsi_right;

  // Split the left-edge state into e^{+i k1 z} and e^{-i k1 z} parts.
  const Complex forward =
      0.5 * (psi_left + dpsi_left / (kI * k1)) * std::exp(-kI * k1 * left);
  const Complex backward =
      0.5 * (psi_left - dpsi_left / (kI * k1)) * std::exp(kI * k1 * left);

  return {backward / forward, m.inverse_scale / forward};
}

DeltaLimitStudy delta_limit_study(double k1, double lambda,
                                  std::span<const double> widths,
                                  const PhysicalConfig& config,
                                  double tolerance) {
  if (widths.empty()) {
    throw Error(ErrorKind::InvalidWidths, "width list is empty");
  }
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(std::isfinite(widths[i]) && widths[i] > 0.0)) {
      throw Error(ErrorKind::InvalidWidths, "widths must be positive");
    }
    if (i > 0 && !(widths[i] < widths[i - 1])) {
      throw Error(ErrorKind::InvalidWidths,
                  "widths must be strictly decreasing");
    }
  }
  const auto delta = coefficients(
      make_setup(lambda, k1, 0, Complex{1.0, 0.0}, Complex{}, config));

  DeltaLimitStudy study;
  study.rows.reserve(widths.size());
  for (double a : widths) {
    const auto barrier = BarrierSpec::from_area(lambda, a);
    const auto amps = barrier_amplitudes(k1, barrier, config);
    study.rows.push_back(ConvergenceRow{
        a, barrier.height(), amps.r, amps.t, std::norm(amps.r),
        std::norm(amps.t), delta.R1(), delta.T1(),
        std::abs(amps.r - delta.r()) + std::abs(amps.t - delta.t())});
  }
  study.monotone = true;
  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    if (study.rows[i].error > study.rows[i - 1].error + kMonotoneSlack) {
      study.monotone = false;
    }
  }
  study.converged = study.rows.back().error <= tolerance;
  return study;
}

}  // namespace kkscatter
