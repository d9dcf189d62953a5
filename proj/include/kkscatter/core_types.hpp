#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kkscatter/errors.hpp"

namespace kkscatter {

using Complex = std::complex<double>;

/// Upper bound on the number of compact dimensions (six, as in a 9+1
/// dimensional spacetime with three large spatial dimensions).
inline constexpr std::size_t kMaxCompactDims = 6;

/// Unit system. Default-constructed values are natural units, hbar = mass = 1.
class PhysicalConfig {
 public:
  PhysicalConfig() = default;
  PhysicalConfig(double hbar, double mass);

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }

  /// m * lambda / hbar^2, the inverse length that sets the delta's strength.
  double coupling(double lambda) const noexcept {
    return mass_ * lambda / (hbar_ * hbar_);
  }

  /// hbar^2 k^2 / 2m.
  double kinetic_energy(double k) const noexcept {
    return hbar_ * hbar_ * k * k / (2.0 * mass_);
  }

 private:
  double hbar_ = 1.0;
  double mass_ = 1.0;
};

/// Radii of the compact circles, one per extra dimension (1 <= d <= 6).
class CompactGeometry {
 public:
  /// Unit circle.
  CompactGeometry() : radii_{1.0} {}
  explicit CompactGeometry(std::vector<double> radii);

  static CompactGeometry circle(double radius) {
    return CompactGeometry(std::vector<double>{radius});
  }

  std::size_t dimension() const noexcept { return radii_.size(); }
  std::span<const double> radii() const noexcept { return radii_; }
  double radius(std::size_t i) const { return radii_.at(i); }

 private:
  std::vector<double> radii_;
};

/// Incident beam, delta strength and angular mode data for one scattering
/// channel on the cylinder. Only constructible through make_setup.
class ScatteringSetup {
 public:
  double lambda() const noexcept { return lambda_; }
  double k1() const noexcept { return k1_; }
  int n() const noexcept { return n_; }
  Complex F1() const noexcept { return F1_; }
  Complex G1() const noexcept { return G1_; }
  const PhysicalConfig& config() const noexcept { return config_; }
  const CompactGeometry& geometry() const noexcept { return geometry_; }
  double radius() const { return geometry_.radius(0); }

 private:
  friend ScatteringSetup make_setup(double, double, int, Complex, Complex,
                                    const PhysicalConfig&,
                                    const CompactGeometry&);
  ScatteringSetup(double lambda, double k1, int n, Complex F1, Complex G1,
                  PhysicalConfig config, CompactGeometry geometry)
      : lambda_(lambda), k1_(k1), n_(n), F1_(F1), G1_(G1),
        config_(config), geometry_(std::move(geometry)) {}

  double lambda_;
  double k1_;
  int n_;
  Complex F1_;
  Complex G1_;
  PhysicalConfig config_;
  CompactGeometry geometry_;
};

/// Validates and builds a setup. Throws Error with kind NonPropagating for
/// k1 <= 0, ZeroAngularAmplitude for F1 = G1 = 0 and GeometryDimension when
/// the geometry is not a single circle.
ScatteringSetup make_setup(double lambda, double k1, int n, Complex F1,
                           Complex G1, const PhysicalConfig& config = {},
                           const CompactGeometry& geometry = {});

/// Relative amplitudes r = B1/A1, t = C1/A1 and the coefficients R1, T1.
class ScatteringAmplitudes {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws InvalidParameter unless R1 = |r|^2, T1 = |t|^2, R1 + T1 = 1 and
  /// 1 + r = t, all within kTolerance.
  ScatteringAmplitudes(Complex r, Complex t, double R1, double T1);

  Complex r() const noexcept { return r_; }
  Complex t() const noexcept { return t_; }
  double R1() const noexcept { return R1_; }
  double T1() const noexcept { return T1_; }

 private:
  Complex r_;
  Complex t_;
  double R1_;
  double T1_;
};

}  // namespace kkscatter
