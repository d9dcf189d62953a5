#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "kkscatter/core_types.hpp"

namespace kkscatter {

/// Sum over compact dimensions of n_i^2 hbar^2 / (2 m R_i^2). Terms are
/// accumulated in dimension order. Throws DimensionMismatch when the mode
/// vector and geometry disagree in length.
double compact_energy(std::span<const int> modes, const PhysicalConfig& config,
                      const CompactGeometry& geometry);

/// hbar^2 k1^2 / 2m + compact_energy(modes).
double total_energy(double k1, std::span<const int> modes,
                    const PhysicalConfig& config,
                    const CompactGeometry& geometry);

struct OpenChannel {
  double k1;
};

/// Axial motion is evanescent with decay rate kappa. Threshold channels
/// (kappa = 0) are closed as well.
struct ClosedChannel {
  double kappa;
};

using AxialWavenumber = std::variant<OpenChannel, ClosedChannel>;

AxialWavenumber axial_wavenumber(double energy, std::span<const int> modes,
                                 const PhysicalConfig& config,
                                 const CompactGeometry& geometry);

struct SpectrumLevel {
  std::vector<int> modes;
  double compact_energy = 0.0;
  int degeneracy = 1;  ///< 2^(number of nonzero modes)
  bool open = false;
  double k1_or_kappa = 0.0;
};

/// All mode vectors with n_i >= 0 and compact energy <= e_max, sorted by
/// energy and then lexicographically by mode vector. Channel status is
/// evaluated at query_energy, which defaults to e_max.
std::vector<SpectrumLevel> enumerate_levels(
    double e_max, const PhysicalConfig& config,
    const CompactGeometry& geometry,
    std::optional<double> query_energy = std::nullopt);

/// True when Phi(phi) = cos(k2 phi) + sin(k2 phi) returns to itself after a
/// full turn, to within tol, on a set of sample angles.
bool check_periodicity(double n_value, double tol);

/// The largest |Phi(phi + 2 pi) - Phi(phi)| over the sample angles.
double periodicity_mismatch(double n_value);

}  // namespace kkscatter
