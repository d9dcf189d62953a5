#include "kkscatter/kk_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kkscatter {

namespace {

constexpr int kPeriodicitySamples = 64;

double mode_term(int n, double radius, const PhysicalConfig& config) {
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return nn * config.hbar() * config.hbar() /
         (2.0 * config.mass() * radius * radius);
}

void check_dimension(std::span<const int> modes,
                     const CompactGeometry& geometry) {
  if (modes.size() != geometry.dimension()) {
    throw Error(ErrorKind::DimensionMismatch,
                "mode vector has " + std::to_string(modes.size()) +
                    " entries but geometry has " +
                    std::to_string(geometry.dimension()) + " dimensions");
  }
}

void collect(std::size_t dim, double partial, std::vector<int>& modes,
             double e_max, const PhysicalConfig& config,
             const CompactGeometry& geometry,
             std::vector<std::vector<int>>& out) {
  if (dim == geometry.dimension()) {
    out.push_back(modes);
    return;
  }
  for (int n = 0;; ++n) {
    const double next = partial + mode_term(n, geometry.radius(dim), config);
    if (next > e_max) break;
    modes[dim] = n;
    collect(dim + 1, next, modes, e_max, config, geometry, out);
  }
  modes[dim] = 0;
}

}  // namespace

double compact_energy(std::span<const int> modes, const PhysicalConfig& config,
                      const CompactGeometry& geometry) {
  check_dimension(modes, geometry);
  double energy = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    energy += mode_term(modes[i], geometry.radius(i), config);
  }
  return energy;
}

double total_energy(double k1, std::span<const int> modes,
                    const PhysicalConfig& config,
                    const CompactGeometry& geometry) {
  return config.kinetic_energy(k1) + compact_energy(modes, config, geometry);
}

AxialWavenumber axial_wavenumber(double energy, std::span<const int> modes,
                                 const PhysicalConfig& config,
                                 const CompactGeometry& geometry) {
  const double offset = compact_energy(modes, config, geometry);
  const double axial = energy - offset;
  const double scale = std::sqrt(2.0 * config.mass() * std::abs(axial)) /
                       config.hbar();
  if (axial > 0.0) return OpenChannel{scale};
  return ClosedChannel{scale};
}

std::vector<SpectrumLevel> enumerate_levels(double e_max,
                                            const PhysicalConfig& config,
                                            const CompactGeometry& geometry,
                                            std::optional<double> query_energy) {
  if (!(std::isfinite(e_max) && e_max > 0.0)) {
    throw Error(ErrorKind::InvalidEnergy,
                "E_max must be positive, got " + std::to_string(e_max));
  }
  const double query = query_energy.value_or(e_max);
  if (!std::isfinite(query)) {
    throw Error(ErrorKind::InvalidEnergy, "query energy must be finite");
  }

  std::vector<std::vector<int>> mode_sets;
  std::vector<int> scratch(geometry.dimension(), 0);
  collect(0, 0.0, scratch, e_max, config, geometry, mode_sets);

  std::vector<SpectrumLevel> levels;
  levels.reserve(mode_sets.size());
  for (auto& modes : mode_sets) {
    SpectrumLevel level;
    level.compact_energy = compact_energy(modes, config, geometry);
    const auto nonzero = std::count_if(modes.begin(), modes.end(),
                                       [](int n) { return n != 0; });
    level.degeneracy = 1 << nonzero;
    const auto channel = axial_wavenumber(query, modes, config, geometry);
    if (const auto* open = std::get_if<OpenChannel>(&channel)) {
      level.open = true;
      level.k1_or_kappa = open->k1;
    } else {
      level.k1_or_kappa = std::get<ClosedChannel>(channel).kappa;
    }
    level.modes = std::move(modes);
    levels.push_back(std::move(level));
  }
  std::sort(levels.begin(), levels.end(),
            [](const SpectrumLevel& a, const SpectrumLevel& b) {
              if (a.compact_energy != b.compact_energy) {
                return a.compact_energy < b.compact_energy;
              }
              return a.modes < b.modes;
            });
  return levels;
}

double periodicity_mismatch(double n_value) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto phi_factor = [n_value](double phi) {
    return std::cos(n_value * phi) + std::sin(n_value * phi);
  };
  double worst = 0.0;
  for (int i = 0; i < kPeriodicitySamples; ++i) {
    const double phi = two_pi * i / kPeriodicitySamples;
    worst = std::max(worst, std::abs(phi_factor(phi + two_pi) - phi_factor(phi)));
  }
  return worst;
}

bool check_periodicity(double n_value, double tol) {
  if (!(std::isfinite(tol) && tol > 0.0)) {
    throw Error(ErrorKind::InvalidTolerance, "tolerance must be > 0");
  }
  return periodicity_mismatch(n_value) <= tol;
}

}  // namespace kkscatter
