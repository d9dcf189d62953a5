#include "kkscatter/analytic_scattering.hpp"

#include <cmath>

#include "parallel.hpp"

namespace kkscatter {

namespace {

constexpr Complex kI{0.0, 1.0};

void validate_grid(std::span<const double> k1_grid) {
  if (k1_grid.empty()) {
    throw Error(ErrorKind::InvalidGrid, "k1 grid is empty");
  }
  for (std::size_t i = 1; i < k1_grid.size(); ++i) {
    if (!(k1_grid[i] > k1_grid[i - 1])) {
      throw Error(ErrorKind::InvalidGrid,
                  "k1 grid must be strictly increasing");
    }
  }
}

SweepRow sweep_row(double lambda, double k1, const PhysicalConfig& config,
                   const CompactGeometry& geometry) {
  const auto setup =
      make_setup(lambda, k1, 0, Complex{1.0, 0.0}, Complex{}, config, geometry);
  const auto amps = coefficients(setup);
  return SweepRow{k1, config.kinetic_energy(k1), amps.R1(), amps.T1(),
                  amps.r(), amps.t()};
}

}  // namespace

Complex reflection_amplitude(const ScatteringSetup& setup) {
  const double beta = setup.config().coupling(setup.lambda());
  return -kI * beta / Complex{setup.k1(), beta};
}

Complex transmission_amplitude(const ScatteringSetup& setup) {
  const double beta = setup.config().coupling(setup.lambda());
  return setup.k1() / Complex{setup.k1(), beta};
}

ScatteringAmplitudes coefficients(const ScatteringSetup& setup) {
  const double beta = setup.config().coupling(setup.lambda());
  const double k = setup.k1();
  const double denom = k * k + beta * beta;
  return ScatteringAmplitudes(reflection_amplitude(setup),
                              transmission_amplitude(setup),
                              beta * beta / denom, k * k / denom);
}

std::pair<Complex, Complex> boundary_residuals(const ScatteringSetup& setup,
                                               Complex r, Complex t) {
  const double k = setup.k1();
  const double jump = 2.0 * setup.config().coupling(setup.lambda());
  const Complex continuity = 1.0 + r - t;
  const Complex derivative = kI * k * t - kI * k * (1.0 - r) - jump * t;
  return {continuity, derivative};
}

std::vector<SweepRow> sweep_coefficients(double lambda,
                                         std::span<const double> k1_grid,
                                         const PhysicalConfig& config,
                                         const CompactGeometry& geometry) {
  validate_grid(k1_grid);
  std::vector<SweepRow> rows(k1_grid.size());
  detail::parallel_for(k1_grid.size(), [&](std::size_t i) {
    rows[i] = sweep_row(lambda, k1_grid[i], config, geometry);
  });
  return rows;
}

namespace serial {

std::vector<SweepRow> sweep_coefficients(double lambda,
                                         std::span<const double> k1_grid,
                                         const PhysicalConfig& config,
                                         const CompactGeometry& geometry) {
  validate_grid(k1_grid);
  std::vector<SweepRow> rows;
  rows.reserve(k1_grid.size());
  for (double k1 : k1_grid) {
    rows.push_back(sweep_row(lambda, k1, config, geometry));
  }
  return rows;
}

}  // namespace serial

}  // namespace kkscatter
