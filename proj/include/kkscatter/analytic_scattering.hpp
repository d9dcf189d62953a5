#pragma once

#include <span>
#include <utility>
#include <vector>

#include "kkscatter/core_types.hpp"

namespace kkscatter {

/// r = -i (m lambda / hbar^2) / (k1 + i m lambda / hbar^2).
Complex reflection_amplitude(const ScatteringSetup& setup);

/// t = k1 / (k1 + i m lambda / hbar^2).
Complex transmission_amplitude(const ScatteringSetup& setup);

/// Closed-form R1, T1 together with the amplitudes. The closed forms are
/// cross-checked against |r|^2 and |t|^2 by the ScatteringAmplitudes
/// constructor.
ScatteringAmplitudes coefficients(const ScatteringSetup& setup);

/// Residuals of the matching conditions at z = 0 for a candidate (r, t),
/// both scaled by A1:
///   continuity   1 + r - t
///   jump         i k1 t - i k1 (1 - r) - (2 m lambda / hbar^2) t
/// Both vanish iff (r, t) solves the scattering problem.
std::pair<Complex, Complex> boundary_residuals(const ScatteringSetup& setup,
                                               Complex r, Complex t);

struct SweepRow {
  double k1;
  double e_axial;  ///< hbar^2 k1^2 / 2m
  double R1;
  double T1;
  Complex r;
  Complex t;
};

/// Coefficients over a strictly increasing k1 grid. Rows are computed in
/// parallel; row i always corresponds to k1_grid[i].
std::vector<SweepRow> sweep_coefficients(double lambda,
                                         std::span<const double> k1_grid,
                                         const PhysicalConfig& config = {},
                                         const CompactGeometry& geometry = {});

namespace serial {
/// Single-threaded reference for kkscatter::sweep_coefficients.
std::vector<SweepRow> sweep_coefficients(double lambda,
                                         std::span<const double> k1_grid,
                                         const PhysicalConfig& config = {},
                                         const CompactGeometry& geometry = {});
}  // namespace serial

}  // namespace kkscatter
