#pragma once

#include <span>
#include <vector>

#include "kkscatter/core_types.hpp"

namespace kkscatter {

/// Square barrier of height V0 on [-a/2, a/2]; V0 < 0 is a well.
class BarrierSpec {
 public:
  BarrierSpec(double height, double width);

  /// Barrier with the given area (delta strength) and width.
  static BarrierSpec from_area(double area, double width) {
    return BarrierSpec(area / width, width);
  }

  double height() const noexcept { return height_; }
  double width() const noexcept { return width_; }
  double area() const noexcept { return height_ * width_; }

 private:
  double height_;
  double width_;
};

struct BarrierAmplitudes {
  Complex r;
  Complex t;
};

/// Exact transfer-matrix amplitudes for a plane wave e^{i k1 z} incident from
/// the left, referenced to the same origin as the delta amplitudes. The
/// interior solution is trigonometric above the barrier, hyperbolic below it
/// (scaled so that thick barriers do not overflow) and linear at threshold.
BarrierAmplitudes barrier_amplitudes(double k1, const BarrierSpec& barrier,
                                     const PhysicalConfig& config = {});

struct ConvergenceRow {
  double width;
  double height;
  Complex r_barrier;
  Complex t_barrier;
  double R_barrier;
  double T_barrier;
  double R_delta;
  double T_delta;
  double error;  ///< |r_barrier - r_delta| + |t_barrier - t_delta|
};

struct DeltaLimitStudy {
  std::vector<ConvergenceRow> rows;
  bool monotone = false;   ///< errors nonincreasing down the table
  bool converged = false;  ///< final error <= tolerance
};

/// Barriers of fixed area lambda and shrinking width, compared against the
/// delta amplitudes. Widths must be positive and strictly decreasing.
DeltaLimitStudy delta_limit_study(double k1, double lambda,
                                  std::span<const double> widths,
                                  const PhysicalConfig& config = {},
                                  double tolerance = 5e-3);

}  // namespace kkscatter
