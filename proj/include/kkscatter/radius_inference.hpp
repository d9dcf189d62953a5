#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kkscatter/core_types.hpp"

namespace kkscatter {

/// Energy offset of mode n above the n = 0 continuum edge. sigma = 0 marks an
/// exact value. n = 0 carries no information and must have delta_E = 0.
class MeasuredLevel {
 public:
  MeasuredLevel(int n, double delta_E, double sigma = 0.0);

  int n() const noexcept { return n_; }
  double delta_E() const noexcept { return delta_E_; }
  double sigma() const noexcept { return sigma_; }

 private:
  int n_;
  double delta_E_;
  double sigma_;
};

struct RadiusFit {
  double radius = 0.0;
  double curvature_coeff = 0.0;  ///< c = hbar^2 / (2 m R^2)
  double rms_residual = 0.0;
  double intercept = 0.0;        ///< zero unless fitted with an intercept
};

struct FitOptions {
  /// Also fit a constant offset (diagnostic only; the physical ladder has
  /// none).
  bool with_intercept = false;
};

/// Weighted least squares of delta_E against n^2. Without intercept,
/// c = sum(w n^2 dE) / sum(w n^4) with w = 1 / sigma^2 (w = 1 when every sigma
/// is zero). Mixing zero and nonzero sigmas is rejected.
RadiusFit fit_radius(std::span<const MeasuredLevel> levels,
                     const PhysicalConfig& config = {},
                     const FitOptions& options = {});

/// hbar / sqrt(2 m c).
double radius_from_coeff(double c, const PhysicalConfig& config);

struct ModeAssignment {
  std::vector<MeasuredLevel> levels;
  int n_start = 1;
  double coeff = 0.0;  ///< c estimated from the lowest offset
};

struct AssignmentFailure {
  std::string detail;
};

/// Matches sorted offsets to c n^2 for consecutive n = n_start, n_start + 1,
/// ... within tol_rel, trying n_start = 1, 2, 3 in turn. sigmas, if given,
/// must match offsets in length. Throws UnsortedInput or InvalidTolerance on
/// bad input; an offset list that fits no hypothesis is a returned failure.
std::variant<ModeAssignment, AssignmentFailure> assign_modes(
    std::span<const double> offsets, double tol_rel,
    std::span<const double> sigmas = {});

struct TorusLevel {
  std::vector<int> modes;
  double delta_E = 0.0;
  double sigma = 0.0;
};

struct TorusFit {
  std::vector<double> radii;
  std::vector<double> coeffs;
  double rms_residual = 0.0;
};

/// Reported when the mode sampling cannot separate all coefficients.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& message,
                     std::vector<std::vector<double>> directions)
      : Error(ErrorKind::RankDeficient, message),
        directions_(std::move(directions)) {}

  /// Unit vectors in coefficient space that the data does not constrain.
  const std::vector<std::vector<double>>& directions() const noexcept {
    return directions_;
  }

 private:
  std::vector<std::vector<double>> directions_;
};

/// Weighted least squares for c_i = hbar^2 / (2 m R_i^2) from
/// delta_E = sum_i c_i n_i^2.
TorusFit fit_torus_radii(std::span<const TorusLevel> levels,
                         const PhysicalConfig& config, std::size_t d);

}  // namespace kkscatter
