#include "kkscatter/radius_inference.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace kkscatter {

namespace {

// Singular values below this fraction of the largest are treated as zero.
constexpr double kRankTolerance = 1e-10;

// 1/sigma^2, or uniform weights when every sigma is zero.
template <typename SigmaOf, typename Range>
std::vector<double> weights_for(const Range& levels, SigmaOf sigma_of) {
  const auto zero = std::count_if(levels.begin(), levels.end(),
                                  [&](const auto& l) { return sigma_of(l) == 0.0; });
  const auto total = static_cast<std::ptrdiff_t>(std::size(levels));
  if (zero != 0 && zero != total) {
    throw Error(ErrorKind::InvalidParameter,
                "either all or none of the uncertainties may be zero");
  }
  std::vector<double> w;
  w.reserve(std::size(levels));
  for (const auto& l : levels) {
    const double s = sigma_of(l);
    w.push_back(zero == total ? 1.0 : 1.0 / (s * s));
  }
  return w;
}

void check_sigma(double sigma) {
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "uncertainty must be finite and >= 0");
  }
}

}  // namespace

MeasuredLevel::MeasuredLevel(int n, double delta_E, double sigma)
    : n_(n), delta_E_(delta_E), sigma_(sigma) {
  if (n < 0) {
    throw Error(ErrorKind::InvalidParameter, "mode index must be >= 0");
  }
  check_sigma(sigma);
  if (!std::isfinite(delta_E) || (n > 0 && !(delta_E > 0.0)) ||
      (n == 0 && delta_E != 0.0)) {
    throw Error(ErrorKind::InconsistentLadder,
                "inconsistent ladder: offset " + std::to_string(delta_E) +
                    " for mode " + std::to_string(n));
  }
}

double radius_from_coeff(double c, const PhysicalConfig& config) {
  return config.hbar() / std::sqrt(2.0 * config.mass() * c);
}

RadiusFit fit_radius(std::span<const MeasuredLevel> levels,
                     const PhysicalConfig& config, const FitOptions& options) {
  if (levels.empty()) {
    throw Error(ErrorKind::NoModes, "no levels to fit");
  }
  if (std::none_of(levels.begin(), levels.end(),
                   [](const MeasuredLevel& l) { return l.n() > 0; })) {
    throw Error(ErrorKind::NoModes, "all levels have mode n = 0");
  }
  const auto w = weights_for(levels, [](const MeasuredLevel& l) { return l.sigma(); });

  RadiusFit fit;
  if (options.with_intercept) {
    // Weighted straight line dE = b + c x with x = n^2.
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double x = static_cast<double>(levels[i].n()) * levels[i].n();
      const double y = levels[i].delta_E();
      sw += w[i];
      sx += w[i] * x;
      sy += w[i] * y;
      sxx += w[i] * x * x;
      sxy += w[i] * x * y;
    }
    const double det = sw * sxx - sx * sx;
    if (!(det > 0.0)) {
      throw Error(ErrorKind::RankDeficient,
                  "intercept fit needs at least two distinct modes");
    }
    fit.curvature_coeff = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
  } else {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double n2 = static_cast<double>(levels[i].n()) * levels[i].n();
      num += w[i] * n2 * levels[i].delta_E();
      den += w[i] * n2 * n2;
    }
    fit.curvature_coeff = num / den;
  }
  if (!(fit.curvature_coeff > 0.0)) {
    throw Error(ErrorKind::InconsistentLadder,
                "inconsistent ladder: fitted curvature is not positive");
  }
  fit.radius = radius_from_coeff(fit.curvature_coeff, config);

  double sum_sq = 0.0;
  for (const auto& l : levels) {
    const double r =
        l.delta_E() - fit.intercept -
        fit.curvature_coeff * static_cast<double>(l.n()) * l.n();
    sum_sq += r * r;
  }
  fit.rms_residual = std::sqrt(sum_sq / static_cast<double>(levels.size()));
  return fit;
}

std::variant<ModeAssignment, AssignmentFailure> assign_modes(
    std::span<const double> offsets, double tol_rel,
    std::span<const double> sigmas) {
  if (!(tol_rel > 0.0 && tol_rel < 0.5)) {
    throw Error(ErrorKind::InvalidTolerance,
                "relative tolerance must lie in (0, 0.5)");
  }
  if (offsets.empty()) {
    throw Error(ErrorKind::NoModes, "no offsets to assign");
  }
  if (!sigmas.empty() && sigmas.size() != offsets.size()) {
    throw Error(ErrorKind::InvalidParameter,
                "sigmas and offsets differ in length");
  }
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!(std::isfinite(offsets[i]) && offsets[i] > 0.0)) {
      throw Error(ErrorKind::InconsistentLadder,
                  "inconsistent ladder: offsets must be positive");
    }
    if (i > 0 && offsets[i] < offsets[i - 1]) {
      throw Error(ErrorKind::UnsortedInput,
                  "offsets must be sorted ascending");
    }
  }

  std::ostringstream why;
  for (int n_start = 1; n_start <= 3; ++n_start) {
    const double c = offsets.front() / (static_cast<double>(n_start) * n_start);
    bool matched = true;
    for (std::size_t i = 1; i < offsets.size(); ++i) {
      const double n = static_cast<double>(n_start) + static_cast<double>(i);
      const double expected = c * n * n;
      if (std::abs(offsets[i] - expected) > tol_rel * expected) {
        if (n_start > 1) why << "; ";
        why << "n_start=" << n_start << ": offset[" << i << "]=" << offsets[i]
            << " expected " << expected << " for n=" << n;
        matched = false;
        break;
      }
    }
    if (!matched) continue;

    ModeAssignment result;
    result.n_start = n_start;
    result.coeff = c;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      result.levels.emplace_back(n_start + static_cast<int>(i), offsets[i],
                                 sigmas.empty() ? 0.0 : sigmas[i]);
    }
    return result;
  }
  return AssignmentFailure{"no n^2 ladder with n_start <= 3 fits: " + why.str()};
}

TorusFit fit_torus_radii(std::span<const TorusLevel> levels,
                         const PhysicalConfig& config, std::size_t d) {
  if (d == 0 || d > kMaxCompactDims) {
    throw Error(ErrorKind::InvalidGeometry,
                "number of compact dimensions must be in [1, 6]");
  }
  if (levels.empty()) {
    throw Error(ErrorKind::NoModes, "no levels to fit");
  }
  for (const auto& l : levels) {
    if (l.modes.size() != d) {
      throw Error(ErrorKind::DimensionMismatch,
                  "mode vector length differs from d = " + std::to_string(d));
    }
    check_sigma(l.sigma);
    const bool excited = std::any_of(l.modes.begin(), l.modes.end(),
                                     [](int n) { return n != 0; });
    if (!std::isfinite(l.delta_E) || (excited && !(l.delta_E > 0.0))) {
      throw Error(ErrorKind::InconsistentLadder,
                  "inconsistent ladder: offsets of excited modes must be > 0");
    }
  }
  const auto w = weights_for(levels, [](const TorusLevel& l) { return l.sigma; });

  const auto rows = static_cast<Eigen::Index>(levels.size());
  const auto cols = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& l = levels[static_cast<std::size_t>(i)];
    const double sw = std::sqrt(w[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double n = l.modes[static_cast<std::size_t>(j)];
      design(i, j) = sw * n * n;
    }
    rhs(i) = sw * l.delta_E;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                        Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<std::vector<double>> deficient;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double s = j < sv.size() ? sv(j) : 0.0;
    if (!(s > kRankTolerance * largest) || largest == 0.0) {
      const Eigen::VectorXd v = svd.matrixV().col(j);
      deficient.emplace_back(v.data(), v.data() + v.size());
    }
  }
  if (!deficient.empty()) {
    std::ostringstream msg;
    msg << "mode sampling leaves " << deficient.size()
        << " coefficient direction(s) undetermined:";
    for (const auto& v : deficient) {
      msg << " (";
      for (std::size_t k = 0; k < v.size(); ++k) msg << (k ? ", " : "") << v[k];
      msg << ")";
    }
    throw RankDeficientError(msg.str(), std::move(deficient));
  }

  const Eigen::VectorXd c = svd.solve(rhs);
  TorusFit fit;
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (!(c(j) > 0.0)) {
      throw Error(ErrorKind::InconsistentLadder,
                  "inconsistent ladder: fitted coefficient " +
                      std::to_string(j) + " is not positive");
    }
    fit.coeffs.push_back(c(j));
    fit.radii.push_back(radius_from_coeff(c(j), config));
  }
  double sum_sq = 0.0;
  for (const auto& l : levels) {
    double model = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      model += fit.coeffs[j] * static_cast<double>(l.modes[j]) * l.modes[j];
    }
    sum_sq += (l.delta_E - model) * (l.delta_E - model);
  }
  fit.rms_residual = std::sqrt(sum_sq / static_cast<double>(levels.size()));
  return fit;
}

}  // namespace kkscatter
