#include "kkscatter/currents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"

namespace kkscatter {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Incident currents at most this fraction of the field's overall scale
// count as nodes.
constexpr double kNodeThreshold = 1e-12;

Complex partial_amplitude(Part part, const ScatteringAmplitudes& amps,
                          Complex A1) {
  switch (part) {
    case Part::Incident: return A1;
    case Part::Reflected: return A1 * amps.r();
    case Part::Transmitted: return A1 * amps.t();
    case Part::Total: break;
  }
  throw Error(ErrorKind::RegionMismatch,
              "current is defined per partial wave, not for the total");
}

void validate_points(std::span<const SurfacePoint> points) {
  if (points.empty()) {
    throw Error(ErrorKind::InvalidGrid, "current grid is empty");
  }
}

void validate_distinct(std::span<const SurfacePoint> points) {
  std::vector<std::pair<double, double>> keys;
  keys.reserve(points.size());
  for (const auto& p : points) keys.emplace_back(p.phi(), p.z());
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw Error(ErrorKind::InvalidGrid, "current grid has repeated points");
  }
}

}  // namespace

SurfacePoint::SurfacePoint(double phi, double z) : phi_(phi), z_(z) {
  if (!std::isfinite(phi) || !std::isfinite(z)) {
    throw Error(ErrorKind::InvalidParameter, "surface point must be finite");
  }
  phi_ = std::fmod(phi, kTwoPi);
  if (phi_ < 0.0) phi_ += kTwoPi;
  if (phi_ >= kTwoPi) phi_ = 0.0;
}

double CurrentVector::norm() const noexcept { return std::hypot(j_phi, j_z); }

Region region_of(Part part) {
  switch (part) {
    case Part::Incident:
    case Part::Reflected: return Region::I;
    case Part::Transmitted: return Region::II;
    case Part::Total: break;
  }
  throw Error(ErrorKind::RegionMismatch, "total wave spans both regions");
}

Complex angular_factor(double phi, int n, Complex F1, Complex G1) {
  const double arg = n * phi;
  return F1 * std::cos(arg) + G1 * std::sin(arg);
}

Complex wavefunction(Region region, Part part, const SurfacePoint& point,
                     const ScatteringSetup& setup,
                     const ScatteringAmplitudes& amplitudes, Complex A1) {
  if (part != Part::Total && region_of(part) != region) {
    throw Error(ErrorKind::RegionMismatch,
                region == Region::I
                    ? "transmitted wave does not exist in region I"
                    : "incident and reflected waves do not exist in region II");
  }
  const Complex angular =
      angular_factor(point.phi(), setup.n(), setup.F1(), setup.G1());
  const double kz = setup.k1() * point.z();
  const Complex forward = std::exp(kI * kz);
  const Complex backward = std::exp(-kI * kz);

  Complex axial;
  switch (part) {
    case Part::Incident: axial = forward; break;
    case Part::Reflected: axial = amplitudes.r() * backward; break;
    case Part::Transmitted: axial = amplitudes.t() * forward; break;
    case Part::Total:
      axial = region == Region::I ? forward + amplitudes.r() * backward
                                  : amplitudes.t() * forward;
      break;
  }
  return A1 * axial * angular;
}

CurrentVector current_closed_form(Part part, const SurfacePoint& point,
                                  const ScatteringSetup& setup,
                                  const ScatteringAmplitudes& amplitudes,
                                  Complex A1) {
  const Complex X = partial_amplitude(part, amplitudes, A1);
  const double prefactor =
      setup.config().hbar() * std::norm(X) / (2.0 * setup.config().mass());
  const Complex F = setup.F1();
  const Complex G = setup.G1();
  const double n = setup.n();
  const double phi = point.phi();

  // (i n / R)(F G* - F* G) is real: the bracket is purely imaginary.
  const Complex bracket = F * std::conj(G) - std::conj(F) * G;
  const double j_phi = prefactor * (kI * n / setup.radius() * bracket).real();

  const double c = std::cos(n * phi);
  const double s = std::sin(n * phi);
  const double density = std::norm(F) * c * c +
                         0.5 * (F * std::conj(G) + std::conj(F) * G).real() *
                             std::sin(2.0 * n * phi) +
                         std::norm(G) * s * s;
  const double sign = part == Part::Reflected ? -1.0 : 1.0;
  const double j_z = sign * prefactor * 2.0 * setup.k1() * density;
  return {j_phi, j_z};
}

NumericalCurrent current_numerical(Part part, const SurfacePoint& point,
                                   const ScatteringSetup& setup,
                                   const ScatteringAmplitudes& amplitudes,
                                   Complex A1, double h) {
  if (!(std::isfinite(h) && h > 0.0)) {
    throw Error(ErrorKind::InvalidStep,
                "finite-difference step must be > 0, got " + std::to_string(h));
  }
  const Region region = region_of(part);
  auto psi = [&](double phi, double z) {
    return wavefunction(region, part, SurfacePoint(phi, z), setup, amplitudes,
                        A1);
  };
  const double phi = point.phi();
  const double z = point.z();

  const Complex value = psi(phi, z);
  const Complex d_z = (psi(phi, z + h) - psi(phi, z - h)) / (2.0 * h);
  const Complex d_phi =
      (psi(phi + h, z) - psi(phi - h, z)) / (2.0 * h * setup.radius());

  const Complex scale = kI * setup.config().hbar() / (2.0 * setup.config().mass());
  const Complex j_phi =
      scale * (value * std::conj(d_phi) - std::conj(value) * d_phi);
  const Complex j_z = scale * (value * std::conj(d_z) - std::conj(value) * d_z);

  return {{j_phi.real(), j_z.real()},
          std::max(std::abs(j_phi.imag()), std::abs(j_z.imag()))};
}

std::pair<double, double> coefficients_from_currents(
    const ScatteringSetup& setup, const ScatteringAmplitudes& amplitudes,
    Complex A1, std::span<const SurfacePoint> grid) {
  validate_points(grid);

  // Largest possible incident current magnitude for this setup.
  const double abs_F = std::abs(setup.F1());
  const double abs_G = std::abs(setup.G1());
  const double scale =
      setup.config().hbar() * std::norm(A1) / (2.0 * setup.config().mass()) *
      (2.0 * setup.k1() * (abs_F * abs_F + abs_G * abs_G) +
       2.0 * std::abs(setup.n()) / setup.radius() * abs_F * abs_G);

  const SurfacePoint* best = nullptr;
  double best_norm = 0.0;
  for (const auto& p : grid) {
    const double norm =
        current_closed_form(Part::Incident, p, setup, amplitudes, A1).norm();
    if (norm > best_norm) {
      best_norm = norm;
      best = &p;
    }
  }
  if (best == nullptr || !(best_norm > kNodeThreshold * scale)) {
    throw Error(ErrorKind::DegenerateGrid,
                "degenerate grid on nodal set: incident current vanishes at "
                "every grid point");
  }
  const double reflected =
      current_closed_form(Part::Reflected, *best, setup, amplitudes, A1).norm();
  const double transmitted =
      current_closed_form(Part::Transmitted, *best, setup, amplitudes, A1)
          .norm();
  return {reflected / best_norm, transmitted / best_norm};
}

std::vector<SurfacePoint> region_grid(Part part, const GridSpec& spec) {
  if (spec.n_phi == 0 || spec.n_z == 0) {
    throw Error(ErrorKind::InvalidGrid, "grid needs at least one phi and z");
  }
  if (!(std::isfinite(spec.z_min) && std::isfinite(spec.z_max)) ||
      spec.z_max < spec.z_min) {
    throw Error(ErrorKind::InvalidGrid, "z range must satisfy zmin <= zmax");
  }
  if (spec.n_z > 1 && spec.z_max == spec.z_min) {
    throw Error(ErrorKind::InvalidGrid, "several z samples need zmin < zmax");
  }
  const Region region = region_of(part);
  std::vector<SurfacePoint> points;
  for (std::size_t i = 0; i < spec.n_phi; ++i) {
    const double phi = kTwoPi * static_cast<double>(i) /
                       static_cast<double>(spec.n_phi);
    for (std::size_t j = 0; j < spec.n_z; ++j) {
      const double z =
          spec.n_z == 1
              ? spec.z_min
              : spec.z_min + (spec.z_max - spec.z_min) * static_cast<double>(j) /
                                 static_cast<double>(spec.n_z - 1);
      if ((region == Region::I && z < 0.0) || (region == Region::II && z > 0.0)) {
        points.emplace_back(phi, z);
      }
    }
  }
  return points;
}

CurrentField evaluate_current_field(Part part,
                                    std::span<const SurfacePoint> points,
                                    const ScatteringSetup& setup,
                                    const ScatteringAmplitudes& amplitudes,
                                    Complex A1) {
  validate_points(points);
  validate_distinct(points);
  (void)region_of(part);
  CurrentField field{part, {}, A1};
  field.samples.resize(points.size(), {SurfacePoint(0.0, 0.0), {}});
  detail::parallel_for(points.size(), [&](std::size_t i) {
    field.samples[i] = {points[i], current_closed_form(part, points[i], setup,
                                                       amplitudes, A1)};
  });
  return field;
}

namespace serial {

CurrentField evaluate_current_field(Part part,
                                    std::span<const SurfacePoint> points,
                                    const ScatteringSetup& setup,
                                    const ScatteringAmplitudes& amplitudes,
                                    Complex A1) {
  validate_points(points);
  validate_distinct(points);
  (void)region_of(part);
  CurrentField field{part, {}, A1};
  field.samples.reserve(points.size());
  for (const auto& p : points) {
    field.samples.emplace_back(
        p, current_closed_form(part, p, setup, amplitudes, A1));
  }
  return field;
}

}  // namespace serial

}  // namespace kkscatter
