#pragma once

#include <span>
#include <utility>
#include <vector>

#include "kkscatter/core_types.hpp"

namespace kkscatter {

/// Point on the cylinder surface; phi is wrapped into [0, 2 pi).
class SurfacePoint {
 public:
  SurfacePoint(double phi, double z);

  double phi() const noexcept { return phi_; }
  double z() const noexcept { return z_; }

  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;

 private:
  double phi_;
  double z_;
};

/// phi-hat and z-hat components of a probability current density.
struct CurrentVector {
  double j_phi = 0.0;
  double j_z = 0.0;

  double norm() const noexcept;
};

enum class Region { I, II };
enum class Part { Incident, Reflected, Transmitted, Total };

/// Region in which a partial wave lives (Total has no fixed region).
Region region_of(Part part);

struct CurrentField {
  Part part;
  std::vector<std::pair<SurfacePoint, CurrentVector>> samples;
  Complex amplitude_A1{1.0, 0.0};
};

/// F1 cos(n phi) + G1 sin(n phi).
Complex angular_factor(double phi, int n, Complex F1, Complex G1);

/// psi_i = A1 e^{i k1 z} Phi, psi_r = A1 r e^{-i k1 z} Phi,
/// psi_t = A1 t e^{i k1 z} Phi. Total is psi_i + psi_r in region I and psi_t
/// in region II. Throws RegionMismatch for an incident or reflected part in
/// region II, or a transmitted part in region I.
Complex wavefunction(Region region, Part part, const SurfacePoint& point,
                     const ScatteringSetup& setup,
                     const ScatteringAmplitudes& amplitudes,
                     Complex A1 = {1.0, 0.0});

/// Closed-form current of one partial wave:
///   j_phi = (hbar |X|^2 / 2m) (i n / R) (F1 G1* - F1* G1)
///   j_z   = +/- (hbar |X|^2 / 2m) 2 k1 |Phi(phi)|^2
/// with X in {A1, A1 r, A1 t} and the minus sign for the reflected wave.
CurrentVector current_closed_form(Part part, const SurfacePoint& point,
                                  const ScatteringSetup& setup,
                                  const ScatteringAmplitudes& amplitudes,
                                  Complex A1 = {1.0, 0.0});

struct NumericalCurrent {
  CurrentVector current;
  /// Largest |Im| of the two components of (i hbar / 2m)(psi grad psi* -
  /// psi* grad psi); zero in exact arithmetic.
  double imaginary_residue = 0.0;
};

/// J = (i hbar / 2m)(psi grad psi* - psi* grad psi) evaluated with central
/// differences of step h in z and in phi (the phi gradient carries 1/R).
/// Independent of current_closed_form; used as its oracle.
NumericalCurrent current_numerical(Part part, const SurfacePoint& point,
                                   const ScatteringSetup& setup,
                                   const ScatteringAmplitudes& amplitudes,
                                   Complex A1, double h);

/// (R1, T1) as |J_r| / |J_i| and |J_t| / |J_i| with the Euclidean norm,
/// evaluated at the grid point where the incident current is largest.
/// Throws DegenerateGrid when every point sits on a node of the incident
/// current.
std::pair<double, double> coefficients_from_currents(
    const ScatteringSetup& setup, const ScatteringAmplitudes& amplitudes,
    Complex A1, std::span<const SurfacePoint> grid);

/// Uniform phi x z lattice: phi_i = 2 pi i / n_phi, z spaced evenly over
/// [z_min, z_max] (z_min only when n_z = 1).
struct GridSpec {
  std::size_t n_phi = 0;
  std::size_t n_z = 0;
  double z_min = 0.0;
  double z_max = 0.0;
};

/// Lattice points belonging to the part's region: z < 0 for the incident
/// and reflected waves, z > 0 for the transmitted wave. Ordered phi-major.
std::vector<SurfacePoint> region_grid(Part part, const GridSpec& spec);

/// Closed-form current of one part on every point, computed in parallel.
/// samples[i] corresponds to points[i].
CurrentField evaluate_current_field(Part part,
                                    std::span<const SurfacePoint> points,
                                    const ScatteringSetup& setup,
                                    const ScatteringAmplitudes& amplitudes,
                                    Complex A1 = {1.0, 0.0});

namespace serial {
CurrentField evaluate_current_field(Part part,
                                    std::span<const SurfacePoint> points,
                                    const ScatteringSetup& setup,
                                    const ScatteringAmplitudes& amplitudes,
                                    Complex A1 = {1.0, 0.0});
}  // namespace serial

}  // namespace kkscatter
