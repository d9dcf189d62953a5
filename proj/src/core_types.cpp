#include "kkscatter/core_types.hpp"

#include <cmath>
#include <string>

namespace kkscatter {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "invalid configuration";
    case ErrorKind::InvalidGeometry: return "invalid geometry";
    case ErrorKind::NonPropagating: return "non-propagating incident wave";
    case ErrorKind::ZeroAngularAmplitude: return "zero angular amplitude pair";
    case ErrorKind::GeometryDimension: return "geometry dimension mismatch";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::RegionMismatch: return "part/region mismatch";
    case ErrorKind::InvalidStep: return "invalid step";
    case ErrorKind::InvalidGrid: return "invalid grid";
    case ErrorKind::DegenerateGrid: return "degenerate grid on nodal set";
    case ErrorKind::InvalidEnergy: return "invalid energy";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::InvalidBarrier: return "invalid barrier";
    case ErrorKind::InvalidWidths: return "invalid width list";
    case ErrorKind::InconsistentLadder: return "inconsistent ladder";
    case ErrorKind::NoModes: return "no nonzero modes";
    case ErrorKind::RankDeficient: return "rank-deficient mode sampling";
    case ErrorKind::UnsortedInput: return "unsorted input";
    case ErrorKind::InvalidTolerance: return "invalid tolerance";
  }
  return "unknown error";
}

PhysicalConfig::PhysicalConfig(double hbar, double mass)
    : hbar_(hbar), mass_(mass) {
  if (!(std::isfinite(hbar) && hbar > 0.0)) {
    throw Error(ErrorKind::InvalidConfig,
                "hbar must be positive and finite, got " + std::to_string(hbar));
  }
  if (!(std::isfinite(mass) && mass > 0.0)) {
    throw Error(ErrorKind::InvalidConfig,
                "mass must be positive and finite, got " + std::to_string(mass));
  }
}

CompactGeometry::CompactGeometry(std::vector<double> radii)
    : radii_(std::move(radii)) {
  if (radii_.empty() || radii_.size() > kMaxCompactDims) {
    throw Error(ErrorKind::InvalidGeometry,
                "number of compact dimensions must be in [1, 6], got " +
                    std::to_string(radii_.size()));
  }
  for (double r : radii_) {
    if (!(std::isfinite(r) && r > 0.0)) {
      throw Error(ErrorKind::InvalidGeometry,
                  "compactification radius must be positive, got " +
                      std::to_string(r));
    }
  }
}

ScatteringSetup make_setup(double lambda, double k1, int n, Complex F1,
                           Complex G1, const PhysicalConfig& config,
                           const CompactGeometry& geometry) {
  if (!std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidParameter, "delta strength must be finite");
  }
  if (!(std::isfinite(k1) && k1 > 0.0)) {
    throw Error(ErrorKind::NonPropagating,
                "non-propagating incident wave: k1 must be > 0, got " +
                    std::to_string(k1));
  }
  if (!(std::isfinite(F1.real()) && std::isfinite(F1.imag()) &&
        std::isfinite(G1.real()) && std::isfinite(G1.imag()))) {
    throw Error(ErrorKind::InvalidParameter,
                "angular amplitudes must be finite");
  }
  if (F1 == Complex{} && G1 == Complex{}) {
    throw Error(ErrorKind::ZeroAngularAmplitude,
                "angular amplitudes F1 and G1 are both zero");
  }
  if (geometry.dimension() != 1) {
    throw Error(ErrorKind::GeometryDimension,
                "scattering setup needs exactly one compact dimension, got " +
                    std::to_string(geometry.dimension()));
  }
  return ScatteringSetup(lambda, k1, n, F1, G1, config, geometry);
}

ScatteringAmplitudes::ScatteringAmplitudes(Complex r, Complex t, double R1,
                                           double T1)
    : r_(r), t_(t), R1_(R1), T1_(T1) {
  const bool ok = std::abs(R1 - std::norm(r)) <= kTolerance &&
                  std::abs(T1 - std::norm(t)) <= kTolerance &&
                  std::abs(R1 + T1 - 1.0) <= kTolerance &&
                  std::abs(1.0 + r - t) <= kTolerance && R1 >= 0.0 &&
                  T1 >= 0.0;
  if (!ok) {
    throw Error(ErrorKind::InvalidParameter,
                "amplitudes violate unitarity or continuity");
  }
}

}  // namespace kkscatter
