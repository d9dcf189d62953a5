#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kkscatter {

// Every failure the library reports is one of these kinds. The CLI maps all
// of them to the "domain error" exit code.
enum class ErrorKind {
  InvalidConfig,
  InvalidGeometry,
  NonPropagating,
  ZeroAngularAmplitude,
  GeometryDimension,
  InvalidParameter,
  RegionMismatch,
  InvalidStep,
  InvalidGrid,
  DegenerateGrid,
  InvalidEnergy,
  DimensionMismatch,
  InvalidBarrier,
  InvalidWidths,
  InconsistentLadder,
  NoModes,
  RankDeficient,
  UnsortedInput,
  InvalidTolerance,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kkscatter
