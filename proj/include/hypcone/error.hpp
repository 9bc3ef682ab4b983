#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypcone {

enum class ErrorKind {
  NoBranch,
  NotSemisimple,
  NotElliptic,
  NotHyperbolic,
  CoincidentFixedPoints,
  DegenerateDirection,
  NoSolution,
  NotUnimodular,
  // surface
  NonManifold,
  Disconnected,
  TriangleInequality,
  NonPositiveLength,
  NotAdmissible,
  OutOfRange,
  DimensionMismatch,
  ParseError,
  // holonomy / poisson
  WallAngle,
  NumericalCollapse,
  // delaunay
  UnflippableConfiguration,
  NonTermination,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every domain failure; `kind()` lets callers
/// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hypcone
