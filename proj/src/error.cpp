#include "hypcone/error.hpp"

namespace hypcone {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoBranch: return "NoBranch";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::NotElliptic: return "NotElliptic";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::CoincidentFixedPoints: return "CoincidentFixedPoints";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::TriangleInequality: return "TriangleInequality";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::WallAngle: return "WallAngle";
    case ErrorKind::NumericalCollapse: return "NumericalCollapse";
    case ErrorKind::UnflippableConfiguration: return "UnflippableConfiguration";
    case ErrorKind::NonTermination: return "NonTermination";
  }
  return "Unknown";
}

}  // namespace hypcone
