#include "foliage/error.hpp"

namespace foliage {

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "Ok";
    case Status::Parse: return "ParseError";
    case Status::Dicritical: return "Dicritical";
    case Status::HeightLimit: return "HeightLimitExceeded";
    case Status::NotIsolated: return "NotIsolatedSingularity";
    case Status::InvalidArg: return "InvalidArgument";
    case Status::Annotation: return "AnnotationError";
    case Status::ReducibleMinpoly: return "ReducibleMinimalPolynomial";
    case Status::NotReduced: return "NotReduced";
    case Status::BranchNotInvariant: return "BranchNotInvariant";
    case Status::NonIsolatedOnDivisor: return "NonIsolatedOnDivisor";
    case Status::Internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace foliage
