#include "triq/error.hpp"

namespace triq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitQuaternion: return "NonUnitQuaternion";
    case ErrorKind::NonUnitTrident: return "NonUnitTrident";
    case ErrorKind::ScalarResidueTooLarge: return "ScalarResidueTooLarge";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InsufficientNodes: return "InsufficientNodes";
    case ErrorKind::NearSingularPosition: return "NearSingularPosition";
    case ErrorKind::PolarSingularity: return "PolarSingularity";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::SingularFit: return "SingularFit";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
    case ErrorKind::GridMismatch: return "GridMismatch";
  }
  return "Unknown";
}

}  // namespace triq
