#include "plumbroot/error.hpp"

namespace plumbroot {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotNegativeDefinite: return "NotNegativeDefinite";
    case ErrorKind::MoveNotApplicable: return "MoveNotApplicable";
    case ErrorKind::MoveMismatch: return "MoveMismatch";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::NotCharacteristic: return "NotCharacteristic";
    case ErrorKind::NotDeltaParity: return "NotDeltaParity";
    case ErrorKind::SeedsExhausted: return "SeedsExhausted";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::A3Violated: return "A3Violated";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace plumbroot
