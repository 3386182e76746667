#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace innerdyn {

enum class ErrorCode {
  PoleProximity,
  PoleHit,
  NoConvergence,
  DerivativeVanishes,
  DomainError,
  AccuracyUnreachable,
  AtomProximity,
  OutsideRegion,
  NotInBasin,
  WindowBoundaryZero,
  BasinEscape,
  Inconclusive,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::AccuracyUnreachable: return "AccuracyUnreachable";
    case ErrorCode::AtomProximity: return "AtomProximity";
    case ErrorCode::OutsideRegion: return "OutsideRegion";
    case ErrorCode::NotInBasin: return "NotInBasin";
    case ErrorCode::WindowBoundaryZero: return "WindowBoundaryZero";
    case ErrorCode::BasinEscape: return "BasinEscape";
    case ErrorCode::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

/// Every numeric failure in the library is reported through this type; the
/// code tells callers which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace innerdyn
