#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nk1 {

enum class ErrorKind {
  MixedRings,
  NotAUnit,
  NotSupported,
  BadShape,
  TruncationTooSmall,
  PreconditionFailed,
  SizeMismatch,
  NotInverse,
  AlreadyLinear,
  NotUnipotentAtZero,
  NotNilpotent,
  NonCommutativeRing,
  NotHomogeneous,
  ParseError,
  InternalError,
};

// The CLI prints these names verbatim.
constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotInverse: return "NotInverse";
    case ErrorKind::AlreadyLinear: return "AlreadyLinear";
    case ErrorKind::NotUnipotentAtZero: return "NotUnipotentAtZero";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NonCommutativeRing: return "NonCommutativeRing";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nk1
