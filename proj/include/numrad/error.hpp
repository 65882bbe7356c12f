#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace numrad {

enum class ErrorKind {
  NotHermitian,
  NotSelfAdjoint,
  Singular,
  DimensionMismatch,
  DomainError,
  ConfigError,
  SpectrumOnBoundary,
  CertificationFailed,
  PathDisagreement,
  ParseError,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::SpectrumOnBoundary: return "SpectrumOnBoundary";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::PathDisagreement: return "PathDisagreement";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `value` carries the offending
/// quantity when one exists (e.g. the G1 certificate on CertificationFailed).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  std::optional<double> value_;
};

}  // namespace numrad
