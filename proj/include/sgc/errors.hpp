#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgc {

/// Failure categories raised by the model, solver, response and I/O layers.
/// Sweeps record the kind of each failed grid point instead of aborting.
enum class ErrorKind {
  Domain,
  SingularSystem,
  NonPhysicalState,
  StepUnstable,
  DegenerateProbe,
  LocalFieldPole,
  EmptyTable,
  Parse,
  Validation,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NonPhysicalState: return "NonPhysicalState";
    case ErrorKind::StepUnstable: return "StepUnstable";
    case ErrorKind::DegenerateProbe: return "DegenerateProbe";
    case ErrorKind::LocalFieldPole: return "LocalFieldPole";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sgc
