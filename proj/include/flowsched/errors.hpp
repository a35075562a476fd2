#pragma once

#include <stdexcept>
#include <string>

namespace flowsched {

enum class Err {
  CyclicRoute,
  DanglingRoute,
  RouteDeadEnd,
  UnusedLink,
  UnknownLink,
  TooLarge,
  InfeasibleSplit,
  NegativeLoad,
  EmptyScheduleSet,
  NegativeInput,
  DimensionMismatch,
  ConvergenceFailure,
  InsufficientSamples,
  InsufficientData,
  ConflictViolation,
  AssertionFailure,
  HorizonZero,
  ConfigError,
  IoError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::CyclicRoute: return "CyclicRoute";
    case Err::DanglingRoute: return "DanglingRoute";
    case Err::RouteDeadEnd: return "RouteDeadEnd";
    case Err::UnusedLink: return "UnusedLink";
    case Err::UnknownLink: return "UnknownLink";
    case Err::TooLarge: return "TooLarge";
    case Err::InfeasibleSplit: return "InfeasibleSplit";
    case Err::NegativeLoad: return "NegativeLoad";
    case Err::EmptyScheduleSet: return "EmptyScheduleSet";
    case Err::NegativeInput: return "NegativeInput";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::ConvergenceFailure: return "ConvergenceFailure";
    case Err::InsufficientSamples: return "InsufficientSamples";
    case Err::InsufficientData: return "InsufficientData";
    case Err::ConflictViolation: return "ConflictViolation";
    case Err::AssertionFailure: return "AssertionFailure";
    case Err::HorizonZero: return "HorizonZero";
    case Err::ConfigError: return "ConfigError";
    case Err::IoError: return "IoError";
  }
  return "Unknown";
}

class SimError : public std::runtime_error {
 public:
  SimError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw SimError(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace flowsched
