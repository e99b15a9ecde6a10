#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhergo {

/// Machine-readable failure classes. The CLI prints these verbatim.
enum class ErrorCategory {
  invalid_argument,
  out_of_range,
  separatrix,
  divergence,
  nonconvergence,
  stall,
  io,
  parse,
};

inline std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::out_of_range: return "out_of_range";
    case ErrorCategory::separatrix: return "separatrix";
    case ErrorCategory::divergence: return "divergence";
    case ErrorCategory::nonconvergence: return "nonconvergence";
    case ErrorCategory::stall: return "stall";
    case ErrorCategory::io: return "io";
    case ErrorCategory::parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Raised when an integrated state stops being finite.
class DivergenceError : public Error {
 public:
  DivergenceError(double t, const std::string& what)
      : Error(ErrorCategory::divergence, what), time_(t) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised by time averages whose two partial estimates disagree.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(double full, double half, const std::string& what)
      : Error(ErrorCategory::nonconvergence, what), full_(full), half_(half) {}

  double full_average() const noexcept { return full_; }
  double half_average() const noexcept { return half_; }

 private:
  double full_;
  double half_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCategory c, const std::string& what) {
  throw Error(c, what);
}

inline void require(bool ok, ErrorCategory c, const char* what) {
  if (!ok) throw Error(c, what);
}

}  // namespace detail
}  // namespace nhergo
