#pragma once

#include <stdexcept>
#include <string>

namespace logsp {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  InvalidArgument,   // precondition violated by the caller
  DomainTooSmall,    // field mass reaches the boundary frame
  NonConvergence,    // iteration budget exhausted or step collapsed
  RegimeRefusal,     // parameters outside the hypotheses of the requested solver
  CapBoundary,       // capped minimizer converged onto A = k0
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace logsp
