#ifndef RRL_ERRORS_HPP
#define RRL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rrl {

// Error kinds map onto process exit codes: usage errors exit 2, exhausted
// budgets exit 3, everything else that aborts a run exits 1.
enum class ErrorKind {
  InvalidRestriction,
  InvalidDomain,
  InvalidArity,
  InvalidVertex,
  InvalidPadding,
  EmptyCondition,
  BudgetExceeded,
  FrameUnrealized,
  SampleTooLarge,
  PreconditionUnverified,
  OracleRejected,
  EditorStuck,
  Parse,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidRestriction: return "InvalidRestriction";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::InvalidArity: return "InvalidArity";
    case ErrorKind::InvalidVertex: return "InvalidVertex";
    case ErrorKind::InvalidPadding: return "InvalidPadding";
    case ErrorKind::EmptyCondition: return "EmptyCondition";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::FrameUnrealized: return "FrameUnrealized";
    case ErrorKind::SampleTooLarge: return "SampleTooLarge";
    case ErrorKind::PreconditionUnverified: return "PreconditionUnverified";
    case ErrorKind::OracleRejected: return "OracleRejected";
    case ErrorKind::EditorStuck: return "EditorStuck";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + what);
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage:
    case ErrorKind::Parse: return 2;
    case ErrorKind::BudgetExceeded: return 3;
    default: return 1;
  }
}

}  // namespace rrl

#endif
