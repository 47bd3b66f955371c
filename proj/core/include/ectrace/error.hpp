#ifndef ECTRACE_ERROR_HPP
#define ECTRACE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ectrace {

// Error categories double as process exit codes in the CLI.
enum class ErrorKind : int {
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kBudget = 4,
  kNumerical = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace ectrace

#endif  // ECTRACE_ERROR_HPP
