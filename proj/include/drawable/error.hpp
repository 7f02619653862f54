#pragma once

#include <stdexcept>
#include <string>

namespace drawable {

// Every failure raised by the library carries a short machine-readable kind
// ("precondition", "parse", "budget", "size_cap", "io") next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& m) : Error("precondition", m) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("parse", m) {}
};

struct SizeCapError : Error {
  explicit SizeCapError(const std::string& m) : Error("size_cap", m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error("io", m) {}
};

// A numeric target could not be met; `achieved` is the best value reached.
struct BudgetError : Error {
  BudgetError(const std::string& m, double achieved)
      : Error("budget", m), achieved(achieved) {}
  double achieved;
};

}  // namespace drawable
