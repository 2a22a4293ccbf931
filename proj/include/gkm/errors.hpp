#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gkm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotABasisError : Error {
  using Error::Error;
};

struct SizeLimitError : Error {
  using Error::Error;
};

struct InconsistentFibrationError : Error {
  using Error::Error;
};

struct NonIntegralError : Error {
  using Error::Error;
};

struct WrongBaseError : Error {
  using Error::Error;
};

struct NotDelzantError : Error {
  using Error::Error;
};

struct NotProductTypeError : Error {
  using Error::Error;
};

struct PreconditionUnmetError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg), line(line_), column(column_) {}
};

struct SemanticError : Error {
  using Error::Error;
};

/// Node counter for backtracking searches. Exceeding the limit raises
/// SizeLimitError. The default limit comes from the GKM_NODE_BUDGET
/// environment variable, falling back to 2^24.
class SearchBudget {
 public:
  SearchBudget();
  explicit SearchBudget(std::uint64_t limit) : limit_(limit) {}

  void tick(std::uint64_t cost = 1) {
    used_ += cost;
    if (used_ > limit_) {
      throw SizeLimitError("search node budget exceeded (" +
                           std::to_string(limit_) + " nodes)");
    }
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

}  // namespace gkm
