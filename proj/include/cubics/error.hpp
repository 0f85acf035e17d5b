#pragma once

#include <stdexcept>
#include <string>

namespace cubics {

// A theorem-backed or table-backed check did not hold. On correct arithmetic
// this never fires; the CLI maps it to exit status 2.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search ran out of its configured candidate budget (exit status 3).
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size guard (field bound, census bound) was exceeded by the request.
class GuardExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Broken internal invariant: an arithmetic or bookkeeping bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cubics
