#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A class that should be a linear forest has a vertex of degree >= 3 or a cycle.
class NotLinearForest : public Error {
 public:
  using Error::Error;
};

// Caller passed an input that violates an operation's precondition.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A stage-level guarantee failed at runtime. `stage` names the check.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string stage, const std::string& what)
      : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

// A construction that must exist was not found.
class InternalInfeasible : public Error {
 public:
  using Error::Error;
};

// The instance itself cannot be solved (e.g. too many vertices).
class InfeasibleInput : public Error {
 public:
  using Error::Error;
};

// A search ran out of its node budget before deciding.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A fallback search exhausted every strategy.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

// A constructed auxiliary witness failed verification on every retry.
class WitnessRejected : public Error {
 public:
  WitnessRejected(unsigned long long seed, const std::string& what)
      : Error(what), seed_(seed) {}
  unsigned long long seed() const noexcept { return seed_; }

 private:
  unsigned long long seed_;
};

}  // namespace rainbow
