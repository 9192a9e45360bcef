#pragma once

#include <stdexcept>
#include <string>

namespace orbitkit {

/// Invalid user input: malformed types, compositions, partitions, spec files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical construction failed its own consistency check.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Groebner computation exceeded its pair or degree cap. Never a wrong answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Modular results disagree across primes (or a denominator vanishes mod p).
class UnluckyPrime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitkit
