#pragma once

#include <cstdint>
#include <vector>

#include "orbitkit/rational.hpp"

namespace orbitkit {

/// Protocol primes for modular dimension computations.
inline constexpr std::uint64_t kPrime1 = 2147483629ULL;
inline constexpr std::uint64_t kPrime2 = 2147483587ULL;
/// Tie-breaker tried only when the first two disagree.
inline constexpr std::uint64_t kPrime3 = 2147483563ULL;

bool is_prime(std::uint64_t n);

/// Arithmetic in Z/p for p < 2^32.
struct PrimeField {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Throws UnluckyPrime on zero.
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t from_int(long long v) const;
  /// Throws UnluckyPrime if the denominator vanishes mod p.
  std::uint64_t from_rational(const Rational& q) const;
};

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

/// Rank of a matrix over Z/p (destroys a copy).
std::size_t rank_mod(ModMatrix m, const PrimeField& f);
ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b, const PrimeField& f);
ModMatrix to_mod(const QMatrix& m, const PrimeField& f);

}  // namespace orbitkit
