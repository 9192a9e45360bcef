#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orbitkit/poly.hpp"

namespace orbitkit {

struct GroebnerOptions {
  std::size_t pair_budget = 20000;
  int max_degree = 40;
};

struct GroebnerBasis {
  PrimeField field{kPrime1};
  std::size_t nvars = 0;
  std::vector<Poly> polys;  // reduced, monic, sorted by leading monomial
  std::size_t pairs_reduced = 0;

  bool is_unit() const { return polys.size() == 1 && polys[0].is_constant(); }
};

/// Buchberger with Gebauer-Moeller pair pruning and normal selection.
/// Throws BudgetExceeded past the pair or degree cap.
GroebnerBasis groebner(const Ideal& ideal, const GroebnerOptions& opt = {});

/// Full reduction of p modulo the basis.
Poly normal_form(const Poly& p, const GroebnerBasis& g);

/// Dimension of the quotient ring: nvars minus the least number of
/// variables hitting the support of every leading monomial; -1 for the unit
/// ideal.
int krull_dim(const GroebnerBasis& g);

/// Convenience: linear elimination, Groebner basis, dimension.
int ideal_dim(Ideal ideal, const GroebnerOptions& opt = {});

struct TwoPrimeResult {
  int value = 0;
  std::vector<std::uint64_t> primes;
  bool agreed = true;  // false when the third prime had to break a tie
};

/// Runs `build` at kPrime1 and kPrime2 (in parallel); on disagreement tries
/// kPrime3 and accepts a majority with a warning on stderr; otherwise throws
/// UnluckyPrime.
TwoPrimeResult two_prime_dim(const std::function<Ideal(const PrimeField&)>& build,
                             const GroebnerOptions& opt = {});

/// Number of two-prime disagreements seen by this process.
std::size_t prime_disagreements();

}  // namespace orbitkit
