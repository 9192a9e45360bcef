#pragma once

// Dimensions of orbit closures and orbits intersected with linear subspaces,
// and sampled moment-map fiber bounds.

#include <cstdint>
#include <string>
#include <vector>

#include "orbitkit/groebner.hpp"
#include "orbitkit/lie_algebra.hpp"
#include "orbitkit/orbits.hpp"

namespace orbitkit {

enum class CertKind { ExactGroebner, SampledLowerBound, Empty, Unknown };
std::string cert_kind_name(CertKind k);

struct Certificate {
  CertKind kind = CertKind::ExactGroebner;
  std::vector<std::uint64_t> primes;
  std::uint64_t seed = 0;
  int trials = 0;
  bool exhaustive = false;
  bool primes_agreed = true;
  // For localized strata: "generic" or the minor index per essential (factor, k).
  std::string witness;
  std::string note;
};

struct CertifiedDim {
  int value = -1;
  Certificate cert;
};

struct EngineOptions {
  GroebnerOptions groebner;
  int minor_budget = 200;
  int trials = 8;
  std::uint64_t seed = 0xA15B;
};

/// dim of closure(O_l) intersected with V, by rank conditions and a two-prime
/// Groebner computation. Memoized.
CertifiedDim closure_intersection_dim(const OrbitLabel& l, const Subspace& v, const EngineOptions& opt = {});

/// dim of O_l intersected with V. Exact when it meets the closed dimension or
/// when every minor tuple was tried; Empty/Unknown as described in the
/// certificate note. Memoized.
CertifiedDim open_stratum_dim(const OrbitLabel& l, const Subspace& v, const EngineOptions& opt = {});

/// Subspaces V_i of one ambient g. The base is the product of the orbits
/// G/Stab(V_i), of dimension sum dim V_i; the fiber over (g_i) is
/// {(phi_i) in (+) g_i V_i : sum phi_i = 0}.
struct MomentFiberInstance {
  std::vector<Subspace> spaces;
  std::size_t base_dim() const;
};

/// base_dim + min over sampled translates of the fiber dimension, computed
/// mod kPrime1.
CertifiedDim moment_fiber_lower_bound(const MomentFiberInstance& inst, int trials = 8, std::uint64_t seed = 0xA15B);

/// tr(a [x, y]).
Rational kks_pairing(const QMatrix& a, const QMatrix& x, const QMatrix& y);

}  // namespace orbitkit
