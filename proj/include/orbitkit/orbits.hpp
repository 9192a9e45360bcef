#pragma once

// Nilpotent orbits of classical factors, labelled by partitions.

#include <cstdint>
#include <string>
#include <vector>

#include "orbitkit/lie_algebra.hpp"

namespace orbitkit {

struct Partition {
  Family family = Family::A;
  std::vector<int> parts;  // weakly decreasing, positive

  int size() const;
  std::string to_string() const;  // "[2,1,1]"
  auto operator<=>(const Partition&) const = default;
};

/// One partition per factor.
using OrbitLabel = std::vector<Partition>;
std::string label_string(const OrbitLabel& l);  // "[2,1,1]x[2,2]"

struct OrbitSet {
  std::vector<OrbitLabel> orbits;
  bool closed = false;  // downward closed under the componentwise closure order
};

bool valid_partition(const Factor& f, const std::vector<int>& parts);
/// Sorts the parts and validates them for f; throws InputError.
Partition make_partition(const Factor& f, std::vector<int> parts);
/// "min", "reg", "zero", or a comma list like "2,1,1".
Partition parse_orbit(const Factor& f, const std::string& s);
/// Per-factor orbit list joined by 'x' ("minxmin"), or one word for all factors.
OrbitLabel parse_label(const LieType& t, const std::string& s);

/// All orbits of f, regular first, zero last. Memoized.
const std::vector<Partition>& orbit_catalog(const Factor& f);
Partition zero_orbit(const Factor& f);
Partition regular_orbit(const Factor& f);
/// Unique closure-minimal nonzero orbit; throws for gl1.
Partition minimal_orbit(const Factor& f);

/// r_k = sum max(l_i - k, 0) for k = 1..l_1 (last entry 0).
std::vector<int> rank_sequence(const Partition& p);
/// Dominance order; throws InputError on a size mismatch.
bool closure_leq(const Partition& a, const Partition& b);
bool closure_leq(const OrbitLabel& a, const OrbitLabel& b);
std::vector<int> transpose(const std::vector<int>& parts);

/// Standard representative in the fixed realization of f.
QMatrix representative(const Factor& f, const Partition& p);
/// Block-diagonal representative for a product type.
QMatrix representative(const LieType& t, const OrbitLabel& l);

/// Rank of Z -> [Z, e] on the factor. Memoized.
int orbit_dim(const Factor& f, const Partition& p);
int orbit_dim(const LieType& t, const OrbitLabel& l);

/// Jordan type from ranks of powers; throws InputError unless nilpotent.
Partition partition_of_element(const QMatrix& x, Family family = Family::A);
OrbitLabel partition_of_element(const LieType& t, const QMatrix& x);

/// Downward closure of one orbit, as a closed OrbitSet.
OrbitSet closure(const LieType& t, const OrbitLabel& l);
/// Full nilpotent cone of t.
OrbitSet nilpotent_cone(const LieType& t);

/// Richardson orbit of a parabolic: closure-maximal Jordan type among random
/// nilradical elements (entries in [-10, 10]). Throws ConstructionError if
/// the sampled types are incomparable or the result fails
/// dim O = 2 dim(nilradical).
OrbitLabel richardson_partition(const AlgebraPtr& g, const Parabolic& p, int trials = 8,
                                std::uint64_t seed = 0xA15B);

}  // namespace orbitkit
