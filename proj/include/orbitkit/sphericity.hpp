#pragma once

// Complexities c_O(G/H), Xi-sphericity verdicts, the Richardson cross-check
// and branching conditions.

#include <optional>
#include <string>
#include <vector>

#include "orbitkit/geometry.hpp"

namespace orbitkit {

/// Half-integer c with an explicit -infinity (empty intersection) and an
/// unknown state.
struct Complexity {
  enum class State { Finite, NegInfinity, Unknown };
  State state = State::Finite;
  int twice = 0;  // 2c when finite
  bool exact = true;  // false when the open dimension is only a sampled lower bound

  static Complexity finite(int twice_value, bool exact = true) { return {State::Finite, twice_value, exact}; }
  static Complexity neg_infinity() { return {State::NegInfinity, 0, true}; }
  static Complexity unknown() { return {State::Unknown, 0, false}; }
  bool is_finite() const { return state == State::Finite; }
  std::string to_string() const;  // "-1", "1/2", "-inf", "unknown"
};
/// max with -inf below everything; unknown is absorbing.
Complexity cmax(const Complexity& a, const Complexity& b);
Complexity cadd(const Complexity& a, const Complexity& b);

struct OrbitComplexity {
  OrbitLabel orbit;
  int orbit_dim = 0;
  CertifiedDim open;
  Complexity c;
  std::string error;  // budget message when the computation was abandoned
};

/// c_O(G/H) = dim(O cap h^perp) - dim O / 2, from the open stratum.
OrbitComplexity complexity(const OrbitLabel& o, const Subspace& h, const EngineOptions& opt = {});
/// Same with the subspace V standing in for h^perp.
OrbitComplexity complexity_on(const OrbitLabel& o, const Subspace& v, const EngineOptions& opt = {});

struct ComplexityReport {
  std::vector<OrbitComplexity> per_orbit;
  Complexity c_xi;
};
ComplexityReport complexity_report(const OrbitSet& xi, const Subspace& h, const EngineOptions& opt = {});

enum class Verdict { Spherical, NotSpherical, Unknown };
std::string verdict_name(Verdict v);

struct OrbitCheck {
  OrbitLabel orbit;
  int orbit_dim = 0;
  CertifiedDim closed;
  std::optional<CertifiedDim> open;  // only computed when the closed bound fails
  bool passes = false;
  std::string error;
};

struct SphericityVerdict {
  Verdict verdict = Verdict::Unknown;
  std::vector<OrbitCheck> per_orbit;
  std::optional<OrbitLabel> witness;
  std::vector<OrbitLabel> blocking;
  bool budget_hit = false;
};

/// Xi must be downward closed. Spherical when every closed intersection meets
/// the bound dim O / 2; NotSpherical from an open-stratum witness; otherwise
/// Unknown.
SphericityVerdict xi_spherical(const OrbitSet& xi, const Subspace& h, const EngineOptions& opt = {});
SphericityVerdict xi_spherical_on(const OrbitSet& xi, const Subspace& v, const EngineOptions& opt = {});

enum class Agreement { Agree, Disagree, Inconclusive };
std::string agreement_name(Agreement a);

struct CrossCheck {
  OrbitLabel richardson;
  SphericityVerdict route_a;
  CertifiedDim route_b;  // moment fiber bound for G acting on G/H x G/P
  int base_dim = 0;
  Agreement agreement = Agreement::Inconclusive;
  std::optional<Verdict> value;  // set on agreement
};

/// Route A: closure(O_P)-sphericity of G/H. Route B: sampled moment fiber on
/// [h^perp, p^perp]; it can only refute finiteness.
CrossCheck richardson_cross_check(const AlgebraPtr& g, const std::vector<std::vector<int>>& p, const Subspace& h,
                                  const EngineOptions& opt = {});

/// A homomorphism h -> g of classical algebras, given on the basis of h.
struct Embedding {
  AlgebraPtr g;
  AlgebraPtr h;
  std::vector<QMatrix> images;

  AlgebraPtr product() const;  // g x h
  Subspace delta() const;      // {(phi(Y), Y)}
  Subspace image() const;      // phi(h) inside g
  /// {(X, pi_h X)}: pairs of functionals agreeing on h.
  Subspace restriction_graph() const;
};

/// gl_n with a block-diagonal Levi gl_{c1} x ... (type A only).
Embedding levi_embedding(const AlgebraPtr& g, const std::vector<int>& composition);

struct BranchingReport {
  SphericityVerdict condition_b;  // over all pairs O1' <= O1, O2' <= O2
  bool richardson = false;
  std::optional<SphericityVerdict> g_mod_q;   // G/phi(Q) is closure(O_P)-spherical
  std::optional<CertifiedDim> double_cosets;  // moment fiber on [p^perp, phi(q)^perp]
  int double_coset_base = 0;
  std::optional<Verdict> g_mod_p_as_h_space;  // via complexities
  Agreement agreement = Agreement::Inconclusive;
};

/// Condition (b) for the pair (O1, O2); when parabolics P of g and Q of h are
/// supplied with O1 = O_P and O2 = O_Q, the equivalent Richardson
/// formulations are evaluated too.
BranchingReport branching_check(const Embedding& e, const OrbitLabel& o1, const OrbitLabel& o2,
                                const std::optional<std::vector<std::vector<int>>>& p = std::nullopt,
                                const std::optional<std::vector<std::vector<int>>>& q = std::nullopt,
                                const EngineOptions& opt = {});

struct Sandwich {
  Complexity left, middle, right;
  Agreement holds = Agreement::Inconclusive;  // Agree: both inequalities hold
};

/// c_{closure O2}(G/P as H-space) <= c_{closure(O_P x O2)}(G x H / Delta H)
///   <= left - min_{O1' <= O_P} c_{O1'}(G/P).
Sandwich branch_complexity_sandwich(const Embedding& e, const std::vector<std::vector<int>>& p, const OrbitLabel& o2,
                                    const EngineOptions& opt = {});

}  // namespace orbitkit
