#pragma once

// Rational matrix realizations of classical Lie algebras, their subspaces,
// and the subalgebra constructions (parabolics, Levis, tori, diagonal and
// graph embeddings) that sphericity questions are asked about.
//
// Elements of a product algebra g_1 x ... x g_m are block-diagonal matrices;
// the pairing g x g -> Q is the trace form tr(XY) summed over blocks.

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "orbitkit/rational.hpp"

namespace orbitkit {

enum class Family { A, B, C, D };

char family_letter(Family f);

/// One simple (or gl) factor. Type A of rank n is gl_{n+1}; rank 0 gives gl_1.
struct Factor {
  Family family = Family::A;
  int rank = 1;

  /// Matrix size N of the defining representation.
  std::size_t size() const;
  std::size_t dim() const;
  /// Antidiagonal form: symmetric ones for B/D, [[0,K],[-K,0]] for C.
  /// Empty matrix for type A.
  QMatrix form() const;
  /// "gl3", "sp4", "so5", ...
  std::string name() const;
  void validate() const;

  auto operator<=>(const Factor&) const = default;
};

/// Parses "gl3", "sp4", "so8", or Cartan notation "A2", "C2", "D4".
Factor parse_factor(const std::string& s);

struct LieType {
  std::vector<Factor> factors;

  std::size_t size() const;
  std::size_t offset(std::size_t factor) const;
  std::string name() const;
  LieType concat(const LieType& other) const;

  /// "sp2xsp4", "gl1xgl1xsp2".
  static LieType parse(const std::string& s);
  auto operator<=>(const LieType&) const = default;
};

/// A Lie algebra presented as the span of block-diagonal rational matrices.
/// `classical()` marks the full algebra of its LieType, on which the trace
/// form is nondegenerate.
class Algebra {
 public:
  Algebra(LieType type, std::vector<QMatrix> basis, bool classical);

  const LieType& type() const { return type_; }
  const std::vector<QMatrix>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t matrix_size() const { return type_.size(); }
  bool classical() const { return classical_; }
  bool contains(const QMatrix& x) const;

 private:
  LieType type_;
  std::vector<QMatrix> basis_;
  bool classical_;
  SpanTracker span_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Memoized; throws InputError on invalid ranks, ConstructionError if the
/// resulting basis fails its dimension or closure check.
AlgebraPtr build_classical(const LieType& type);
/// Algebra {X : X^T J + J X = 0} for an explicit form. Rejects singular forms
/// and forms that are neither symmetric nor antisymmetric.
AlgebraPtr build_from_form(const QMatrix& form);
/// Block-diagonal product; classical iff both operands are.
AlgebraPtr product(const AlgebraPtr& g, const AlgebraPtr& h);

/// Linear subspace of an ambient algebra, stored by an independent basis.
struct Subspace {
  AlgebraPtr ambient;
  std::vector<QMatrix> basis;

  std::size_t dim() const { return basis.size(); }
  /// Canonical RREF string; equal spans give equal keys.
  std::string canonical_key() const;
};

/// Extracts an independent basis; throws InputError if an element lies
/// outside the ambient algebra.
Subspace make_subspace(const AlgebraPtr& g, const std::vector<QMatrix>& spanning);
Subspace whole(const AlgebraPtr& g);
bool same_span(const Subspace& a, const Subspace& b);
bool contained_in(const Subspace& a, const Subspace& b);
bool is_commutator_closed(const Subspace& s);
/// {X in g : tr(XY) = 0 for all Y in s}. Requires a classical ambient.
Subspace annihilator(const Subspace& s);
/// View a subalgebra as an algebra in its own right (non-classical).
AlgebraPtr as_algebra(const Subspace& s);

// --- subalgebra specifications ---

struct ParabolicSpec {
  std::vector<std::vector<int>> compositions;  // one full composition of N per factor
};
struct LeviSpec {
  std::vector<std::vector<int>> compositions;
};
struct TorusSpec {};
struct SpanSpec {
  std::vector<QMatrix> matrices;
};
/// Y in factor `source` mapped to P_t diag(Y,...,Y) P_t^{-1} in each target.
/// Intertwiners may be left empty to use the canonical hyperbolic isometry.
struct DiagonalSpec {
  std::size_t source = 0;
  std::vector<std::size_t> targets;
  std::vector<QMatrix> intertwiners;
};
/// Graph of a homomorphism from the classical algebra on `source_factors`
/// into the remaining factors; images[i] is the image of the i-th basis
/// element of build_classical(source type), as a full-size ambient matrix.
struct GraphSpec {
  std::vector<std::size_t> source_factors;
  std::vector<QMatrix> images;
};

using SubalgebraSpec = std::variant<ParabolicSpec, LeviSpec, TorusSpec, SpanSpec, DiagonalSpec, GraphSpec>;

/// Resolves to a subspace of g and checks commutator closure.
Subspace resolve(const SubalgebraSpec& spec, const AlgebraPtr& g);

struct Parabolic {
  std::vector<std::vector<int>> compositions;
  Subspace algebra;
  Subspace nilradical;
};

/// Standard parabolic: block-upper-triangular matrices in g. For B/C/D the
/// composition must be palindromic. Verifies annihilator(p) == nilradical.
Parabolic parabolic(const AlgebraPtr& g, const std::vector<std::vector<int>>& compositions);
/// Full palindromic composition for the stabilizer of an isotropic flag with
/// successive block sizes `flag` (e.g. {1} in sp4 -> {1,2,1}).
std::vector<int> isotropic_flag_composition(const Factor& f, const std::vector<int>& flag);
/// All compositions giving standard parabolics of the factor.
std::vector<std::vector<int>> standard_compositions(const Factor& f);
void validate_composition(const Factor& f, const std::vector<int>& comp);

Subspace levi(const AlgebraPtr& g, const std::vector<std::vector<int>>& compositions);
Subspace maximal_torus(const AlgebraPtr& g);

// --- diagonal and graph constructions ---

/// Diagonal copy {(Y, Y)} of a subalgebra h of g inside g x h.
Subspace delta_subalgebra(const Subspace& h);
/// Graph {(phi(Y), Y)} inside g x h of a homomorphism phi : h -> g given by
/// the images of h's basis. Checks that phi preserves brackets.
Subspace graph_subalgebra(const AlgebraPtr& g, const AlgebraPtr& h, const std::vector<QMatrix>& images);

struct BlockForm {
  Family family;
  std::size_t size;
  int sign = 1;
};
/// Rational P with P^T J_target P = (+-J_1) (+) (+-J_2) (+) ... . Hyperbolic
/// pairs are matched in order; anisotropic middles of opposite sign are
/// combined into hyperbolic pairs. Throws InputError if no such P exists
/// with this construction.
QMatrix hyperbolic_isometry(const std::vector<BlockForm>& blocks, const Factor& target);

/// gl_n -> sp_2n or so_2n : Y |-> diag(Y, -K Y^T K).
QMatrix gl_into_form(const QMatrix& y);
/// gl_n x gl_k -> gl_nk : (A, B) |-> A (x) I + I (x) B.
QMatrix tensor_sum(const QMatrix& a, const QMatrix& b);

}  // namespace orbitkit
