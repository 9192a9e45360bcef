#pragma once

// Sparse multivariate polynomials over Z/p in at most 64 variables,
// degrevlex order.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "orbitkit/modp.hpp"

namespace orbitkit {

inline constexpr std::size_t kMaxVars = 64;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t deg = 0;
  std::uint64_t mask = 0;  // bit i set iff e[i] > 0

  static Monomial var(std::size_t i, int power = 1);
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  /// Requires divides(o) on the divisor side: returns this / d.
  Monomial operator/(const Monomial& d) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const { return (mask & o.mask) == 0; }
  bool operator==(const Monomial& o) const { return mask == o.mask && e == o.e; }
  void refresh();
};

/// Degrevlex: >0 if a > b.
int compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial m;
  std::uint64_t c;
};

/// Terms sorted strictly decreasing, coefficients nonzero.
class Poly {
 public:
  Poly() = default;
  static Poly constant(std::uint64_t c);
  static Poly variable(std::size_t i);

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  const Term& lead() const { return t_.front(); }
  int degree() const;
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.deg == 0); }

  Poly add(const Poly& o, const PrimeField& f) const;
  Poly sub(const Poly& o, const PrimeField& f) const;
  Poly mul(const Poly& o, const PrimeField& f) const;
  Poly scale(std::uint64_t c, const PrimeField& f) const;
  Poly mul_term(const Monomial& m, std::uint64_t c, const PrimeField& f) const;
  /// this - c*m*g, the reduction step.
  Poly sub_mul(const Poly& g, const Monomial& m, std::uint64_t c, const PrimeField& f) const;
  Poly monic(const PrimeField& f) const;
  /// Replace variable v by q.
  Poly substitute(std::size_t v, const Poly& q, const PrimeField& f) const;
  std::uint64_t evaluate(const std::vector<std::uint64_t>& point, const PrimeField& f) const;

  /// Canonical text: "3*x0^2*x1+x2+5".
  std::string to_string() const;
  bool operator==(const Poly& o) const;

  static Poly from_terms(std::vector<Term> terms, const PrimeField& f);  // sorts and merges

 private:
  std::vector<Term> t_;
};

struct Ideal {
  PrimeField field{kPrime1};
  std::size_t nvars = 0;
  std::vector<Poly> gens;

  void add(Poly p);  // drops zeros
  std::string to_string() const;
};

/// Square or rectangular matrix of polynomials.
struct PolyMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Poly> a;

  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Poly& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  PolyMatrix mul(const PolyMatrix& o, const PrimeField& f) const;
};

/// All k x k minors (row-major over row subsets, then column subsets).
std::vector<Poly> minors(const PolyMatrix& m, std::size_t k, const PrimeField& f);

/// Rabinowitsch: adds a fresh variable t and the generator t*g - 1.
Ideal localize(const Ideal& i, const Poly& g);

/// Substitutes away every generator of degree 1 (solving for its leading
/// variable). Returns the number of eliminated variables; the remaining
/// generators keep the original variable numbering.
std::size_t eliminate_linear(Ideal& i);

}  // namespace orbitkit
