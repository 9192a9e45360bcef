#pragma once

// Named instances used by the CLI, the examples suite and the tests.

#include "orbitkit/sphericity.hpp"

namespace orbitkit {

/// Stabilizer of an isotropic line: composition (1, N-2, 1).
std::vector<int> line_composition(const Factor& f);

/// sp_2n x sp_4n with h = {(Y, P diag(Y, Y) P^-1)}; orbit (min, min).
struct DiagonalPair {
  AlgebraPtr g;
  Subspace h;
  OrbitLabel orbit;
};
DiagonalPair diagonal_symplectic_pair(int n);

/// gl_n x gl_k -> sp_2nk : (A, B) -> diag(T, -K T^T K), T = A (x) I + I (x) B.
Embedding theta_embedding(int n, int k);

/// gl_2^k with the diagonal gl_2 and the product Borel.
struct FlagInstance {
  AlgebraPtr g;
  Subspace h;
  std::vector<std::vector<int>> borel;
};
FlagInstance flag_instance(int k);

}  // namespace orbitkit
