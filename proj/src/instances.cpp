#include "orbitkit/instances.hpp"

#include "orbitkit/errors.hpp"

namespace orbitkit {

std::vector<int> line_composition(const Factor& f) { return isotropic_flag_composition(f, {1}); }

DiagonalPair diagonal_symplectic_pair(int n) {
  if (n < 1) throw InputError("n must be >= 1");
  const LieType t{{Factor{Family::C, n}, Factor{Family::C, 2 * n}}};
  AlgebraPtr g = build_classical(t);
  Subspace h = resolve(DiagonalSpec{0, {1}, {}}, g);
  return {g, h, parse_label(t, "min")};
}

Embedding theta_embedding(int n, int k) {
  if (n < 1 || k < 1) throw InputError("n and k must be >= 1");
  AlgebraPtr g = build_classical(LieType{{Factor{Family::C, n * k}}});
  AlgebraPtr h = build_classical(LieType{{Factor{Family::A, n - 1}, Factor{Family::A, k - 1}}});
  Embedding e{g, h, {}};
  for (const auto& y : h->basis())
    e.images.push_back(gl_into_form(tensor_sum(y.block(0, n), y.block(n, k))));
  return e;
}

FlagInstance flag_instance(int k) {
  if (k < 1) throw InputError("k must be >= 1");
  LieType t;
  for (int i = 0; i < k; ++i) t.factors.push_back(Factor{Family::A, 1});
  AlgebraPtr g = build_classical(t);
  DiagonalSpec d{0, {}, {}};
  for (int i = 1; i < k; ++i) d.targets.push_back(i);
  FlagInstance fi{g, k > 1 ? resolve(d, g) : whole(g), {}};
  for (int i = 0; i < k; ++i) fi.borel.push_back({1, 1});
  return fi;
}

}  // namespace orbitkit
