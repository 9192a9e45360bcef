#include "doctest.h"

#include <random>

#include "orbitkit/errors.hpp"
#include "orbitkit/geometry.hpp"

using namespace orbitkit;

namespace {

AlgebraPtr alg(const char* t) { return build_classical(LieType::parse(t)); }

Subspace line_stabilizer_perp(const AlgebraPtr& g) {
  return parabolic(g, {isotropic_flag_composition(g->type().factors[0], {1})}).nilradical;
}

}  // namespace

TEST_CASE("closure intersection examples") {
  auto gl2 = alg("gl2");
  auto tperp = annihilator(maximal_torus(gl2));
  CHECK(closure_intersection_dim(parse_label(gl2->type(), "reg"), tperp).value == 1);
  CHECK(closure_intersection_dim(parse_label(gl2->type(), "zero"), tperp).value == 0);

  auto sp4 = alg("sp4");
  auto d = closure_intersection_dim(parse_label(sp4->type(), "min"), line_stabilizer_perp(sp4));
  CHECK(d.value == 1);
  CHECK(d.cert.kind == CertKind::ExactGroebner);
  CHECK(d.cert.primes.size() == 2);

  auto g = alg("sp2xsp4");
  auto h = resolve(DiagonalSpec{0, {1}, {}}, g);
  auto hp = annihilator(h);
  CHECK(hp.dim() == 10);
  auto l = parse_label(g->type(), "min");
  CHECK(closure_intersection_dim(l, hp).value == 3);
  CHECK(orbit_dim(g->type(), l) == 6);
}

TEST_CASE("open stratum examples") {
  auto gl2 = alg("gl2");
  auto n = make_subspace(gl2, {QMatrix::unit(2, 0, 1)});
  auto d = open_stratum_dim(parse_label(gl2->type(), "reg"), n);
  CHECK(d.value == 1);
  CHECK(d.cert.kind == CertKind::ExactGroebner);

  auto gl3 = alg("gl3");
  auto bperp = annihilator(parabolic(gl3, {{1, 1, 1}}).algebra);
  CHECK(bperp.dim() == 3);
  CHECK(open_stratum_dim(parse_label(gl3->type(), "reg"), bperp).value == 3);

  auto zero = make_subspace(gl3, {});
  auto e = open_stratum_dim(parse_label(gl3->type(), "2,1"), zero);
  CHECK(e.value == -1);
  CHECK(e.cert.kind == CertKind::Empty);
  CHECK(open_stratum_dim(parse_label(gl3->type(), "zero"), zero).value == 0);

  for (const char* t : {"sp4", "sp6"}) {
    auto g = alg(t);
    auto o = open_stratum_dim(parse_label(g->type(), "min"), line_stabilizer_perp(g));
    CHECK(o.value == 1);
    CHECK(o.cert.kind == CertKind::ExactGroebner);
  }
}

TEST_CASE("open strata sit below closures, and closures are the max over strata") {
  std::vector<std::pair<AlgebraPtr, Subspace>> cases;
  for (const char* t : {"gl2", "gl3", "sp4"}) {
    auto g = alg(t);
    cases.push_back({g, annihilator(maximal_torus(g))});
    for (const auto& c : standard_compositions(g->type().factors[0])) {
      auto p = parabolic(g, {c});
      cases.push_back({g, p.nilradical});
      cases.push_back({g, annihilator(levi(g, {c}))});
    }
  }
  for (const auto& [g, v] : cases) {
    for (const auto& l : nilpotent_cone(g->type()).orbits) {
      CAPTURE(g->type().name());
      CAPTURE(label_string(l));
      const int closed = closure_intersection_dim(l, v).value;
      int best = -1;
      for (const auto& mu : closure(g->type(), l).orbits) {
        auto o = open_stratum_dim(mu, v);
        CHECK(o.cert.kind != CertKind::Unknown);
        CHECK(o.value <= closure_intersection_dim(mu, v).value);
        best = std::max(best, o.value);
      }
      CHECK(best == closed);
    }
  }
}

TEST_CASE("moment fiber bounds for flags of gl2") {
  auto g = alg("gl2");
  auto n = parabolic(g, {{1, 1}}).nilradical;
  CHECK(moment_fiber_lower_bound({{n, n, n}}).value == 3);
  CHECK(moment_fiber_lower_bound({{n, n, n, n}}).value == 5);
  auto whole_g = whole(g);
  CHECK(moment_fiber_lower_bound({{whole_g}}).value == 4);
  auto cert = moment_fiber_lower_bound({{n, n, n, n}}, 3, 99).cert;
  CHECK(cert.kind == CertKind::SampledLowerBound);
  CHECK(cert.seed == 99);
  CHECK(cert.trials == 3);
}

TEST_CASE("KKS pairing") {
  CHECK(kks_pairing(QMatrix::unit(2, 0, 1), QMatrix::unit(2, 0, 0), QMatrix::unit(2, 0, 1)) == 0);
  CHECK(kks_pairing(QMatrix::unit(2, 0, 1), QMatrix::unit(2, 1, 0), QMatrix::unit(2, 0, 0)) == 1);
  auto g = alg("sp4");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    QMatrix a(4, 4), x(4, 4);
    for (const auto& b : g->basis()) {
      a += b * Rational(static_cast<long>(rng() % 7) - 3);
      x += b * Rational(static_cast<long>(rng() % 7) - 3);
    }
    CHECK(kks_pairing(a, x, x) == 0);
  }
}

TEST_CASE("Lagrangian identity in gl4: O' cap p^perp has half the dimension of O'") {
  const LieType t{{Factor{Family::A, 3}}};
  auto g = build_classical(t);
  for (const auto& c : standard_compositions(t.factors[0])) {
    auto p = parabolic(g, {c});
    auto v = annihilator(p.algebra);
    for (const auto& o : closure(t, richardson_partition(g, p)).orbits) {
      CAPTURE(label_string(o));
      auto d = open_stratum_dim(o, v);
      REQUIRE(d.cert.kind == CertKind::ExactGroebner);
      CHECK(2 * d.value == orbit_dim(t, o));
    }
  }
}
