#include "doctest.h"

#include <random>

#include "orbitkit/errors.hpp"
#include "orbitkit/groebner.hpp"
#include "point_count.hpp"

using namespace orbitkit;
using namespace orbitkit::testing;

namespace {

const PrimeField F{kPrime1};

Poly x(std::size_t i) { return Poly::variable(i); }
Poly c(long v, const PrimeField& f = F) { return Poly::constant(f.from_int(v)); }
Poly operator+(const Poly& a, const Poly& b) { return a.add(b, F); }
Poly operator-(const Poly& a, const Poly& b) { return a.sub(b, F); }
Poly operator*(const Poly& a, const Poly& b) { return a.mul(b, F); }

Ideal ideal(std::size_t n, std::vector<Poly> gens, const PrimeField& f = F) {
  Ideal i{f, n, {}};
  for (auto& g : gens) i.add(g);
  return i;
}

std::vector<std::string> strings(const GroebnerBasis& g) {
  std::vector<std::string> s;
  for (const auto& p : g.polys) s.push_back(p.to_string());
  return s;
}

}  // namespace

TEST_CASE("groebner examples") {
  auto g1 = groebner(ideal(2, {x(0) * x(0), x(0) * x(1)}));
  CHECK(g1.polys.size() == 2);
  CHECK(krull_dim(g1) == 1);
  auto g2 = groebner(ideal(2, {x(0) - x(1), x(1) * x(1)}));
  CHECK(strings(g2) == std::vector<std::string>{"x0+" + std::to_string(kPrime1 - 1) + "*x1", "x1^2"});
  auto g3 = groebner(ideal(1, {x(0) * x(0) - c(1), x(0) - c(1)}));
  CHECK(strings(g3) == std::vector<std::string>{"x0+" + std::to_string(kPrime1 - 1)});
  CHECK(groebner(ideal(2, {x(0) - c(1), x(0) - c(2)})).is_unit());
}

TEST_CASE("groebner output is a reduced basis containing the input") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    Ideal I{F, n, {}};
    for (int k = 0; k < 3; ++k) I.add(random_poly(rng, n, F));
    auto g = groebner(I);
    for (const auto& p : I.gens) CHECK(normal_form(p, g).is_zero());
    for (std::size_t a = 0; a < g.polys.size(); ++a) {
      CHECK(g.polys[a].lead().c == 1);
      for (std::size_t b = 0; b < g.polys.size(); ++b) {
        if (a == b) continue;
        for (const auto& t : g.polys[a].terms()) CHECK_FALSE(g.polys[b].lead().m.divides(t.m));
        const Monomial l = g.polys[a].lead().m.lcm(g.polys[b].lead().m);
        Poly s = g.polys[a].mul_term(l / g.polys[a].lead().m, 1, F).sub_mul(g.polys[b], l / g.polys[b].lead().m, 1, F);
        CHECK(normal_form(s, g).is_zero());
      }
    }
  }
}

TEST_CASE("krull dimension examples") {
  CHECK(ideal_dim(ideal(2, {x(0) * x(1)})) == 1);
  CHECK(ideal_dim(ideal(5, {})) == 5);
  PolyMatrix m(2, 3);
  for (std::size_t i = 0; i < 6; ++i) m.a[i] = x(i);
  CHECK(ideal_dim(ideal(6, minors(m, 2, F))) == 4);
  CHECK(ideal_dim(ideal(3, {c(3)})) == -1);
}

TEST_CASE("localization examples") {
  CHECK(ideal_dim(localize(ideal(2, {x(0) * x(1)}), x(0))) == 1);
  CHECK(ideal_dim(localize(ideal(1, {x(0)}), x(0))) == -1);
  CHECK(ideal_dim(localize(ideal(1, {}), x(0))) == 1);
  CHECK_THROWS_AS(localize(ideal(1, {}), Poly{}), InputError);
}

TEST_CASE("minors") {
  PolyMatrix m(2, 2);
  for (std::size_t i = 0; i < 4; ++i) m.a[i] = x(i);
  auto d = minors(m, 2, F);
  REQUIRE(d.size() == 1);
  CHECK(d[0] == x(0) * x(3) - x(1) * x(2));
  PolyMatrix id(2, 2);
  id(0, 0) = c(1);
  id(1, 1) = c(1);
  CHECK(minors(id, 2, F)[0] == c(1));
  PolyMatrix x3(3, 3);
  for (std::size_t i = 0; i < 9; ++i) x3.a[i] = x(i);
  auto sq = minors(x3.mul(x3, F), 2, F);
  CHECK(sq.size() == 9);
  for (const auto& p : sq) CHECK(p.degree() == 4);
  CHECK_THROWS_AS(minors(x3, 4, F), InputError);
}

TEST_CASE("linear elimination") {
  Ideal I = ideal(3, {x(0) - x(1) - c(2), x(0) * x(2), x(1) + x(2)});
  const std::size_t e = eliminate_linear(I);
  CHECK(e == 2);
  CHECK(ideal_dim(ideal(3, {x(0) - x(1) - c(2), x(0) * x(2), x(1) + x(2)})) == 0);
}

TEST_CASE("localization never raises dimension") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    Ideal I{F, n, {}};
    for (std::size_t k = 0, m = rng() % 3; k <= m; ++k) I.add(random_poly(rng, n, F));
    Poly f = random_poly(rng, n, F);
    if (f.is_zero()) continue;
    CHECK(ideal_dim(localize(I, f)) <= ideal_dim(I));
  }
}

TEST_CASE("krull dimension matches point counting") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const int q = n <= 2 ? 7 : 5;
    const PrimeField f{static_cast<std::uint64_t>(q)};
    Ideal I{f, n, {}};
    for (std::size_t k = 0, m = 1 + rng() % 3; k < m; ++k) I.add(random_poly(rng, n, f));
    CAPTURE(I.to_string());
    CHECK(ideal_dim(I) == point_count_dim(I, q));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("point counting sees points that only exist over F_{q^4}") {
  const PrimeField f{5};
  // first irreducible monic quartic: a single Galois orbit of four points
  std::vector<int> quartic;
  for (int code = 0;; ++code) {
    quartic = {code % 5, code / 5 % 5, code / 25 % 5, code / 125 % 5, 1};
    if (irreducible(quartic, 5)) break;
  }
  Poly p = Poly::constant(0);
  for (int d = 0; d <= 4; ++d) {
    Poly t = Poly::constant(f.from_int(quartic[d]));
    for (int r = 0; r < d; ++r) t = t.mul(Poly::variable(0), f);
    p = p.add(t, f);
  }
  Ideal I{f, 1, {}};
  I.add(p);
  for (int k = 1; k <= 3; ++k) CHECK(count_points(I, 5, k) == 0);
  CHECK(count_points(I, 5, 4) == 4);
  CHECK(point_count_dim(I, 5) == 0);
  CHECK(ideal_dim(I) == 0);
}

TEST_CASE("two-prime protocol") {
  CHECK(is_prime(kPrime1));
  CHECK(is_prime(kPrime2));
  CHECK(is_prime(kPrime3));
  auto build = [](const PrimeField& f) {
    Ideal I{f, 3, {}};
    I.add(Poly::variable(0).mul(Poly::variable(1), f).sub(Poly::constant(f.from_int(3)), f));
    I.add(Poly::variable(2).mul(Poly::variable(2), f));
    return I;
  };
  const std::size_t before = prime_disagreements();
  auto r = two_prime_dim(build);
  CHECK(r.value == 1);
  CHECK(r.agreed);
  CHECK(r.primes.size() == 2);
  CHECK(prime_disagreements() == before);
}

TEST_CASE("budget") {
  // generic cubics in 6 variables need far more than 5 pairs
  Ideal I{F, 6, {}};
  std::mt19937_64 rng(3);
  for (int k = 0; k < 4; ++k) {
    Poly p = Poly::constant(1);
    for (int d = 0; d < 3; ++d) p = p.mul(random_poly(rng, 6, F).add(x(d), F), F);
    I.add(p);
  }
  CHECK_THROWS_AS(groebner(I, GroebnerOptions{5, 40}), BudgetExceeded);
  CHECK_THROWS_AS(groebner(I, GroebnerOptions{20000, 3}), BudgetExceeded);
}
