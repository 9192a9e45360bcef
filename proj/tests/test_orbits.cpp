#include "doctest.h"

#include <algorithm>

#include "orbitkit/errors.hpp"
#include "orbitkit/orbits.hpp"

using namespace orbitkit;

namespace {

std::vector<std::vector<int>> parts_of(const std::vector<Partition>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& p : ps) out.push_back(p.parts);
  std::sort(out.begin(), out.end());
  return out;
}

// Closed-form dimension formulas for classical nilpotent orbits.
int dim_formula(const Factor& f, const std::vector<int>& parts) {
  const int n = static_cast<int>(f.size());
  int sq = 0, odd = 0;
  for (int c : transpose(parts)) sq += c * c;
  for (int p : parts) odd += p % 2;
  switch (f.family) {
    case Family::A: return n * n - sq;
    case Family::C: return n * (n + 1) / 2 - (sq + odd) / 2;
    default: return n * (n - 1) / 2 - (sq - odd) / 2;
  }
}

std::vector<std::vector<int>> compositions(int n) {
  if (n == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int a = 1; a <= n; ++a)
    for (auto rest : compositions(n - a)) {
      rest.insert(rest.begin(), a);
      out.push_back(rest);
    }
  return out;
}

}  // namespace

TEST_CASE("catalogs") {
  using V = std::vector<std::vector<int>>;
  CHECK(parts_of(orbit_catalog(parse_factor("gl2"))) == V{{1, 1}, {2}});
  CHECK(parts_of(orbit_catalog(parse_factor("sp4"))) == V{{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {4}});
  CHECK(parts_of(orbit_catalog(parse_factor("so5"))) == V{{1, 1, 1, 1, 1}, {2, 2, 1}, {3, 1, 1}, {5}});
  for (const char* t : {"gl1", "gl4", "sp6", "so7", "so8"}) {
    Factor f = parse_factor(t);
    const auto& cat = orbit_catalog(f);
    CHECK(closure_leq(cat.back(), cat.front()));
    CHECK(cat.back().parts == std::vector<int>(f.size(), 1));
  }
  CHECK(regular_orbit(parse_factor("so8")).parts == std::vector<int>{7, 1});
  CHECK(minimal_orbit(parse_factor("sp4")).parts == std::vector<int>{2, 1, 1});
  CHECK(minimal_orbit(parse_factor("so7")).parts == std::vector<int>{2, 2, 1, 1, 1});
  CHECK(minimal_orbit(parse_factor("gl3")).parts == std::vector<int>{2, 1});
  CHECK_THROWS_AS(minimal_orbit(parse_factor("gl1")), InputError);
  CHECK_THROWS_AS(make_partition(parse_factor("sp4"), {3, 1}), InputError);
  CHECK_THROWS_AS(make_partition(parse_factor("so5"), {4, 1}), InputError);
}

TEST_CASE("orbit dimensions") {
  CHECK(orbit_dim(parse_factor("gl3"), make_partition(parse_factor("gl3"), {3})) == 6);
  CHECK(orbit_dim(parse_factor("sp4"), minimal_orbit(parse_factor("sp4"))) == 4);
  CHECK(orbit_dim(parse_factor("sp6"), minimal_orbit(parse_factor("sp6"))) == 6);
  for (const char* t : {"gl1", "gl2", "gl3", "gl4", "sp2", "sp4", "sp6", "so3", "so4", "so5", "so6", "so7", "so8"}) {
    Factor f = parse_factor(t);
    for (const auto& p : orbit_catalog(f)) {
      CAPTURE(t);
      CAPTURE(p.to_string());
      const int d = orbit_dim(f, p);
      CHECK(d == dim_formula(f, p.parts));
      CHECK(d % 2 == 0);
      if (p == zero_orbit(f)) CHECK(d == 0);
      CHECK(partition_of_element(representative(f, p), f.family) == p);
    }
  }
}

TEST_CASE("orbit dimension is strictly monotone in the closure order") {
  for (const char* t : {"gl4", "sp6", "so7", "so8"}) {
    Factor f = parse_factor(t);
    for (const auto& a : orbit_catalog(f))
      for (const auto& b : orbit_catalog(f))
        if (a != b && closure_leq(a, b)) CHECK(orbit_dim(f, a) < orbit_dim(f, b));
  }
}

TEST_CASE("rank sequences and closure order") {
  Factor sp4 = parse_factor("sp4"), gl3 = parse_factor("gl3");
  CHECK(rank_sequence(make_partition(gl3, {3})) == std::vector<int>{2, 1, 0});
  CHECK(rank_sequence(make_partition(sp4, {2, 2})) == std::vector<int>{2, 0});
  CHECK(rank_sequence(make_partition(sp4, {2, 1, 1})) == std::vector<int>{1, 0});
  CHECK(closure_leq(make_partition(sp4, {2, 1, 1}), make_partition(sp4, {2, 2})));
  CHECK_FALSE(closure_leq(make_partition(sp4, {2, 2}), make_partition(sp4, {2, 1, 1})));
  for (const auto& p : orbit_catalog(sp4)) CHECK(closure_leq(p, p));
  CHECK_THROWS_AS(closure_leq(make_partition(sp4, {4}), make_partition(gl3, {3})), InputError);
  // dominance agrees with rank sequences
  Factor gl6 = parse_factor("gl6");
  for (const auto& a : orbit_catalog(gl6))
    for (const auto& b : orbit_catalog(gl6)) {
      bool ranks = true;
      for (int k = 1; k <= 6; ++k) {
        int ra = 0, rb = 0;
        for (int x : a.parts) ra += std::max(x - k, 0);
        for (int x : b.parts) rb += std::max(x - k, 0);
        ranks = ranks && ra <= rb;
      }
      CHECK(closure_leq(a, b) == ranks);
    }
}

TEST_CASE("partition of element") {
  CHECK(partition_of_element(QMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}).parts == std::vector<int>{3});
  CHECK(partition_of_element(QMatrix(4, 4)).parts == std::vector<int>{1, 1, 1, 1});
  CHECK(partition_of_element(QMatrix::unit(4, 0, 1) + QMatrix::unit(4, 2, 3)).parts == std::vector<int>{2, 2});
  CHECK_THROWS_AS(partition_of_element(QMatrix::identity(2)), InputError);
}

TEST_CASE("orbit parsing and closures") {
  LieType t = LieType::parse("sp2xsp4");
  auto l = parse_label(t, "min");
  CHECK(label_string(l) == "[2]x[2,1,1]");
  CHECK(orbit_dim(t, l) == 6);
  CHECK(parse_label(t, "zerox2,2")[1].parts == std::vector<int>{2, 2});
  CHECK(closure(t, l).orbits.size() == 4);
  CHECK(nilpotent_cone(LieType::parse("gl2xgl2")).orbits.size() == 4);
  CHECK_THROWS_AS(parse_label(t, "minxminxmin"), InputError);
}

TEST_CASE("Richardson orbits: transpose law in type A") {
  for (int n = 1; n <= 6; ++n) {
    auto g = build_classical(LieType{{Factor{Family::A, n - 1}}});
    for (const auto& c : compositions(n)) {
      auto r = richardson_partition(g, parabolic(g, {c}));
      auto sorted = c;
      std::sort(sorted.rbegin(), sorted.rend());
      CHECK(r[0].parts == transpose(sorted));
    }
  }
}

TEST_CASE("Richardson orbits in B/C/D") {
  auto sp4 = build_classical(LieType::parse("sp4"));
  CHECK(richardson_partition(sp4, parabolic(sp4, {{1, 2, 1}}))[0].parts == std::vector<int>{2, 2});
  CHECK(richardson_partition(sp4, parabolic(sp4, {{1, 1, 1, 1}}))[0].parts == std::vector<int>{4});
  for (const char* t : {"sp6", "so5", "so6", "so7"}) {
    auto g = build_classical(LieType::parse(t));
    for (const auto& c : standard_compositions(g->type().factors[0])) {
      auto p = parabolic(g, {c});
      // dimension identity is checked inside
      auto r = richardson_partition(g, p);
      CHECK(orbit_dim(g->type(), r) == 2 * static_cast<int>(p.nilradical.dim()));
    }
  }
}
