#include "doctest.h"

#include <random>

#include "orbitkit/errors.hpp"
#include "orbitkit/instances.hpp"

using namespace orbitkit;

namespace {

AlgebraPtr alg(const char* t) { return build_classical(LieType::parse(t)); }
OrbitLabel lab(const AlgebraPtr& g, const char* s) { return parse_label(g->type(), s); }

Subspace line_parabolic(const AlgebraPtr& g) { return parabolic(g, {line_composition(g->type().factors[0])}).algebra; }

// Every H the property tests sweep: torus, Levis and parabolics of each
// standard composition.
std::vector<std::pair<std::string, Subspace>> subgroups(const AlgebraPtr& g) {
  std::vector<std::pair<std::string, Subspace>> out{{"torus", maximal_torus(g)}};
  for (const auto& c : standard_compositions(g->type().factors[0])) {
    std::string name;
    for (int x : c) name += std::to_string(x);
    out.emplace_back("levi " + name, levi(g, {c}));
    out.emplace_back("parabolic " + name, parabolic(g, {c}).algebra);
  }
  return out;
}

// Independent test of whether a Borel of H has an open orbit on G/B: some
// translate must satisfy b_h + Ad(x) b = g.
bool borel_of_h_has_open_orbit(const Embedding& e) {
  const auto& f = e.g->type().factors[0];
  const Subspace b = parabolic(e.g, {std::vector<int>(f.size(), 1)}).algebra;
  std::vector<std::vector<int>> hb;
  for (const auto& hf : e.h->type().factors) hb.push_back(std::vector<int>(hf.size(), 1));
  const Subspace bh = parabolic(e.h, hb).algebra;
  std::mt19937_64 rng(7);
  const std::size_t n = e.g->matrix_size();
  for (int trial = 0; trial < 6; ++trial) {
    QMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = static_cast<long>(rng() % 19) - 9;
    QMatrix xi;
    try {
      xi = inverse(x);
    } catch (const ConstructionError&) {
      continue;
    }
    std::vector<QVector> rows;
    for (const auto& y : bh.basis) rows.push_back(flatten(y));  // h is block diagonal inside gl_n
    for (const auto& y : b.basis) rows.push_back(flatten(x * y * xi));
    if (rank(rows) == e.g->dim()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("complexity examples") {
  auto sp4 = alg("sp4");
  auto c = complexity(lab(sp4, "min"), line_parabolic(sp4));
  CHECK(c.open.value == 1);
  CHECK(c.orbit_dim == 4);
  CHECK(c.c.to_string() == "-1");
  CHECK(c.c.exact);

  auto sp6 = alg("sp6");
  CHECK(complexity(lab(sp6, "min"), line_parabolic(sp6)).c.twice == -4);

  auto gl2 = alg("gl2");
  auto t = maximal_torus(gl2);
  auto r = complexity(lab(gl2, "reg"), t);
  CHECK(r.open.value == 1);
  CHECK(r.c.twice == 0);

  for (const char* s : {"gl2", "gl3", "sp4", "so5", "gl1xsp2"}) {
    auto g = alg(s);
    auto z = complexity(parse_label(g->type(), "zero"), maximal_torus(g));
    CHECK(z.c.is_finite());
    CHECK(z.c.twice == 0);
  }
}

TEST_CASE("complexity arithmetic") {
  CHECK(Complexity::finite(1).to_string() == "1/2");
  CHECK(Complexity::finite(-3).to_string() == "-3/2");
  CHECK(Complexity::neg_infinity().to_string() == "-inf");
  CHECK(cmax(Complexity::neg_infinity(), Complexity::finite(-4)).twice == -4);
  CHECK(cmax(Complexity::finite(2), Complexity::unknown()).state == Complexity::State::Unknown);
  CHECK(cadd(Complexity::finite(1), Complexity::finite(-3)).twice == -2);
  CHECK(cadd(Complexity::neg_infinity(), Complexity::finite(5)).state == Complexity::State::NegInfinity);
}

TEST_CASE("xi-sphericity examples") {
  auto gl2 = alg("gl2");
  auto t = maximal_torus(gl2);

  auto z = xi_spherical(closure(gl2->type(), lab(gl2, "zero")), t);
  CHECK(z.verdict == Verdict::Spherical);

  auto v = xi_spherical(nilpotent_cone(gl2->type()), t);
  CHECK(v.verdict == Verdict::Spherical);
  REQUIRE(v.per_orbit.size() == 2);
  for (const auto& oc : v.per_orbit) {
    CHECK(oc.closed.cert.kind == CertKind::ExactGroebner);
    CHECK(2 * oc.closed.value <= oc.orbit_dim);
  }

  // h = 0: the whole cone lies in h^perp
  auto none = xi_spherical(nilpotent_cone(gl2->type()), make_subspace(gl2, {}));
  CHECK(none.verdict == Verdict::NotSpherical);
  REQUIRE(none.witness);
  CHECK(label_string(*none.witness) == "[2]");

  // GL3/T is not spherical: nilpotent matrices with zero diagonal form a 4-dimensional set
  auto gl3 = alg("gl3");
  auto t3 = xi_spherical(nilpotent_cone(gl3->type()), maximal_torus(gl3));
  CHECK(t3.verdict == Verdict::NotSpherical);
  for (const auto& oc : t3.per_orbit)
    if (label_string(oc.orbit) == "[3]") CHECK(oc.closed.value == 4);
}

TEST_CASE("xi-sphericity of the diagonal sp2 in sp2 x sp4") {
  auto d = diagonal_symplectic_pair(1);
  auto v = xi_spherical(closure(d.g->type(), d.orbit), d.h);
  CHECK(v.verdict == Verdict::Spherical);
  bool seen = false;
  for (const auto& oc : v.per_orbit) {
    CHECK(oc.closed.cert.kind == CertKind::ExactGroebner);
    if (oc.orbit == d.orbit) {
      seen = true;
      CHECK(oc.closed.value == 3);
      CHECK(oc.orbit_dim == 6);
    }
  }
  CHECK(seen);
}

TEST_CASE("richardson cross-check examples") {
  auto gl2 = alg("gl2");
  auto cc = richardson_cross_check(gl2, {{1, 1}}, maximal_torus(gl2));
  CHECK(cc.agreement == Agreement::Agree);
  REQUIRE(cc.value);
  CHECK(*cc.value == Verdict::Spherical);
  CHECK(label_string(cc.richardson) == "[2]");

  auto f3 = flag_instance(3);
  auto c3 = richardson_cross_check(f3.g, f3.borel, f3.h);
  CHECK(c3.route_a.verdict == Verdict::Spherical);
  CHECK(c3.route_b.value == c3.base_dim);
  CHECK(c3.agreement == Agreement::Agree);

  auto f4 = flag_instance(4);
  auto c4 = richardson_cross_check(f4.g, f4.borel, f4.h);
  CHECK(c4.route_a.verdict == Verdict::NotSpherical);
  CHECK(c4.route_b.value == c4.base_dim + 1);
  CHECK(c4.agreement == Agreement::Agree);
}

TEST_CASE("cross-check never disagrees on gl2 and gl3") {
  for (const char* s : {"gl2", "gl3"}) {
    auto g = alg(s);
    for (const auto& [name, h] : subgroups(g))
      for (const auto& p : standard_compositions(g->type().factors[0])) {
        CAPTURE(s);
        CAPTURE(name);
        auto cc = richardson_cross_check(g, {p}, h);
        CHECK(cc.agreement != Agreement::Disagree);
      }
  }
}

TEST_CASE("branching examples") {
  auto gl2 = alg("gl2");
  auto e = levi_embedding(gl2, {1, 1});
  auto b = branching_check(e, lab(gl2, "reg"), parse_label(e.h->type(), "zero"));
  CHECK(b.condition_b.verdict == Verdict::Spherical);
  bool seen = false;
  for (const auto& oc : b.condition_b.per_orbit)
    if (label_string(oc.orbit) == "[2]x[1]x[1]") {
      seen = true;
      CHECK(oc.closed.value == 1);
      CHECK(oc.orbit_dim == 2);
    }
  CHECK(seen);

  auto zz = branching_check(e, lab(gl2, "zero"), parse_label(e.h->type(), "zero"));
  CHECK(zz.condition_b.verdict == Verdict::Spherical);
  REQUIRE(zz.condition_b.per_orbit.size() == 1);
  CHECK(zz.condition_b.per_orbit[0].closed.value == 0);

  auto th = theta_embedding(1, 1);
  auto tb = branching_check(th, parse_label(th.g->type(), "min"), parse_label(th.h->type(), "reg"));
  CHECK(tb.condition_b.verdict == Verdict::Spherical);
}

TEST_CASE("branching with parabolics: the equivalent formulations agree") {
  auto gl3 = alg("gl3");
  auto e = levi_embedding(gl3, {2, 1});
  auto b = branching_check(e, lab(gl3, "2,1"), parse_label(e.h->type(), "2x1"), std::vector<std::vector<int>>{{2, 1}},
                           std::vector<std::vector<int>>{{1, 1}, {1}});
  CHECK(b.richardson);
  CHECK(b.agreement == Agreement::Agree);
  CHECK(b.condition_b.verdict == Verdict::Spherical);
  REQUIRE(b.double_cosets);
  CHECK(b.double_cosets->value <= b.double_coset_base);
}

TEST_CASE("Borel case: branching verdict matches H-sphericity of G/B") {
  struct Case {
    const char* g;
    std::vector<int> levi;
  };
  for (const Case& c : {Case{"gl2", {1, 1}}, Case{"gl2", {2}}, Case{"gl3", {2, 1}}, Case{"gl3", {1, 1, 1}},
                        Case{"gl3", {1, 2}}}) {
    CAPTURE(c.g);
    auto g = alg(c.g);
    auto e = levi_embedding(g, c.levi);
    auto b = branching_check(e, lab(g, "reg"), parse_label(e.h->type(), "reg"));
    REQUIRE(b.condition_b.verdict != Verdict::Unknown);
    CHECK((b.condition_b.verdict == Verdict::Spherical) == borel_of_h_has_open_orbit(e));
  }
}

TEST_CASE("sandwich examples") {
  auto gl2 = alg("gl2");
  auto e = levi_embedding(gl2, {1, 1});
  auto s = branch_complexity_sandwich(e, {{1, 1}}, parse_label(e.h->type(), "zero"));
  CHECK(s.left.twice == 0);
  CHECK(s.middle.twice == 0);
  CHECK(s.right.twice == 0);
  CHECK(s.holds == Agreement::Agree);

  auto gl3 = alg("gl3");
  auto l = levi_embedding(gl3, {2, 1});
  auto s3 = branch_complexity_sandwich(l, {{2, 1}}, parse_label(l.h->type(), "zero"));
  CHECK(s3.holds == Agreement::Agree);
  CHECK(s3.left.twice <= s3.middle.twice);
  CHECK(s3.middle.twice <= s3.right.twice);

  // H = G with P = G: O_P is the zero orbit and every term vanishes
  auto whole = levi_embedding(gl2, {2});
  auto sg = branch_complexity_sandwich(whole, {{2}}, parse_label(whole.h->type(), "zero"));
  CHECK(sg.left.twice == 0);
  CHECK(sg.middle.twice == 0);
  CHECK(sg.right.twice == 0);
  CHECK(sg.holds == Agreement::Agree);
}

TEST_CASE("nonnegativity of complexities") {
  for (const char* s : {"gl2", "gl3", "sp4"}) {
    auto g = alg(s);
    for (const auto& [name, h] : subgroups(g)) {
      CAPTURE(s);
      CAPTURE(name);
      auto rep = complexity_report(nilpotent_cone(g->type()), h);
      for (const auto& oc : rep.per_orbit)
        if (oc.orbit == parse_label(g->type(), "zero")) CHECK(oc.c.twice == 0);
      REQUIRE(rep.c_xi.state != Complexity::State::Unknown);
      CHECK(rep.c_xi.twice >= 0);
      // every closure is downward closed, so each c_closure(O) is nonnegative too
      for (const auto& o : orbit_catalog(g->type().factors[0])) {
        auto r = complexity_report(closure(g->type(), {o}), h);
        CHECK(r.c_xi.twice >= 0);
      }
    }
  }
}

TEST_CASE("Richardson orbits meeting h^perp have nonnegative complexity") {
  for (const char* s : {"gl2", "gl3", "sp4"}) {
    auto g = alg(s);
    for (const auto& [name, h] : subgroups(g))
      for (const auto& p : standard_compositions(g->type().factors[0])) {
        const OrbitLabel o = richardson_partition(g, parabolic(g, {p}));
        auto c = complexity(o, h);
        if (c.c.state == Complexity::State::NegInfinity) continue;
        CAPTURE(s);
        CAPTURE(name);
        REQUIRE(c.c.is_finite());
        CHECK(c.c.twice >= 0);
      }
  }
}
