#include "doctest.h"

#include <filesystem>

#include "orbitkit/errors.hpp"
#include "orbitkit/runner.hpp"

using namespace orbitkit;

namespace {

std::string input_error(const json& spec) {
  try {
    canonicalize(spec);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("canonical specs round-trip byte-identically") {
  const std::vector<json> specs = {
      {{"query", "catalog"}, {"type", "sp4"}},
      {{"query", "richardson"}, {"type", "gl4"}, {"composition", "2,2"}},
      {{"query", "complexity"}, {"type", "sp4"}, {"subgroup", "line"}, {"orbit", "min"}},
      {{"query", "complexity"}, {"type", "gl2"}, {"subgroup", {{"kind", "span"}, {"matrices", {{{"1/2", 0}, {0, "-2/4"}}}}}},
       {"orbit", {{2}}}},
      {{"query", "xi-spherical"}, {"type", "sp2xsp4"}, {"subgroup", "diagonal:0>1"}, {"orbit", "min"}},
      {{"query", "ri-check"}, {"type", "gl3"}, {"subgroup", "levi:2,1"}, {"composition", "borel"}},
      {{"query", "branch"}, {"embedding", "theta:1,1"}, {"orbit", "min"}, {"orbit2", "reg"}},
      {{"query", "verify-paper"}, {"engine", {{"seed", 7}}}},
  };
  for (const auto& s : specs) {
    CAPTURE(s.dump());
    const json c = canonicalize(s);
    const std::string once = c.dump();
    CHECK(canonicalize(json::parse(once)).dump() == once);
    CHECK(c["schema"] == kSchemaVersion);
    CHECK(instance_hash(c) == instance_hash(canonicalize(json::parse(once))));
  }
  // shorthand and explicit forms canonicalize to the same spec
  const json a = canonicalize({{"query", "complexity"}, {"type", "sp4"}, {"subgroup", "line"}, {"orbit", "min"}});
  const json b = canonicalize({{"query", "complexity"},
                               {"type", "C2"},
                               {"subgroup", {{"kind", "parabolic"}, {"compositions", {{1, 2, 1}}}}},
                               {"orbit", {{2, 1, 1}}},
                               {"engine", {{"seed", 0xA15B}}}});
  CHECK(a.dump() == b.dump());
  CHECK(instance_hash(a).size() == 64);
  const json other = canonicalize({{"query", "complexity"}, {"type", "sp4"}, {"subgroup", "line"}, {"orbit", "min"},
                                   {"engine", {{"seed", 1}}}});
  CHECK(instance_hash(a) != instance_hash(other));
}

TEST_CASE("malformed specs name the offending field") {
  CHECK(input_error({{"type", "gl2"}}).rfind("spec.query", 0) == 0);
  CHECK(input_error({{"query", "nope"}}).rfind("query", 0) == 0);
  CHECK(input_error({{"query", "catalog"}, {"type", "sp5"}}).rfind("type", 0) == 0);
  CHECK(input_error({{"query", "catalog"}, {"type", "gl2"}, {"bogus", 1}}).rfind("bogus", 0) == 0);
  CHECK(input_error({{"query", "catalog"}, {"type", "gl2"}, {"orbit", "reg"}}).rfind("orbit", 0) == 0);
  CHECK(input_error({{"query", "richardson"}, {"type", "gl4"}, {"composition", "2,3"}}).rfind("composition", 0) == 0);
  CHECK(input_error({{"query", "complexity"}, {"type", "sp4"}, {"subgroup", "line"}, {"orbit", "3,1"}})
            .rfind("orbit", 0) == 0);
  CHECK(input_error({{"query", "complexity"}, {"type", "gl2"}, {"subgroup", {{"kind", "blob"}}}, {"orbit", "reg"}})
            .rfind("subgroup.kind", 0) == 0);
  CHECK(input_error({{"query", "complexity"},
                     {"type", "gl2"},
                     {"subgroup", {{"kind", "span"}, {"matrices", {{{1, 0}}}}}},
                     {"orbit", "reg"}})
            .rfind("subgroup.matrices[0]", 0) == 0);
  CHECK(input_error({{"query", "catalog"}, {"type", "gl2"}, {"engine", {{"trials", 0}}}}).rfind("engine.trials", 0) == 0);
  CHECK(input_error({{"query", "catalog"}, {"type", "gl2"}, {"schema", 2}}).rfind("schema", 0) == 0);
}

TEST_CASE("reports are deterministic") {
  const json c = canonicalize({{"query", "xi-spherical"}, {"type", "gl3"}, {"subgroup", "torus"}});
  const std::string r1 = run_instance(c).dump();
  const std::string r2 = run_instance(c).dump();
  CHECK(r1 == r2);
  const json r = json::parse(r1);
  CHECK(r["verdict"] == "NotSpherical");
  CHECK(r["instance_hash"] == instance_hash(c));
  CHECK_FALSE(r.contains("wall_time_ms"));
  for (const auto& e : r["per_orbit"]) {
    CHECK(e.contains("orbit"));
    CHECK(e.contains("closed_dim"));
    CHECK(e.contains("open_dim"));
    CHECK(e.contains("bound"));
    CHECK(e.contains("certificate"));
  }
}

TEST_CASE("query results") {
  auto run = [](const json& s) { return run_instance(canonicalize(s)); };
  CHECK(run({{"query", "richardson"}, {"type", "gl4"}, {"composition", "2,2"}})["richardson"] == "[2,2]");
  CHECK(run({{"query", "complexity"}, {"type", "sp4"}, {"subgroup", "line"}, {"orbit", "min"}})["c"]["value"] == "-1");
  CHECK(run({{"query", "complexity"}, {"type", "sp6"}, {"subgroup", "line"}, {"orbit", "min"}})["c"]["value"] == "-2");
  const json ri = run({{"query", "ri-check"}, {"type", "gl2"}, {"subgroup", "torus"}, {"composition", "borel"}});
  CHECK(ri["agreement"] == "Agree");
  CHECK(ri["verdict"] == "Spherical");
  const json br = run({{"query", "branch"}, {"embedding", "theta:1,1"}, {"orbit", "min"}, {"orbit2", "reg"}});
  CHECK(br["verdict"] == "Spherical");
  const json cat = run({{"query", "catalog"}, {"type", "gl3"}});
  CHECK(cat["factors"][0]["orbits"].size() == 3);

  const json tight = run({{"query", "complexity"},
                          {"type", "sp6"},
                          {"subgroup", "line"},
                          {"orbit", "reg"},
                          {"engine", {{"pair_budget", 3}}}});
  CHECK(tight["budget_exceeded"] == true);
  CHECK(tight["verdict"] == "Unknown");
}

TEST_CASE("example suite passes") {
  for (const auto& row : verify_examples()) {
    CAPTURE(row.name);
    CAPTURE(row.got);
    CHECK(row.status == "PASS");
  }
}

TEST_CASE("cache replays reports verbatim") {
  const auto dir = std::filesystem::temp_directory_path() / "orbitkit-test-cache";
  std::filesystem::remove_all(dir);
  ResultCache cache(dir.string());
  const json c = canonicalize({{"query", "complexity"}, {"type", "gl2"}, {"subgroup", "torus"}, {"orbit", "reg"}});
  const std::string h = instance_hash(c);
  CHECK_FALSE(cache.load(h));
  const json fresh = run_instance(c);
  cache.store(h, fresh);
  const auto hit = cache.load(h);
  REQUIRE(hit);
  CHECK(hit->dump() == fresh.dump());
  CHECK_FALSE(cache.load(instance_hash(canonicalize({{"query", "catalog"}, {"type", "gl2"}}))));
  std::filesystem::remove_all(dir);
}
