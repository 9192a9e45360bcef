// orbitkit command-line front end.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "orbitkit/errors.hpp"
#include "orbitkit/runner.hpp"

using namespace orbitkit;

namespace {

struct Flags {
  std::string type, composition, parabolic, orbit, orbit2, composition2, subgroup, embedding, spec;
  std::uint64_t seed = 0xA15B;
  std::size_t pair_budget = 20000;
  int max_degree = 40, minor_budget = 200, trials = 8;
  bool json_out = false, timing = false, no_cache = false;
};

void print_per_orbit(const json& per) {
  for (const auto& e : per) {
    std::cout << "  " << e["orbit"].get<std::string>() << "  dim " << e["orbit_dim"] << "  bound " << e["bound"];
    if (!e["closed_dim"].is_null()) std::cout << "  closed " << e["closed_dim"];
    if (!e["open_dim"].is_null()) std::cout << "  open " << e["open_dim"];
    std::cout << "  [" << e["certificate"]["kind"].get<std::string>() << "]";
    if (e.contains("error")) std::cout << "  " << e["error"].get<std::string>();
    std::cout << '\n';
  }
}

void print_text(const json& r) {
  const std::string q = r["query"];
  if (q == "catalog") {
    for (const auto& f : r["factors"]) {
      std::cout << f["factor"].get<std::string>() << " (dim " << f["dim"] << ")\n";
      for (const auto& o : f["orbits"]) {
        std::cout << "  " << o["partition"].get<std::string>() << "  dim " << o["dim"] << "  ranks";
        for (const auto& x : o["rank_sequence"]) std::cout << ' ' << x;
        std::cout << '\n';
      }
    }
  } else if (q == "richardson") {
    std::cout << "partition " << r["richardson"].get<std::string>() << "\n"
              << "orbit dim " << r["orbit_dim"] << " = 2 x nilradical dim " << r["nilradical_dim"] << '\n';
  } else if (q == "complexity") {
    print_per_orbit(r["per_orbit"]);
    std::cout << "c = " << r["c"]["value"].get<std::string>() << (r["c"]["exact"].get<bool>() ? "" : " (lower bound)")
              << "\nverdict: " << r["verdict"].get<std::string>() << '\n';
  } else if (q == "xi-spherical") {
    std::cout << "xi: " << r["xi"].get<std::string>() << '\n';
    print_per_orbit(r["per_orbit"]);
    std::cout << "verdict: " << r["verdict"].get<std::string>();
    if (!r["witness"].is_null()) std::cout << " (witness " << r["witness"].get<std::string>() << ")";
    std::cout << '\n';
  } else if (q == "ri-check") {
    std::cout << "Richardson orbit " << r["richardson"].get<std::string>() << '\n';
    print_per_orbit(r["per_orbit"]);
    std::cout << "route A: " << r["route_a"]["verdict"].get<std::string>() << '\n'
              << "route B: moment fiber bound " << r["route_b"]["bound"] << " vs base " << r["route_b"]["base_dim"]
              << '\n'
              << "agreement: " << r["agreement"].get<std::string>();
    if (!r["verdict"].is_null()) std::cout << " (" << r["verdict"].get<std::string>() << ")";
    std::cout << '\n';
  } else if (q == "branch") {
    std::cout << "h = " << r["h_type"].get<std::string>() << '\n';
    print_per_orbit(r["per_orbit"]);
    std::cout << "condition (b): " << r["verdict"].get<std::string>() << '\n';
    if (r.contains("g_mod_q")) std::cout << "G/phi(Q): " << r["g_mod_q"]["verdict"].get<std::string>() << '\n';
    if (r.contains("double_cosets"))
      std::cout << "double cosets: fiber bound " << r["double_cosets"]["bound"] << " vs base "
                << r["double_cosets"]["base_dim"] << '\n';
    if (r.contains("g_mod_p_as_h_space"))
      std::cout << "G/P as H-space: " << r["g_mod_p_as_h_space"].get<std::string>() << '\n';
    if (r["richardson"].get<bool>()) std::cout << "agreement: " << r["agreement"].get<std::string>() << '\n';
    if (r.contains("sandwich")) {
      const auto& s = r["sandwich"];
      std::cout << "sandwich: " << s["left"]["value"].get<std::string>() << " <= " << s["middle"]["value"].get<std::string>()
                << " <= " << s["right"]["value"].get<std::string>() << "  " << s["holds"].get<std::string>() << '\n';
    }
  } else if (q == "verify-examples") {
    for (const auto& x : r["examples"]) {
      std::cout << x["status"].get<std::string>() << "  " << x["name"].get<std::string>() << '\n';
      std::cout << "      expected " << x["expected"].get<std::string>() << "\n      got      " << x["got"].get<std::string>()
                << '\n';
      if (!x["detail"].get<std::string>().empty()) std::cout << "      " << x["detail"].get<std::string>() << '\n';
    }
    std::cout << r["verdict"].get<std::string>() << '\n';
  }
  if (r.contains("wall_time_ms")) std::cout << "wall time " << r["wall_time_ms"] << " ms\n";
}

json spec_from_flags(const std::string& query, const Flags& f) {
  json s{{"schema", kSchemaVersion}, {"query", query}};
  s["engine"] = {{"seed", f.seed},
                 {"pair_budget", f.pair_budget},
                 {"max_degree", f.max_degree},
                 {"minor_budget", f.minor_budget},
                 {"trials", f.trials}};
  if (!f.type.empty()) s["type"] = f.type;
  if (!f.orbit.empty()) s["orbit"] = f.orbit;
  if (!f.orbit2.empty()) s["orbit2"] = f.orbit2;
  if (!f.composition.empty()) s["composition"] = f.composition;
  if (!f.composition2.empty()) s["composition2"] = f.composition2;
  if (!f.embedding.empty()) s["embedding"] = f.embedding;
  if (!f.parabolic.empty() && !f.subgroup.empty()) throw InputError("subgroup: give either --parabolic or --subgroup");
  if (!f.parabolic.empty())
    s["subgroup"] = f.parabolic == "line" || f.parabolic == "borel" ? f.parabolic : "parabolic:" + f.parabolic;
  if (!f.subgroup.empty()) s["subgroup"] = f.subgroup;
  return s;
}

int run(const json& raw, const Flags& f) {
  const json spec = canonicalize(raw);
  const std::string hash = instance_hash(spec);
  const auto t0 = std::chrono::steady_clock::now();
  json report;
  std::optional<ResultCache> cache;
  if (!f.no_cache) cache.emplace(ResultCache::default_dir());
  if (cache) {
    if (auto hit = cache->load(hash)) report = *hit;
  }
  if (report.is_null()) {
    report = run_instance(spec);
    if (cache) cache->store(hash, report);
  }
  if (f.timing)
    report["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (f.json_out)
    std::cout << report.dump(2) << '\n';
  else
    print_text(report);
  if (report.value("budget_exceeded", false)) return 3;
  if (report["query"] == "verify-examples" && report["verdict"] != "PASS") return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitkit: nilpotent orbits and sphericity of homogeneous spaces"};
  app.require_subcommand(0, 1);
  Flags f;

  auto engine_flags = [&](CLI::App* a) {
    a->add_option("--seed", f.seed, "sampling seed")->capture_default_str();
    a->add_option("--pair-budget", f.pair_budget, "Groebner pair budget")->capture_default_str();
    a->add_option("--max-degree", f.max_degree, "Groebner degree cap")->capture_default_str();
    a->add_option("--minor-budget", f.minor_budget, "minor tuples tried per localization")->capture_default_str();
    a->add_option("--trials", f.trials, "random trials for sampled bounds")->capture_default_str();
    a->add_flag("--json", f.json_out, "print the JSON report");
    a->add_flag("--timing", f.timing, "add wall_time_ms to the report");
    a->add_flag("--no-cache", f.no_cache, "bypass the result cache");
  };
  engine_flags(&app);
  app.add_option("--spec", f.spec, "instance file (JSON)");

  auto* catalog = app.add_subcommand("catalog", "nilpotent orbits of a type");
  catalog->add_option("--type", f.type, "e.g. gl3, sp4, so5, gl2xsp4")->required();
  engine_flags(catalog);

  auto* rich = app.add_subcommand("richardson", "Richardson orbit of a standard parabolic");
  rich->add_option("--type", f.type)->required();
  rich->add_option("--composition", f.composition, "e.g. 2,2 or 1,2,1/2, line, borel")->required();
  engine_flags(rich);

  auto* cx = app.add_subcommand("complexity", "c_O(G/H)");
  cx->add_option("--type", f.type)->required();
  cx->add_option("--orbit", f.orbit, "min, reg, zero or parts like 2,1,1")->required();
  cx->add_option("--parabolic", f.parabolic, "line, borel or a composition");
  cx->add_option("--subgroup", f.subgroup, "torus, levi:C, parabolic:C, diagonal:S>T");
  engine_flags(cx);

  auto* xi = app.add_subcommand("xi-spherical", "Xi-sphericity of G/H");
  xi->add_option("--type", f.type)->required();
  xi->add_option("--orbit", f.orbit, "Xi is the closure of this orbit (default: nilpotent cone)");
  xi->add_option("--parabolic", f.parabolic);
  xi->add_option("--subgroup", f.subgroup);
  engine_flags(xi);

  auto* ri = app.add_subcommand("ri-check", "cross-check finiteness of P-orbits on G/H against sphericity");
  ri->add_option("--type", f.type)->required();
  ri->add_option("--composition", f.composition, "the parabolic P")->required();
  ri->add_option("--parabolic", f.parabolic, "H as a parabolic");
  ri->add_option("--subgroup", f.subgroup);
  engine_flags(ri);

  auto* br = app.add_subcommand("branch", "branching conditions for H in G");
  br->add_option("--type", f.type, "G (implied by theta embeddings)");
  br->add_option("--embedding", f.embedding, "theta:N,K, levi:C, torus")->required();
  br->add_option("--orbit", f.orbit, "orbit of G")->required();
  br->add_option("--orbit2", f.orbit2, "orbit of H")->required();
  br->add_option("--composition", f.composition, "parabolic P of G");
  br->add_option("--composition2", f.composition2, "parabolic Q of H");
  engine_flags(br);

  auto* ver = app.add_subcommand("verify-examples", "recompute the worked examples");
  ver->alias("verify-paper");
  engine_flags(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json raw;
    if (!f.spec.empty()) {
      if (!app.get_subcommands().empty()) throw InputError("--spec: cannot be combined with a subcommand");
      std::ifstream in(f.spec);
      if (!in) throw InputError("--spec: cannot open " + f.spec);
      try {
        raw = json::parse(in);
      } catch (const json::parse_error& e) {
        throw InputError(std::string("--spec: ") + e.what());
      }
    } else if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    } else {
      std::string q = app.get_subcommands().front()->get_name();
      raw = spec_from_flags(q, f);
    }
    return run(raw, f);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
