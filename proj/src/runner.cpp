#include "orbitkit/runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>

#include "orbitkit/errors.hpp"

namespace orbitkit {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<int> parse_ints(const std::string& s, const std::string& field) {
  std::vector<int> v;
  for (const auto& tok : split(s, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      v.push_back(x);
    } catch (const std::logic_error&) {
      throw InputError(field + ": expected a comma-separated list of integers, got '" + s + "'");
    }
  }
  return v;
}

[[noreturn]] void bad(const std::string& field, const std::string& what) { throw InputError(field + ": " + what); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + "." + key, "missing");
  return j.at(key);
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& field) {
  if (!j.is_string()) bad(field, "expected a string");
  return j.get<std::string>();
}

std::vector<int> int_list(const json& j, const std::string& field) {
  if (j.is_string()) return parse_ints(j.get<std::string>(), field);
  if (!j.is_array()) bad(field, "expected a list of integers");
  std::vector<int> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

LieType type_from_json(const json& j) {
  try {
    if (j.is_string()) return LieType::parse(j.get<std::string>());
    if (j.is_array()) {
      LieType t;
      for (const auto& f : j) {
        if (!f.is_string()) bad("type", "factor entries must be strings like \"sp4\"");
        t.factors.push_back(parse_factor(f.get<std::string>()));
      }
      if (t.factors.empty()) bad("type", "no factors");
      return t;
    }
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind("type", 0) == 0) throw;
    bad("type", e.what());
  }
  bad("type", "expected a string like \"sp2xsp4\" or a list of factor names");
}

std::vector<std::vector<int>> compositions_from_json(const json& j, const LieType& t, const std::string& field) {
  std::vector<std::vector<int>> out;
  if (j.is_string()) {
    out = parse_compositions(t, j.get<std::string>());
  } else if (j.is_array()) {
    if (!j.empty() && j[0].is_number_integer()) {
      out.push_back(int_list(j, field));
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_list(j[i], field + "[" + std::to_string(i) + "]"));
    }
  } else {
    bad(field, "expected compositions");
  }
  if (out.size() != t.factors.size())
    bad(field, "expected one composition per factor (" + std::to_string(t.factors.size()) + ")");
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      validate_composition(t.factors[i], out[i]);
    } catch (const InputError& e) {
      bad(field, e.what());
    }
  }
  return out;
}

OrbitLabel label_from_json(const json& j, const LieType& t, const std::string& field) {
  try {
    if (j.is_string()) return parse_label(t, j.get<std::string>());
    if (!j.is_array() || j.size() != t.factors.size()) bad(field, "expected one partition per factor");
    OrbitLabel l;
    for (std::size_t i = 0; i < j.size(); ++i) l.push_back(make_partition(t.factors[i], int_list(j[i], field)));
    return l;
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(field, 0) == 0) throw;
    bad(field, e.what());
  }
}

json label_parts(const OrbitLabel& l) {
  json a = json::array();
  for (const auto& p : l) a.push_back(p.parts);
  return a;
}

Rational rational_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
      Rational q(j.get<std::string>());
      q.canonicalize();
      return q;
    }
  } catch (const std::invalid_argument&) {
  }
  bad(field, "expected an integer or a \"p/q\" string");
}

json subgroup_canonical(const json& j, const LieType& t) {
  if (j.is_string()) return subgroup_canonical(parse_subgroup_shorthand(t, j.get<std::string>()), t);
  if (!j.is_object()) bad("subgroup", "expected an object or shorthand string");
  const std::string kind = as_string(require(j, "kind", "subgroup"), "subgroup.kind");
  json out{{"kind", kind}};
  auto mats = [&](const json& arr, const std::string& field) {
    if (!arr.is_array()) bad(field, "expected a list of matrices");
    json a = json::array();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      try {
        a.push_back(matrix_to_json(matrix_from_json(arr[i])));
      } catch (const InputError& e) {
        bad(field + "[" + std::to_string(i) + "]", e.what());
      }
    }
    return a;
  };
  if (kind == "torus") {
  } else if (kind == "parabolic" || kind == "levi") {
    out["compositions"] = compositions_from_json(require(j, "compositions", "subgroup"), t, "subgroup.compositions");
  } else if (kind == "span") {
    out["matrices"] = mats(require(j, "matrices", "subgroup"), "subgroup.matrices");
  } else if (kind == "diagonal") {
    out["source"] = as_int(require(j, "source", "subgroup"), "subgroup.source");
    out["targets"] = int_list(require(j, "targets", "subgroup"), "subgroup.targets");
    out["intertwiners"] = j.contains("intertwiners") ? mats(j["intertwiners"], "subgroup.intertwiners") : json::array();
  } else if (kind == "graph") {
    out["source_factors"] = int_list(require(j, "source_factors", "subgroup"), "subgroup.source_factors");
    out["images"] = mats(require(j, "images", "subgroup"), "subgroup.images");
  } else {
    bad("subgroup.kind", "unknown kind '" + kind + "'");
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!out.contains(it.key())) bad("subgroup." + it.key(), "unexpected field");
  return out;
}

json embedding_canonical(const json& j) {
  if (j.is_string()) return embedding_canonical(parse_embedding_shorthand(j.get<std::string>()));
  if (!j.is_object()) bad("embedding", "expected an object or shorthand string");
  const std::string kind = as_string(require(j, "kind", "embedding"), "embedding.kind");
  json out{{"kind", kind}};
  if (kind == "theta") {
    out["n"] = as_int(require(j, "n", "embedding"), "embedding.n");
    out["k"] = as_int(require(j, "k", "embedding"), "embedding.k");
  } else if (kind == "levi") {
    out["composition"] = int_list(require(j, "composition", "embedding"), "embedding.composition");
  } else if (kind == "torus") {
  } else if (kind == "graph") {
    out["h_type"] = type_from_json(require(j, "h_type", "embedding")).name();
    json a = json::array();
    const json& imgs = require(j, "images", "embedding");
    if (!imgs.is_array()) bad("embedding.images", "expected a list of matrices");
    for (std::size_t i = 0; i < imgs.size(); ++i) {
      try {
        a.push_back(matrix_to_json(matrix_from_json(imgs[i])));
      } catch (const InputError& e) {
        bad("embedding.images[" + std::to_string(i) + "]", e.what());
      }
    }
    out["images"] = a;
  } else {
    bad("embedding.kind", "unknown kind '" + kind + "'");
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!out.contains(it.key())) bad("embedding." + it.key(), "unexpected field");
  return out;
}

const std::set<std::string>& query_kinds() {
  static const std::set<std::string> k{"catalog", "richardson", "complexity", "xi-spherical",
                                       "ri-check", "branch",     "verify-examples"};
  return k;
}

EngineOptions engine_from_json(const json& e) {
  EngineOptions opt;
  opt.seed = e.at("seed").get<std::uint64_t>();
  opt.groebner.pair_budget = e.at("pair_budget").get<std::size_t>();
  opt.groebner.max_degree = e.at("max_degree").get<int>();
  opt.minor_budget = e.at("minor_budget").get<int>();
  opt.trials = e.at("trials").get<int>();
  return opt;
}

std::string hex(const unsigned char* d, unsigned n) {
  std::ostringstream os;
  for (unsigned i = 0; i < n; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(d[i]);
  return os.str();
}

json dim_or_null(const std::optional<CertifiedDim>& d) {
  if (!d || d->value < 0) return nullptr;
  return d->value;
}

}  // namespace

// --- parsing ---

std::vector<std::vector<int>> parse_compositions(const LieType& t, const std::string& s) {
  std::vector<std::vector<int>> out;
  if (s == "line") {
    for (const auto& f : t.factors) {
      if (f.family == Family::A) {
        const int n = static_cast<int>(f.size());
        out.push_back(n >= 2 ? std::vector<int>{1, n - 1} : std::vector<int>{1});
      } else {
        out.push_back(line_composition(f));
      }
    }
    return out;
  }
  if (s == "borel") {
    for (const auto& f : t.factors) out.push_back(std::vector<int>(f.size(), 1));
    return out;
  }
  for (const auto& part : split(s, '/')) out.push_back(parse_ints(part, "composition"));
  if (out.size() != t.factors.size())
    bad("composition", "expected " + std::to_string(t.factors.size()) + " '/'-separated compositions");
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      validate_composition(t.factors[i], out[i]);
    } catch (const InputError& e) {
      bad("composition", e.what());
    }
  }
  return out;
}

json parse_subgroup_shorthand(const LieType& t, const std::string& s) {
  if (s == "torus") return {{"kind", "torus"}};
  if (s == "line" || s == "borel") return {{"kind", "parabolic"}, {"compositions", parse_compositions(t, s)}};
  const auto colon = s.find(':');
  if (colon == std::string::npos) bad("subgroup", "unknown shorthand '" + s + "'");
  const std::string head = s.substr(0, colon), rest = s.substr(colon + 1);
  if (head == "levi" || head == "parabolic") return {{"kind", head}, {"compositions", parse_compositions(t, rest)}};
  if (head == "diagonal") {
    const auto gt = rest.find('>');
    if (gt == std::string::npos) bad("subgroup", "diagonal shorthand is diagonal:SOURCE>T1,T2");
    const auto src = parse_ints(rest.substr(0, gt), "subgroup.source");
    if (src.size() != 1) bad("subgroup.source", "expected one factor index");
    return {{"kind", "diagonal"}, {"source", src[0]}, {"targets", parse_ints(rest.substr(gt + 1), "subgroup.targets")}};
  }
  bad("subgroup", "unknown shorthand '" + s + "'");
}

json parse_embedding_shorthand(const std::string& s) {
  if (s == "torus") return {{"kind", "torus"}};
  const auto colon = s.find(':');
  if (colon == std::string::npos) bad("embedding", "unknown shorthand '" + s + "'");
  const std::string head = s.substr(0, colon), rest = s.substr(colon + 1);
  if (head == "theta") {
    const auto v = parse_ints(rest, "embedding");
    if (v.size() != 2) bad("embedding", "theta shorthand is theta:N,K");
    return {{"kind", "theta"}, {"n", v[0]}, {"k", v[1]}};
  }
  if (head == "levi") return {{"kind", "levi"}, {"composition", parse_ints(rest, "embedding.composition")}};
  bad("embedding", "unknown shorthand '" + s + "'");
}

QMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty list of rows");
  const std::size_t n = j.size();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw InputError("matrix must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rational_from_json(j[i][k], "entry");
  }
  return m;
}

json matrix_to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const Rational& q = m(i, k);
      if (q.get_den() == 1 && q.get_num().fits_slong_p())
        r.push_back(q.get_num().get_si());
      else
        r.push_back(q.get_str());
    }
    rows.push_back(r);
  }
  return rows;
}

SubalgebraSpec subgroup_from_json(const json& j, const LieType& t) {
  const json c = subgroup_canonical(j, t);
  const std::string kind = c["kind"];
  auto mats = [](const json& a) {
    std::vector<QMatrix> v;
    for (const auto& m : a) v.push_back(matrix_from_json(m));
    return v;
  };
  if (kind == "torus") return TorusSpec{};
  if (kind == "parabolic") return ParabolicSpec{c["compositions"].get<std::vector<std::vector<int>>>()};
  if (kind == "levi") return LeviSpec{c["compositions"].get<std::vector<std::vector<int>>>()};
  if (kind == "span") return SpanSpec{mats(c["matrices"])};
  if (kind == "diagonal") {
    DiagonalSpec d;
    d.source = c["source"].get<std::size_t>();
    d.targets = c["targets"].get<std::vector<std::size_t>>();
    d.intertwiners = mats(c["intertwiners"]);
    return d;
  }
  GraphSpec g;
  g.source_factors = c["source_factors"].get<std::vector<std::size_t>>();
  g.images = mats(c["images"]);
  return g;
}

Embedding embedding_from_json(const json& j, const AlgebraPtr& g) {
  const json c = embedding_canonical(j);
  const std::string kind = c["kind"];
  if (kind == "theta") return theta_embedding(c["n"].get<int>(), c["k"].get<int>());
  if (kind == "torus") {
    if (g->type().factors.size() != 1 || g->type().factors[0].family != Family::A)
      bad("embedding", "torus embedding needs a single gl factor");
    return levi_embedding(g, std::vector<int>(g->matrix_size(), 1));
  }
  if (kind == "levi") {
    if (g->type().factors.size() != 1 || g->type().factors[0].family != Family::A)
      bad("embedding", "levi embedding needs a single gl factor");
    return levi_embedding(g, c["composition"].get<std::vector<int>>());
  }
  Embedding e{g, build_classical(LieType::parse(c["h_type"].get<std::string>())), {}};
  for (const auto& m : c["images"]) e.images.push_back(matrix_from_json(m));
  if (e.images.size() != e.h->dim())
    bad("embedding.images", "expected " + std::to_string(e.h->dim()) + " images, one per basis element of " +
                                e.h->type().name());
  for (const auto& m : e.images)
    if (m.rows() != g->matrix_size()) bad("embedding.images", "image has the wrong size");
  return e;
}

json canonicalize(const json& spec) {
  if (!spec.is_object()) bad("spec", "expected a JSON object");
  static const std::set<std::string> known{"schema", "query", "type",  "subgroup", "orbit", "orbit2",
                                           "composition", "composition2", "embedding", "engine"};
  for (auto it = spec.begin(); it != spec.end(); ++it)
    if (!known.count(it.key())) bad(it.key(), "unexpected field");
  if (spec.contains("schema") && spec["schema"] != kSchemaVersion)
    bad("schema", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  const json& qj = require(spec, "query", "spec");
  if (!qj.is_string()) bad("query", "expected a string");
  std::string q = qj.get<std::string>();
  if (q == "verify-paper") q = "verify-examples";
  if (!query_kinds().count(q)) bad("query", "unknown query '" + q + "'");

  json out{{"schema", kSchemaVersion}, {"query", q}};

  json eng = {{"seed", 0xA15B}, {"pair_budget", 20000}, {"max_degree", 40}, {"minor_budget", 200}, {"trials", 8}};
  if (spec.contains("engine")) {
    const json& e = spec["engine"];
    if (!e.is_object()) bad("engine", "expected an object");
    for (auto it = e.begin(); it != e.end(); ++it) {
      if (!eng.contains(it.key())) bad("engine." + it.key(), "unexpected field");
      if (!it.value().is_number_integer() || it.value().get<long long>() < (it.key() == "seed" ? 0 : 1))
        bad("engine." + it.key(), it.key() == "seed" ? "expected a nonnegative integer" : "expected a positive integer");
      eng[it.key()] = it.value();
    }
  }
  out["engine"] = eng;
  if (q == "verify-examples") return out;

  auto need = [&](const char* key) -> const json& {
    if (!spec.contains(key)) bad(key, "required for query '" + q + "'");
    return spec[key];
  };
  auto forbid_others = [&](std::initializer_list<const char*> allowed) {
    for (auto it = spec.begin(); it != spec.end(); ++it) {
      const std::string& k = it.key();
      if (k == "schema" || k == "query" || k == "engine") continue;
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        bad(k, "not used by query '" + q + "'");
    }
  };

  if (q == "branch") {
    forbid_others({"type", "embedding", "orbit", "orbit2", "composition", "composition2"});
    const json emb = embedding_canonical(need("embedding"));
    LieType gt;
    if (emb["kind"] == "theta") {
      gt = LieType{{Factor{Family::C, emb["n"].get<int>() * emb["k"].get<int>()}}};
      if (spec.contains("type") && type_from_json(spec["type"]) != gt)
        bad("type", "theta embedding lands in " + gt.name());
    } else {
      gt = type_from_json(need("type"));
    }
    out["type"] = gt.name();
    out["embedding"] = emb;
    const Embedding e = embedding_from_json(emb, build_classical(gt));
    const LieType ht = e.h->type();
    out["orbit"] = label_parts(label_from_json(need("orbit"), gt, "orbit"));
    out["orbit2"] = label_parts(label_from_json(need("orbit2"), ht, "orbit2"));
    if (spec.contains("composition")) out["composition"] = compositions_from_json(spec["composition"], gt, "composition");
    if (spec.contains("composition2"))
      out["composition2"] = compositions_from_json(spec["composition2"], ht, "composition2");
    return out;
  }

  const LieType t = type_from_json(need("type"));
  out["type"] = t.name();
  if (q == "catalog") {
    forbid_others({"type"});
  } else if (q == "richardson") {
    forbid_others({"type", "composition"});
    out["composition"] = compositions_from_json(need("composition"), t, "composition");
  } else if (q == "complexity") {
    forbid_others({"type", "subgroup", "orbit"});
    out["subgroup"] = subgroup_canonical(need("subgroup"), t);
    out["orbit"] = label_parts(label_from_json(need("orbit"), t, "orbit"));
  } else if (q == "xi-spherical") {
    forbid_others({"type", "subgroup", "orbit"});
    out["subgroup"] = subgroup_canonical(need("subgroup"), t);
    if (spec.contains("orbit")) out["orbit"] = label_parts(label_from_json(spec["orbit"], t, "orbit"));
  } else if (q == "ri-check") {
    forbid_others({"type", "subgroup", "composition"});
    out["subgroup"] = subgroup_canonical(need("subgroup"), t);
    out["composition"] = compositions_from_json(need("composition"), t, "composition");
  }
  return out;
}

std::string instance_hash(const json& canonical) {
  const std::string payload = canonical.dump() + "\n" + kEngineVersion;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!EVP_Digest(payload.data(), payload.size(), md, &len, EVP_sha256(), nullptr))
    throw ConstructionError("sha256 failed");
  return hex(md, len);
}

// --- JSON views ---

json to_json(const Partition& p) { return p.to_string(); }
json to_json(const OrbitLabel& l) { return label_string(l); }

json to_json(const Certificate& c) {
  return {{"kind", cert_kind_name(c.kind)}, {"primes", c.primes},   {"seed", c.seed},
          {"trials", c.trials},             {"exhaustive", c.exhaustive},
          {"primes_agreed", c.primes_agreed}, {"witness", c.witness}, {"note", c.note}};
}

json to_json(const CertifiedDim& d) {
  return {{"value", d.value < 0 ? json(nullptr) : json(d.value)}, {"certificate", to_json(d.cert)}};
}

json to_json(const Complexity& c) {
  json j{{"value", c.to_string()}, {"exact", c.exact}};
  j["twice"] = c.is_finite() ? json(c.twice) : json(nullptr);
  return j;
}

json to_json(const SphericityVerdict& v) {
  json per = json::array();
  for (const auto& oc : v.per_orbit) {
    json e{{"orbit", to_json(oc.orbit)},
           {"orbit_dim", oc.orbit_dim},
           {"bound", oc.orbit_dim / 2},
           {"closed_dim", oc.closed.value < 0 ? json(nullptr) : json(oc.closed.value)},
           {"open_dim", dim_or_null(oc.open)},
           {"passes", oc.passes},
           {"certificate", to_json(oc.closed.cert)}};
    if (oc.open) e["open_certificate"] = to_json(oc.open->cert);
    if (!oc.error.empty()) e["error"] = oc.error;
    per.push_back(e);
  }
  json blocking = json::array();
  for (const auto& b : v.blocking) blocking.push_back(to_json(b));
  return {{"verdict", verdict_name(v.verdict)},
          {"per_orbit", per},
          {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
          {"blocking", blocking},
          {"budget_exceeded", v.budget_hit}};
}

json to_json(const CrossCheck& c) {
  return {{"richardson", to_json(c.richardson)},
          {"route_a", to_json(c.route_a)},
          {"route_b", {{"bound", c.route_b.value}, {"base_dim", c.base_dim}, {"certificate", to_json(c.route_b.cert)}}},
          {"agreement", agreement_name(c.agreement)},
          {"verdict", c.value ? json(verdict_name(*c.value)) : json(nullptr)}};
}

json to_json(const BranchingReport& b) {
  json j{{"condition_b", to_json(b.condition_b)},
         {"richardson", b.richardson},
         {"agreement", agreement_name(b.agreement)},
         {"implied", {"Tor-finiteness", "Hom-finiteness"}}};
  if (b.g_mod_q) j["g_mod_q"] = to_json(*b.g_mod_q);
  if (b.double_cosets)
    j["double_cosets"] = {{"bound", b.double_cosets->value},
                          {"base_dim", b.double_coset_base},
                          {"finite", b.double_cosets->value <= b.double_coset_base ? json(nullptr) : json(false)},
                          {"certificate", to_json(b.double_cosets->cert)}};
  if (b.g_mod_p_as_h_space) j["g_mod_p_as_h_space"] = verdict_name(*b.g_mod_p_as_h_space);
  return j;
}

json to_json(const Sandwich& s) {
  return {{"left", to_json(s.left)}, {"middle", to_json(s.middle)}, {"right", to_json(s.right)},
          {"holds", agreement_name(s.holds)}};
}

// --- running ---

json run_instance(const json& c) {
  const std::string q = c.at("query");
  const EngineOptions opt = engine_from_json(c.at("engine"));
  json r{{"schema", kSchemaVersion},
         {"engine", kEngineVersion},
         {"instance_hash", instance_hash(c)},
         {"query", q},
         {"seeds", {opt.seed}},
         {"primes", {kPrime1, kPrime2}}};
  bool budget = false;

  if (q == "verify-examples") {
    const auto rows = verify_examples(opt);
    r["examples"] = to_json(rows);
    const bool ok = std::none_of(rows.begin(), rows.end(), [](const ExampleRow& x) { return x.status == "FAIL"; });
    r["verdict"] = ok ? "PASS" : "FAIL";
    r["budget_exceeded"] = false;
    return r;
  }

  const LieType t = LieType::parse(c.at("type").get<std::string>());
  const AlgebraPtr g = build_classical(t);
  auto label = [&](const json& parts, const LieType& lt) {
    OrbitLabel l;
    for (std::size_t i = 0; i < parts.size(); ++i) l.push_back(make_partition(lt.factors[i], parts[i]));
    return l;
  };
  auto comps = [](const json& j) { return j.get<std::vector<std::vector<int>>>(); };

  if (q == "catalog") {
    json factors = json::array();
    for (const auto& f : t.factors) {
      json orbits = json::array();
      for (const auto& p : orbit_catalog(f))
        orbits.push_back({{"partition", to_json(p)}, {"dim", orbit_dim(f, p)}, {"rank_sequence", rank_sequence(p)}});
      factors.push_back({{"factor", f.name()}, {"dim", f.dim()}, {"orbits", orbits}});
    }
    r["factors"] = factors;
  } else if (q == "richardson") {
    const Parabolic p = parabolic(g, comps(c["composition"]));
    const OrbitLabel o = richardson_partition(g, p, opt.trials, opt.seed);
    r["richardson"] = to_json(o);
    r["orbit_dim"] = orbit_dim(t, o);
    r["nilradical_dim"] = p.nilradical.dim();
    r["parabolic_dim"] = p.algebra.dim();
  } else if (q == "complexity") {
    const Subspace h = resolve(subgroup_from_json(c["subgroup"], t), g);
    const OrbitComplexity oc = complexity(label(c["orbit"], t), h, opt);
    r["orbit"] = to_json(oc.orbit);
    r["orbit_dim"] = oc.orbit_dim;
    r["subgroup_dim"] = h.dim();
    r["c"] = to_json(oc.c);
    Verdict v = Verdict::Unknown;
    if (oc.c.state == Complexity::State::NegInfinity || (oc.c.is_finite() && oc.c.twice <= 0 && oc.c.exact))
      v = Verdict::Spherical;
    else if (oc.c.is_finite() && oc.c.twice > 0)
      v = Verdict::NotSpherical;
    r["verdict"] = verdict_name(v);
    json e{{"orbit", to_json(oc.orbit)},
           {"orbit_dim", oc.orbit_dim},
           {"bound", oc.orbit_dim / 2},
           {"closed_dim", nullptr},
           {"open_dim", oc.open.value < 0 ? json(nullptr) : json(oc.open.value)},
           {"certificate", to_json(oc.open.cert)}};
    if (!oc.error.empty()) {
      e["error"] = oc.error;
      budget = true;
    }
    r["per_orbit"] = json::array({e});
  } else if (q == "xi-spherical") {
    const Subspace h = resolve(subgroup_from_json(c["subgroup"], t), g);
    const OrbitSet xi = c.contains("orbit") ? closure(t, label(c["orbit"], t)) : nilpotent_cone(t);
    const SphericityVerdict v = xi_spherical(xi, h, opt);
    r["xi"] = c.contains("orbit") ? "closure of " + label_string(label(c["orbit"], t)) : "nilpotent cone";
    r["subgroup_dim"] = h.dim();
    r.update(to_json(v));
    budget = v.budget_hit;
  } else if (q == "ri-check") {
    const Subspace h = resolve(subgroup_from_json(c["subgroup"], t), g);
    const CrossCheck cc = richardson_cross_check(g, comps(c["composition"]), h, opt);
    r.update(to_json(cc));
    r["per_orbit"] = r["route_a"]["per_orbit"];
    budget = cc.route_a.budget_hit;
  } else if (q == "branch") {
    const Embedding e = embedding_from_json(c["embedding"], g);
    const OrbitLabel o1 = label(c["orbit"], t), o2 = label(c["orbit2"], e.h->type());
    std::optional<std::vector<std::vector<int>>> p, qq;
    if (c.contains("composition")) p = comps(c["composition"]);
    if (c.contains("composition2")) qq = comps(c["composition2"]);
    // the Richardson formulations need both parabolics; the sandwich only P
    const BranchingReport b = p && qq ? branching_check(e, o1, o2, p, qq, opt) : branching_check(e, o1, o2, {}, {}, opt);
    r["h_type"] = e.h->type().name();
    r.update(to_json(b));
    r["verdict"] = r["condition_b"]["verdict"];
    r["per_orbit"] = r["condition_b"]["per_orbit"];
    budget = b.condition_b.budget_hit || (b.g_mod_q && b.g_mod_q->budget_hit);
    if (p) {
      const Sandwich s = branch_complexity_sandwich(e, *p, o2, opt);
      r["sandwich"] = to_json(s);
    }
  }
  r["budget_exceeded"] = budget;
  return r;
}

// --- worked examples ---

std::vector<ExampleRow> verify_examples(const EngineOptions& opt) {
  std::vector<ExampleRow> rows;
  auto row = [&](std::string name, std::string expected, auto&& compute) {
    ExampleRow x{std::move(name), std::move(expected), "", "", ""};
    try {
      x.got = compute(x.detail);
      x.status = x.got == x.expected ? "PASS" : "FAIL";
    } catch (const BudgetExceeded& e) {
      x.status = "SKIP";
      x.detail = std::string("budget: ") + e.what();
    }
    rows.push_back(std::move(x));
  };
  auto pair = [](int a, int b) { return std::to_string(a) + ", " + std::to_string(b); };

  for (int n : {2, 3}) {
    row("sp" + std::to_string(2 * n) + " line stabilizer: dim(O_min cap p^perp), dim O_min", pair(1, 2 * n),
        [&](std::string& detail) {
          const LieType t{{Factor{Family::C, n}}};
          const AlgebraPtr g = build_classical(t);
          const Parabolic p = parabolic(g, {line_composition(t.factors[0])});
          const OrbitLabel o = parse_label(t, "min");
          const CertifiedDim d = open_stratum_dim(o, annihilator(p.algebra), opt);
          detail = "c = " + std::to_string(d.value - orbit_dim(t, o) / 2) + ", " + cert_kind_name(d.cert.kind);
          if (d.cert.kind != CertKind::ExactGroebner) return std::string("inexact");
          return pair(d.value, orbit_dim(t, o));
        });
  }
  for (int n : {1, 2}) {
    row("sp" + std::to_string(2 * n) + " x sp" + std::to_string(4 * n) +
            " diagonal: dim(closure(O_min x O_min) cap h^perp), dim O",
        pair(2 * n + 1, 6 * n), [&](std::string& detail) {
          const DiagonalPair d = diagonal_symplectic_pair(n);
          const CertifiedDim c = closure_intersection_dim(d.orbit, annihilator(d.h), opt);
          detail = cert_kind_name(c.cert.kind);
          return pair(c.value, orbit_dim(d.g->type(), d.orbit));
        });
  }
  {
    const LieType t{{Factor{Family::A, 2}}};
    const AlgebraPtr g = build_classical(t);
    for (const auto& comp : standard_compositions(t.factors[0])) {
      std::string name = "gl3 parabolic (";
      for (std::size_t i = 0; i < comp.size(); ++i) name += (i ? "," : "") + std::to_string(comp[i]);
      name += "): open dim = dim O'/2 below the Richardson orbit";
      const Parabolic p = parabolic(g, {comp});
      const OrbitLabel rich = richardson_partition(g, p, opt.trials, opt.seed);
      const Subspace v = annihilator(p.algebra);
      std::string expected;
      for (const auto& o : closure(t, rich).orbits) expected += label_string(o) + ":" + std::to_string(orbit_dim(t, o) / 2) + " ";
      expected.pop_back();
      row(name, expected, [&](std::string& detail) {
        std::string got;
        for (const auto& o : closure(t, rich).orbits) {
          const CertifiedDim d = open_stratum_dim(o, v, opt);
          got += label_string(o) + ":";
          if (d.cert.kind == CertKind::ExactGroebner)
            got += std::to_string(d.value);
          else
            got += cert_kind_name(d.cert.kind);
          got += " ";
        }
        detail = "Richardson orbit " + label_string(rich);
        got.pop_back();
        return got;
      });
    }
  }
  row("theta n=k=1: gl1 x gl1 -> sp2, (reg, reg, min)", "Spherical", [&](std::string& detail) {
    const Embedding e = theta_embedding(1, 1);
    const BranchingReport b = branching_check(e, parse_label(e.g->type(), "min"), parse_label(e.h->type(), "reg"),
                                              std::nullopt, std::nullopt, opt);
    detail = std::to_string(b.condition_b.per_orbit.size()) + " orbit pairs checked";
    return verdict_name(b.condition_b.verdict);
  });
  return rows;
}

json to_json(const std::vector<ExampleRow>& rows) {
  json a = json::array();
  for (const auto& x : rows)
    a.push_back({{"name", x.name}, {"expected", x.expected}, {"got", x.got}, {"status", x.status}, {"detail", x.detail}});
  return a;
}

// --- cache ---

std::string ResultCache::default_dir() {
  if (const char* d = std::getenv("ORBITKIT_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/orbitkit";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/orbitkit";
  return ".orbitkit-cache";
}

namespace {
fs::path entry_path(const std::string& dir, const std::string& hash) {
  return fs::path(dir) / hash.substr(0, 2) / (hash.substr(2) + ".json");
}
std::mutex& writer_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::optional<json> ResultCache::load(const std::string& hash) const {
  std::ifstream in(entry_path(dir_, hash));
  if (!in) return std::nullopt;
  try {
    json e = json::parse(in);
    if (e.value("key", "") != hash || e.value("engine", "") != kEngineVersion) return std::nullopt;
    return e.at("report");
  } catch (const json::exception&) {
    return std::nullopt;  // torn or foreign file; recompute
  }
}

void ResultCache::store(const std::string& hash, const json& report) const {
  std::lock_guard<std::mutex> lock(writer_mutex());
  const fs::path p = entry_path(dir_, hash);
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  if (ec) return;  // an unwritable cache only costs recomputation
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream ts;
  ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  const json e{{"key", hash}, {"engine", kEngineVersion}, {"created", ts.str()}, {"report", report}};
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << e.dump(1) << '\n';
  }
  fs::rename(tmp, p, ec);
}

}  // namespace orbitkit
