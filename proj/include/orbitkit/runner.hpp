#pragma once

// Instance specifications (JSON), report generation and the on-disk cache.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbitkit/instances.hpp"

namespace orbitkit {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kEngineVersion = "orbitkit-engine/1";

// --- parsing helpers shared with the CLI ---

/// "2,2" for one factor, "1,2,1/2" for several, "line", "borel".
std::vector<std::vector<int>> parse_compositions(const LieType& t, const std::string& s);
/// "torus", "borel", "line", "levi:2,1", "parabolic:1,2,1/2", "diagonal:0>1,2".
json parse_subgroup_shorthand(const LieType& t, const std::string& s);
/// "theta:1,1", "levi:2,1", "torus".
json parse_embedding_shorthand(const std::string& s);

SubalgebraSpec subgroup_from_json(const json& j, const LieType& t);
Embedding embedding_from_json(const json& j, const AlgebraPtr& g);
QMatrix matrix_from_json(const json& j);
json matrix_to_json(const QMatrix& m);

/// Fills defaults and normalizes every field; throws InputError naming the
/// offending field.
json canonicalize(const json& spec);
/// SHA-256 of the canonical dump plus the engine version, hex.
std::string instance_hash(const json& canonical);

/// Runs a canonical spec. The report never contains wall-clock data.
json run_instance(const json& canonical);

// --- JSON views of results ---

json to_json(const Partition& p);
json to_json(const OrbitLabel& l);
json to_json(const Certificate& c);
json to_json(const CertifiedDim& d);
json to_json(const Complexity& c);
json to_json(const SphericityVerdict& v);
json to_json(const CrossCheck& c);
json to_json(const BranchingReport& b);
json to_json(const Sandwich& s);

// --- worked examples ---

struct ExampleRow {
  std::string name;
  std::string expected;
  std::string got;
  std::string status;  // PASS, FAIL, SKIP
  std::string detail;
};
std::vector<ExampleRow> verify_examples(const EngineOptions& opt = {});
json to_json(const std::vector<ExampleRow>& rows);

// --- cache ---

class ResultCache {
 public:
  /// ORBITKIT_CACHE_DIR, else $XDG_CACHE_HOME/orbitkit, else ~/.cache/orbitkit.
  static std::string default_dir();
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

  std::optional<json> load(const std::string& hash) const;
  void store(const std::string& hash, const json& report) const;
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
};

}  // namespace orbitkit
