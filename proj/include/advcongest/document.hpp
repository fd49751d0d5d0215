#pragma once

// JSON documents exchanged by the command-line tool. Rationals are always
// strings ("p" or "p/q"); resource indices are 1-based on the wire.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "advcongest/game.hpp"
#include "advcongest/kapprox_solver.hpp"

namespace advcongest {

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceDocument {
  int players = 0;
  Rational budget;
  std::vector<Rational> coefficients;
  std::optional<std::string> name;
  std::optional<std::string> description;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) = default;
};

nlohmann::json to_json(const InstanceDocument& doc);
InstanceDocument instance_document_from_json(const nlohmann::json& j);
InstanceDocument parse_instance_document(const std::string& text);
InstanceDocument load_instance_document(const std::filesystem::path& path);
std::string serialize(const nlohmann::json& j, bool pretty);

/// Throws Error for values that violate the game model.
Instance to_instance(const InstanceDocument& doc);
InstanceDocument to_document(const Instance& instance);

nlohmann::json to_json(const TraceEvent& event);
nlohmann::json to_json(const SolveTrace& trace);
nlohmann::json to_json(const Deviation& deviation);

/// Applies the "trace" events of a result document to an empty profile.
LoadVector replay_trace_json(const nlohmann::json& trace, std::size_t resources);

/// Comma separated integers, e.g. "2,2,1".
LoadVector parse_loads(const std::string& text);

// Canonical instances.
InstanceDocument example1_document();
InstanceDocument appendix_a_document();
/// Five players, B = 1, a = (0, K/2 - 1/4, 1/K) with the irrational values
/// rounded to `digits` decimal digits.
InstanceDocument tightness_document(int digits = 12);
InstanceDocument two_resources_document();
/// Writes all canonical instances as <name>.json into `dir`; returns the paths.
std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir);

struct GeneratorParams {
  int players = 5;
  std::size_t resources = 3;
  std::uint64_t seed = 1;
  long coeff_max = 10;   // numerators drawn from [0, coeff_max]
  long budget_max = 10;  // budget numerator drawn from [1, budget_max]
  long denom_max = 4;    // denominators drawn from [1, denom_max]
};

/// Deterministic pseudorandom instance; coefficients sorted non-decreasing.
InstanceDocument generate_instance(const GeneratorParams& params);

}  // namespace advcongest
