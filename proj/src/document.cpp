#include "advcongest/document.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "advcongest/k_constant.hpp"

namespace advcongest {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* key) {
  if (!j.is_string()) throw DocumentError(std::string("'") + key + "' must be a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string("'") + key + "': " + e.what());
  }
}

json index_or_null(const Origin& r) { return r ? json(*r + 1) : json(nullptr); }

Rational round_to_digits(const Rational& x, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpz_class scaled = floor(Rational(x * scale + Rational(1, 2)));
  Rational out(scaled, scale);
  out.canonicalize();
  return out;
}

}  // namespace

json to_json(const InstanceDocument& doc) {
  json j;
  j["players"] = doc.players;
  j["budget"] = to_string(doc.budget);
  json coeffs = json::array();
  for (const auto& a : doc.coefficients) coeffs.push_back(to_string(a));
  j["coefficients"] = std::move(coeffs);
  if (doc.name) j["name"] = *doc.name;
  if (doc.description) j["description"] = *doc.description;
  return j;
}

InstanceDocument instance_document_from_json(const json& j) {
  if (!j.is_object()) throw DocumentError("instance document must be a JSON object");
  for (const char* key : {"players", "budget", "coefficients"}) {
    if (!j.contains(key)) throw DocumentError(std::string("missing '") + key + "'");
  }
  InstanceDocument doc;
  if (!j["players"].is_number_integer()) throw DocumentError("'players' must be an integer");
  doc.players = j["players"].get<int>();
  doc.budget = rational_field(j["budget"], "budget");
  if (!j["coefficients"].is_array()) throw DocumentError("'coefficients' must be an array");
  for (const auto& c : j["coefficients"]) doc.coefficients.push_back(rational_field(c, "coefficients"));
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw DocumentError("'name' must be a string");
    doc.name = j["name"].get<std::string>();
  }
  if (j.contains("description")) {
    if (!j["description"].is_string()) throw DocumentError("'description' must be a string");
    doc.description = j["description"].get<std::string>();
  }
  return doc;
}

InstanceDocument parse_instance_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(e.what());
  }
  return instance_document_from_json(j);
}

InstanceDocument load_instance_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_document(buffer.str());
}

std::string serialize(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

Instance to_instance(const InstanceDocument& doc) {
  return validate_instance(doc.coefficients, doc.players, doc.budget);
}

InstanceDocument to_document(const Instance& instance) {
  InstanceDocument doc;
  doc.players = instance.players();
  doc.budget = instance.budget();
  doc.coefficients = instance.coefficients();
  return doc;
}

json to_json(const TraceEvent& event) {
  json j;
  j["kind"] = event.kind == EventKind::player_added ? "player_added" : "deviation";
  j["round"] = event.round;
  j["from"] = index_or_null(event.from);
  j["to"] = event.to + 1;
  j["cost_before"] = to_string(event.cost_before);
  j["cost_after"] = to_string(event.cost_after);
  j["loads_after"] = event.loads_after.to_vector();
  return j;
}

json to_json(const SolveTrace& trace) {
  json events = json::array();
  for (const auto& e : trace.events) events.push_back(to_json(e));
  return events;
}

json to_json(const Deviation& deviation) {
  return json{{"from", deviation.from + 1},
              {"to", deviation.to + 1},
              {"cost", to_string(deviation.cost)},
              {"deviation_cost", to_string(deviation.deviation_cost)},
              {"ratio", to_string(deviation.ratio)}};
}

LoadVector replay_trace_json(const json& trace, std::size_t resources) {
  LoadVector loads = LoadVector::zeros(resources);
  for (const auto& e : trace) {
    Origin from;
    if (!e.at("from").is_null()) from = e.at("from").get<std::size_t>() - 1;
    loads.move(from, e.at("to").get<std::size_t>() - 1);
  }
  return loads;
}

LoadVector parse_loads(const std::string& text) {
  if (!text.empty() && text.back() == ',') throw DocumentError("malformed load list: '" + text + "'");
  std::vector<int> loads;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw DocumentError("malformed load list: '" + text + "'");
    }
    loads.push_back(std::stoi(item));
  }
  if (loads.empty()) throw DocumentError("empty load list");
  return LoadVector(std::move(loads));
}

InstanceDocument example1_document() {
  return InstanceDocument{5,
                          Rational(6),
                          {Rational(0), Rational(2), Rational(5)},
                          "example1",
                          "Three resources, five players, no exact pure equilibrium; best factor 7/6."};
}

InstanceDocument appendix_a_document() {
  return InstanceDocument{7,
                          Rational(9),
                          {Rational(1), Rational(4), Rational(4), Rational(10), Rational(10)},
                          "appendix_a",
                          "Seven players on five resources; the incremental solver ends at "
                          "loads (2,2,1,1,1), a 25/24-approximate equilibrium."};
}

InstanceDocument tightness_document(int digits) {
  const Rational k = compute_K(digits + 18, Rounding::away_from_zero).value;
  const Rational a2 = round_to_digits(Rational(k / 2 - Rational(1, 4)), digits);
  const Rational a3 = round_to_digits(Rational(1 / k), digits);
  return InstanceDocument{
      5, Rational(1), {Rational(0), a2, a3}, "tightness",
      "Five players, budget 1, coefficients 0, K/2-1/4 and 1/K where K is the root of "
      "x^3 - x^2/2 - 1 in (1,2); the two irrational coefficients are rounded to the nearest " +
          std::to_string(digits) + "-digit decimal. No alpha-approximate equilibrium exists "
          "for alpha noticeably below K."};
}

InstanceDocument two_resources_document() {
  return InstanceDocument{6,
                          Rational(5, 2),
                          {Rational(1), Rational(3)},
                          "two_resources",
                          "Two resources always admit an exact pure equilibrium."};
}

std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& doc : {example1_document(), tightness_document(), appendix_a_document(),
                          two_resources_document()}) {
    const auto path = dir / (*doc.name + ".json");
    std::ofstream out(path);
    if (!out) throw DocumentError("cannot write " + path.string());
    out << serialize(to_json(doc), true) << '\n';
    written.push_back(path);
  }
  return written;
}

InstanceDocument generate_instance(const GeneratorParams& params) {
  if (params.players < 1 || params.resources < 1 || params.coeff_max < 0 ||
      params.budget_max < 1 || params.denom_max < 1) {
    throw DocumentError("generator parameters must be positive");
  }
  std::mt19937_64 rng(params.seed);
  auto draw = [&rng](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  InstanceDocument doc;
  doc.players = params.players;
  for (std::size_t r = 0; r < params.resources; ++r) {
    const long num = draw(0, params.coeff_max);
    const long den = draw(1, params.denom_max);
    Rational a(num, den);
    a.canonicalize();
    doc.coefficients.push_back(std::move(a));
  }
  std::sort(doc.coefficients.begin(), doc.coefficients.end());
  const long budget_num = draw(1, params.budget_max);
  const long budget_den = draw(1, params.denom_max);
  doc.budget = Rational(budget_num, budget_den);
  doc.budget.canonicalize();
  doc.name = "gen-" + std::to_string(params.seed);
  return doc;
}

}  // namespace advcongest
