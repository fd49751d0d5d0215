// advcongest: command-line front end for the solvers.
//
// Exit codes: 0 success, 1 verify found a violation, 2 malformed input,
// 3 incremental solver guard exceeded, 4 solver/oracle disagreement.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "advcongest/document.hpp"
#include "advcongest/k_constant.hpp"
#include "advcongest/kapprox_solver.hpp"
#include "advcongest/opt_solver.hpp"
#include "advcongest/oracle.hpp"

namespace {

using nlohmann::json;
using namespace advcongest;

constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitGuard = 3;
constexpr int kExitMismatch = 4;

struct Output {
  bool pretty = false;
  void emit(const json& j) const { std::cout << serialize(j, pretty) << '\n'; }
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

json shape_json(const ShapeConfig& config) {
  return json{{"M", config.shape.max_load},
              {"k", config.shape.k},
              {"k_prime", config.shape.k_prime},
              {"k_dprime", config.shape.k_dprime},
              {"cbar_max", to_string(config.cbar_max)},
              {"cbar_below", to_string(config.cbar_below)}};
}

int run_solve_k(const std::string& path, int precision, const std::string& alpha_text,
                const std::string& guard, const std::string& trace_path, const Output& out) {
  const Instance instance = to_instance(load_instance_document(path));
  SolverConfig config{upper_K(precision), guard == "strict" ? GuardMode::strict : GuardMode::lenient};
  if (!alpha_text.empty()) {
    try {
      config.alpha = parse_rational(alpha_text);
    } catch (const std::invalid_argument& e) {
      throw DocumentError(e.what());
    }
  }
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  try {
    result = solve(instance, config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::guard_exceeded && e.code() != ErrorCode::load_order_violated) throw;
    std::cerr << "advcongest: " << e.what() << '\n';
    return kExitGuard;
  }
  json doc{{"solver", "kapprox"},
           {"alpha", to_string(config.alpha)},
           {"loads", result.loads.to_vector()},
           {"needed_alpha", to_string(needed_alpha(instance, result.loads))},
           {"per_round_deviations", result.trace.per_round_deviation_counts},
           {"elapsed_ms", elapsed_ms(start)}};
  if (!trace_path.empty()) {
    json trace = to_json(result.trace);
    std::ofstream file(trace_path);
    if (!file) throw DocumentError("cannot write " + trace_path);
    file << serialize(trace, out.pretty) << '\n';
    doc["trace"] = std::move(trace);
  }
  out.emit(doc);
  return 0;
}

int run_best_alpha(const std::string& path, bool oracle_check, bool serial, const Output& out) {
  const Instance instance = to_instance(load_instance_document(path));
  if (oracle_check && (instance.players() > 12 || instance.resources() > 5)) {
    std::cerr << "advcongest: --oracle-check needs n <= 12 and m <= 5\n";
    return kExitBadInput;
  }
  const auto start = std::chrono::steady_clock::now();
  const OptResult result = best_alpha(
      instance, OptOptions{CbarPairing::coupled, serial ? Execution::serial : Execution::parallel});
  json doc{{"solver", "opt"},
           {"alpha", to_string(result.alpha_star)},
           {"loads", result.witness.to_vector()},
           {"needed_alpha", to_string(needed_alpha(instance, result.witness))},
           {"elapsed_ms", elapsed_ms(start)}};
  if (result.binding) doc["binding"] = to_json(*result.binding);
  if (result.config) doc["shape"] = shape_json(*result.config);
  int code = 0;
  if (oracle_check) {
    const OracleAlpha oracle = oracle_best_alpha(instance);
    doc["oracle_alpha"] = to_string(oracle.alpha);
    const bool agree = oracle.alpha == ExtendedRational(result.alpha_star) &&
                       is_alpha_pne(instance, result.witness, result.alpha_star);
    doc["oracle_agrees"] = agree;
    if (!agree) code = kExitMismatch;
  }
  out.emit(doc);
  return code;
}

int run_verify(const std::string& path, const std::string& loads_text,
               const std::string& alpha_text, const Output& out) {
  const Instance instance = to_instance(load_instance_document(path));
  const LoadVector loads = parse_loads(loads_text);
  Rational alpha;
  try {
    alpha = parse_rational(alpha_text);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }
  const bool ok = is_alpha_pne(instance, loads, alpha);
  json doc{{"alpha", to_string(alpha)},
           {"loads", loads.to_vector()},
           {"is_alpha_pne", ok},
           {"needed_alpha", to_string(needed_alpha(instance, loads))}};
  if (!ok) {
    const auto violation = binding_deviation(instance, loads);
    doc["violation"] = to_json(*violation);
    std::cerr << "violation: r" << violation->from + 1 << " -> r" << violation->to + 1 << ": "
              << to_string(violation->cost) << " > " << to_string(alpha) << " * "
              << to_string(violation->deviation_cost) << '\n';
  }
  out.emit(doc);
  return ok ? 0 : kExitViolation;
}

int run_oracle(const std::string& path, bool serial, const Output& out) {
  const Instance instance = to_instance(load_instance_document(path));
  const Execution execution = serial ? Execution::serial : Execution::parallel;
  const auto start = std::chrono::steady_clock::now();
  const OracleAlpha best = oracle_best_alpha(instance, execution);
  const OracleEpsilon eps = oracle_best_additive_epsilon(instance, execution);
  out.emit(json{{"solver", "oracle"},
                {"alpha", to_string(best.alpha)},
                {"loads", best.witness.to_vector()},
                {"has_exact_pne", best.alpha <= ExtendedRational(Rational(1))},
                {"additive_epsilon", to_string(eps.epsilon)},
                {"epsilon_loads", eps.witness.to_vector()},
                {"profiles", partition_count(instance.players(), instance.resources())},
                {"elapsed_ms", elapsed_ms(start)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate pure equilibria of congestion games with a budgeted adversary"};
  app.require_subcommand(1);
  Output out;
  bool json_mode = true;
  app.add_flag("--json", json_mode, "Compact JSON output (default)");
  app.add_flag("--pretty", out.pretty, "Indented JSON output");

  std::string instance_path;
  auto* solve_k = app.add_subcommand("solve-k", "Incremental K-approximate equilibrium");
  int precision = 12;
  std::string guard = "lenient";
  std::string trace_path, solve_alpha;
  solve_k->add_option("instance", instance_path, "Instance JSON")->required();
  solve_k->add_option("--alpha", solve_alpha, "Run at this rational factor instead of the K bound");
  solve_k->add_option("--precision", precision, "Decimal digits of the K upper bound")
      ->check(CLI::Range(1, 200));
  solve_k->add_option("--guard", guard, "Per-round deviation cap")
      ->check(CLI::IsMember({"strict", "lenient"}));
  solve_k->add_option("--trace", trace_path, "Write the event trace to this file");

  auto* best = app.add_subcommand("best-alpha", "Smallest alpha admitting an alpha-PNE");
  bool oracle_check = false;
  bool serial = false;
  best->add_option("instance", instance_path, "Instance JSON")->required();
  best->add_flag("--oracle-check", oracle_check, "Cross-check against brute force");
  best->add_flag("--serial", serial, "Use the serial reference kernel");

  auto* verify = app.add_subcommand("verify", "Check whether loads form an alpha-PNE");
  std::string loads_text, alpha_text;
  verify->add_option("instance", instance_path, "Instance JSON")->required();
  verify->add_option("loads", loads_text, "Comma separated loads, e.g. 2,2,1")->required();
  verify->add_option("alpha", alpha_text, "Rational factor, e.g. 7/6")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute force over decreasing profiles");
  oracle->add_option("instance", instance_path, "Instance JSON")->required();
  oracle->add_flag("--serial", serial, "Use the serial reference kernel");

  auto* gen = app.add_subcommand("gen", "Deterministic random instance");
  GeneratorParams params;
  std::string gen_out;
  gen->add_option("--n", params.players, "Players")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m", params.resources, "Resources")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", params.seed, "Seed");
  gen->add_option("--coeff-max", params.coeff_max, "Coefficient numerator bound");
  gen->add_option("--budget-max", params.budget_max, "Budget numerator bound");
  gen->add_option("--denom-max", params.denom_max, "Denominator bound");
  gen->add_option("--out", gen_out, "Write to file instead of stdout");

  auto* fixtures = app.add_subcommand("fixtures", "Write the canonical instances");
  std::string fixtures_dir;
  fixtures->add_option("out_dir", fixtures_dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*solve_k) return run_solve_k(instance_path, precision, solve_alpha, guard, trace_path, out);
    if (*best) return run_best_alpha(instance_path, oracle_check, serial, out);
    if (*verify) return run_verify(instance_path, loads_text, alpha_text, out);
    if (*oracle) return run_oracle(instance_path, serial, out);
    if (*gen) {
      const auto doc = to_json(generate_instance(params));
      if (gen_out.empty()) {
        out.emit(doc);
      } else {
        std::ofstream file(gen_out);
        if (!file) throw DocumentError("cannot write " + gen_out);
        file << serialize(doc, out.pretty) << '\n';
      }
      return 0;
    }
    if (*fixtures) {
      json written = json::array();
      for (const auto& p : write_fixtures(fixtures_dir)) written.push_back(p.string());
      out.emit(json{{"written", written}});
      return 0;
    }
  } catch (const DocumentError& e) {
    std::cerr << "advcongest: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    std::cerr << "advcongest: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "advcongest: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
