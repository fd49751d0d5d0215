// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Paths to the CLI and the committed fixtures come from the build.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "advcongest/k_constant.hpp"
#include "advcongest/kapprox_solver.hpp"
#include "advcongest/opt_solver.hpp"
#include "advcongest/oracle.hpp"
#include "support.hpp"

namespace {

using namespace advcongest;
using nlohmann::json;
using testsupport::Ranges;

const std::string kCli = ADVCONGEST_CLI_PATH;
const std::filesystem::path kFixtures = ADVCONGEST_FIXTURE_DIR;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Rational pow10(int p) {
  mpz_class s;
  mpz_ui_pow_ui(s.get_mpz_t(), 10, static_cast<unsigned long>(p));
  return Rational(s);
}

std::string fixture(const std::string& name) { return (kFixtures / (name + ".json")).string(); }

json run_json(const std::string& args, int expected_exit, Outcome& out) {
  const auto r = testsupport::run_command(kCli + " " + args);
  if (r.exit_code != expected_exit) {
    out.fail("`" + args + "` exited " + std::to_string(r.exit_code));
    return json();
  }
  try {
    return json::parse(r.output);
  } catch (const std::exception&) {
    out.fail("`" + args + "` printed non-JSON output");
    return json();
  }
}

// Instance sets shared by criteria 4-6 and reused by 9.
std::vector<Instance> criterion4_instances() {
  std::mt19937_64 rng(4004);
  std::vector<Instance> out;
  for (int i = 0; i < 10000; ++i) out.push_back(testsupport::random_instance(rng, Ranges{1, 30, 1, 10}));
  return out;
}

std::vector<Instance> criterion5_instances() {
  std::mt19937_64 rng(5005);
  std::vector<Instance> out;
  for (int i = 0; i < 1000; ++i) {
    const Ranges ranges = i % 2 == 0 ? Ranges{1, 4, 1, 10} : Ranges{1, 30, 1, 2};
    out.push_back(testsupport::random_instance(rng, ranges));
  }
  return out;
}

std::vector<Instance> criterion6_instances() {
  std::mt19937_64 rng(6006);
  std::vector<Instance> out;
  for (int i = 0; i < 500; ++i) out.push_back(testsupport::random_instance(rng, Ranges{1, 10, 1, 4}));
  return out;
}

Outcome example1_nonexistence() {
  Outcome out;
  struct Row {
    std::string loads;
    int from, to;
    std::string cost, dev;
  };
  const std::vector<Row> rows = {{"5,0,0", 1, 2, "6", "2"},
                                  {"4,1,0", 1, 2, "6", "4"},
                                  {"3,2,0", 1, 3, "6", "5"},
                                  {"3,1,1", 3, 2, "5", "4"},
                                  {"2,2,1", 2, 1, "7", "6"}};
  const auto profiles = enumerate_profiles(5, 3);
  if (profiles.size() != rows.size()) out.fail("expected five decreasing profiles");
  for (const auto& row : rows) {
    const json doc = run_json("verify " + fixture("example1") + " " + row.loads + " 1", 1, out);
    if (!out.ok) break;
    const json& v = doc.at("violation");
    if (v.at("from") != row.from || v.at("to") != row.to || v.at("cost") != row.cost ||
        v.at("deviation_cost") != row.dev) {
      out.fail("(" + row.loads + ") reported " + v.dump());
    }
  }
  out.detail = out.ok ? "all five profiles report the expected deviation" : out.detail;
  return out;
}

Outcome tightness() {
  Outcome out;
  const Rational lo = compute_K(12, Rounding::toward_zero).value;
  const Rational hi = compute_K(12, Rounding::away_from_zero).value;
  const Rational tol = 1 / pow10(6);
  std::ostringstream detail;
  for (const char* cmd : {"best-alpha", "oracle"}) {
    const json doc = run_json(std::string(cmd) + " " + fixture("tightness"), 0, out);
    if (!out.ok) return out;
    const Rational alpha = parse_rational(doc.at("alpha").get<std::string>());
    if (alpha < lo - tol || alpha > hi + tol) out.fail(std::string(cmd) + " gave " + to_string(alpha));
    detail << cmd << "=" << to_double(alpha) << " ";
  }
  if (out.ok) out.detail = detail.str() + "within 1e-6 of K";
  return out;
}

Outcome seven_player_trace() {
  Outcome out;
  const auto trace_path = std::filesystem::temp_directory_path() / "advcongest_accept_trace.json";
  const json doc = run_json("solve-k " + fixture("appendix_a") + " --guard strict --trace " + trace_path.string(),
                            0, out);
  if (!out.ok) return out;
  if (doc.at("loads") != json({2, 2, 1, 1, 1})) out.fail("final loads " + doc.at("loads").dump());
  if (doc.at("needed_alpha") != "25/24") out.fail("needed_alpha " + doc.at("needed_alpha").dump());
  std::vector<std::pair<int, int>> final_moves;
  for (const auto& e : doc.at("trace")) {
    if (e.at("round") == 7 && e.at("kind") == "deviation") final_moves.emplace_back(e.at("from"), e.at("to"));
  }
  if (final_moves != std::vector<std::pair<int, int>>{{5, 2}, {1, 5}}) out.fail("final round moves differ");
  std::ifstream file(trace_path);
  if (!file || json::parse(file) != doc.at("trace")) out.fail("trace file differs from embedded trace");
  if (out.ok) out.detail = "loads (2,2,1,1,1), moves r5->r2, r1->r5, needed_alpha 25/24";
  return out;
}

Outcome termination(const std::vector<Instance>& instances) {
  Outcome out;
  const SolverConfig config{upper_K(12), GuardMode::strict};
  int worst_ratio_num = 0, worst_ratio_den = 1;
  for (std::size_t i = 0; i < instances.size() && out.ok; ++i) {
    try {
      const SolveResult result = solve(instances[i], config);
      if (!is_alpha_pne(instances[i], result.loads, config.alpha)) out.fail("instance " + std::to_string(i) + " not a K-PNE");
      const auto& counts = result.trace.per_round_deviation_counts;
      for (std::size_t k = 0; k < counts.size(); ++k) {
        // Track the largest observed deviations / (2k) fraction.
        if (counts[k] * worst_ratio_den > worst_ratio_num * 2 * static_cast<int>(k + 1)) {
          worst_ratio_num = counts[k];
          worst_ratio_den = 2 * static_cast<int>(k + 1);
        }
      }
    } catch (const Error& e) {
      out.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  if (out.ok) {
    out.detail = std::to_string(instances.size()) + " strict runs, worst round used " +
                 std::to_string(worst_ratio_num) + " of " + std::to_string(worst_ratio_den) + " moves";
  }
  return out;
}

Outcome exact_existence(const std::vector<Instance>& instances) {
  Outcome out;
  for (std::size_t i = 0; i < instances.size() && out.ok; ++i) {
    if (!oracle_has_exact_pne(instances[i]).exists) out.fail("instance " + std::to_string(i) + " has no exact PNE");
  }
  if (out.ok) out.detail = std::to_string(instances.size()) + " instances with exact PNE";
  return out;
}

Outcome solver_oracle_equivalence(const std::vector<Instance>& instances) {
  Outcome out;
  int nontrivial = 0;
  for (std::size_t i = 0; i < instances.size() && out.ok; ++i) {
    const auto& inst = instances[i];
    const OptResult solved = best_alpha(inst);
    const OracleAlpha truth = oracle_best_alpha(inst);
    if (ExtendedRational(solved.alpha_star) != truth.alpha) {
      out.fail("instance " + std::to_string(i) + ": " + to_string(solved.alpha_star) + " vs " + to_string(truth.alpha));
    }
    if (!is_alpha_pne(inst, solved.witness, solved.alpha_star) ||
        (!truth.alpha.is_infinite() && !is_alpha_pne(inst, truth.witness, truth.alpha.value()))) {
      out.fail("instance " + std::to_string(i) + ": witness does not verify");
    }
    nontrivial += solved.alpha_star > 1;
  }
  if (out.ok) {
    out.detail = std::to_string(instances.size()) + " exact matches (" + std::to_string(nontrivial) + " with alpha* > 1)";
  }
  return out;
}

Outcome k_identity() {
  Outcome out;
  const Rational up = compute_K(12, Rounding::away_from_zero).value;
  const Rational down = compute_K(12, Rounding::toward_zero).value;
  const Rational residual = k_polynomial(up);
  if (residual < 0 || residual >= 1 / pow10(11)) out.fail("residual " + to_string(residual));
  if (up - down > 1 / pow10(12) || up < down) out.fail("bracket width " + to_string(Rational(up - down)));
  if (out.ok) out.detail = "K in [" + to_string(down) + ", " + to_string(up) + "]";
  return out;
}

Outcome scale_invariance() {
  Outcome out;
  std::mt19937_64 rng(8008);
  for (int i = 0; i < 100 && out.ok; ++i) {
    const Instance inst = testsupport::random_instance(rng, Ranges{1, 8, 1, 4});
    const Rational lambda = testsupport::random_positive_rational(rng, 1000);
    const Instance scaled = inst.scaled(lambda);
    const auto a = oracle_best_alpha(inst), b = oracle_best_alpha(scaled);
    if (a.alpha != b.alpha || a.witness != b.witness) out.fail("alpha changed under scaling, pair " + std::to_string(i));
    const auto e = oracle_best_additive_epsilon(inst), f = oracle_best_additive_epsilon(scaled);
    if (f.epsilon != lambda * e.epsilon || e.witness != f.witness) out.fail("epsilon not linear, pair " + std::to_string(i));
  }
  // For each target epsilon, a scaled copy of the first example beats it, even
  // over every profile rather than only non-increasing ones.
  const Instance example = to_instance(load_instance_document(fixture("example1")));
  for (const Rational& eps : {Rational(1), Rational(1000), Rational(1, 7), pow10(9)}) {
    const Instance scaled = example.scaled(2 * eps);
    if (!(testsupport::exhaustive_best_epsilon(scaled) > eps)) out.fail("no scaled counterexample for " + to_string(eps));
  }
  if (out.ok) out.detail = "100 scaled pairs; epsilon grows linearly; counterexamples up to 1e9";
  return out;
}

Outcome universal_bound(const std::vector<const std::vector<Instance>*>& sets) {
  Outcome out;
  const Rational ceiling = upper_K(12);
  std::size_t total = 0;
  Rational worst(1);
  for (const auto* set : sets) {
    for (const auto& inst : *set) {
      const OptResult r = best_alpha(inst);
      const ExtendedRational needed = needed_alpha(inst, r.witness);
      if (needed > ExtendedRational(ceiling)) out.fail("needed_alpha " + to_string(needed) + " above K");
      if (!needed.is_infinite() && needed.value() > worst) worst = needed.value();
      ++total;
    }
  }
  if (out.ok) out.detail = std::to_string(total) + " witnesses, largest needed_alpha " + std::to_string(to_double(worst));
  return out;
}

}  // namespace

int main() {
  const auto c4 = criterion4_instances();
  const auto c5 = criterion5_instances();
  const auto c6 = criterion6_instances();

  struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0 means no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "example-1 non-existence", 1, example1_nonexistence},
      {2, "tightness fixture", 5, tightness},
      {3, "seven-player trace", 1, seven_player_trace},
      {4, "termination under strict guard", 120, [&] { return termination(c4); }},
      {5, "exact equilibria for n<=4 or m<=2", 30, [&] { return exact_existence(c5); }},
      {6, "solver/oracle equivalence", 300, [&] { return solver_oracle_equivalence(c6); }},
      {7, "K identity", 0, k_identity},
      {8, "scale invariance", 30, scale_invariance},
      {9, "universal bound", 0, [&] { return universal_bound({&c4, &c5, &c6}); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && seconds > c.limit_s) outcome.fail("took " + std::to_string(seconds) + " s");
    failures += !outcome.ok;
    std::cout << (outcome.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): "
              << outcome.detail << " [" << std::fixed << std::setprecision(2) << seconds << " s]\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
