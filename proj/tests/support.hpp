#pragma once

// Independent reference computations and seeded generators for the tests.
// Nothing here calls the O(1) deviation formula or the shape machinery.

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "advcongest/document.hpp"
#include "advcongest/game.hpp"

namespace testsupport {

using advcongest::ExtendedRational;
using advcongest::Instance;
using advcongest::LoadVector;
using advcongest::Origin;
using advcongest::Rational;

// Cost on `r` computed from first principles: split B evenly over argmax.
inline Rational naive_cost(const Instance& inst, const std::vector<int>& loads, std::size_t r) {
  int top = 0;
  for (int l : loads) top = std::max(top, l);
  int count = 0;
  for (int l : loads) count += l == top;
  Rational cost = inst.coefficient(r) * loads[r];
  if (loads[r] == top) cost += inst.budget() / count;
  return cost;
}

inline Rational naive_deviation_cost(const Instance& inst, const LoadVector& loads, Origin from,
                                     std::size_t to) {
  std::vector<int> after = loads.to_vector();
  if (from) --after[*from];
  ++after[to];
  return naive_cost(inst, after, to);
}

inline ExtendedRational ratio(const Rational& num, const Rational& den) {
  if (den == 0) return num > 0 ? ExtendedRational::infinity() : ExtendedRational(Rational(0));
  return ExtendedRational(Rational(num / den));
}

inline ExtendedRational naive_needed_alpha(const Instance& inst, const LoadVector& loads) {
  if (loads.size() == 1) return ExtendedRational(Rational(1));
  ExtendedRational worst(Rational(0));
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0) continue;
    const Rational cost = naive_cost(inst, loads.to_vector(), r);
    for (std::size_t s = 0; s < loads.size(); ++s) {
      if (s == r) continue;
      worst = std::max(worst, ratio(cost, naive_deviation_cost(inst, loads, r, s)));
    }
  }
  return worst;
}

inline Rational naive_needed_epsilon(const Instance& inst, const LoadVector& loads) {
  Rational worst(0);
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0) continue;
    const Rational cost = naive_cost(inst, loads.to_vector(), r);
    for (std::size_t s = 0; s < loads.size(); ++s) {
      if (s == r) continue;
      const Rational gap = cost - naive_deviation_cost(inst, loads, r, s);
      if (gap > worst) worst = gap;
    }
  }
  return worst;
}

// Every load vector (any order) of length m summing to n.
inline std::vector<LoadVector> all_compositions(int n, std::size_t m) {
  std::vector<LoadVector> out;
  std::vector<int> cur(m, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == m) {
      cur[i] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

// Optimum over every profile, not only non-increasing ones.
inline ExtendedRational exhaustive_best_alpha(const Instance& inst) {
  ExtendedRational best = ExtendedRational::infinity();
  for (const auto& loads : all_compositions(inst.players(), inst.resources())) {
    best = std::min(best, std::max(naive_needed_alpha(inst, loads), ExtendedRational(Rational(1))));
  }
  return best;
}

inline Rational exhaustive_best_epsilon(const Instance& inst) {
  bool first = true;
  Rational best;
  for (const auto& loads : all_compositions(inst.players(), inst.resources())) {
    Rational e = naive_needed_epsilon(inst, loads);
    if (first || e < best) best = e;
    first = false;
  }
  return best;
}

struct Ranges {
  int n_min = 1, n_max = 10;
  std::size_t m_min = 1, m_max = 4;
};

// Instance with random size. Half the draws go through the CLI generator with
// mixed magnitudes (ties and spread-out costs); the other half put a free
// resource first and keep the budget comparable to the congestion costs,
// which is where exact equilibria tend to fail.
inline Instance random_instance(std::mt19937_64& rng, const Ranges& ranges) {
  auto pick = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  advcongest::GeneratorParams params;
  params.players = static_cast<int>(pick(ranges.n_min, ranges.n_max));
  params.resources = static_cast<std::size_t>(
      pick(static_cast<long>(ranges.m_min), static_cast<long>(ranges.m_max)));
  if (pick(0, 1) == 1) {
    // Without five players and three resources an exact equilibrium exists.
    if (ranges.n_max >= 5) params.players = static_cast<int>(pick(std::max(ranges.n_min, 5), ranges.n_max));
    if (ranges.m_max >= 3) {
      params.resources = static_cast<std::size_t>(
          pick(static_cast<long>(std::max<std::size_t>(ranges.m_min, 3)), static_cast<long>(ranges.m_max)));
    }
    constexpr long den = 30;
    std::vector<Rational> coeffs{Rational(0)};
    for (std::size_t r = 1; r < params.resources; ++r) {
      Rational a(pick(0, den), den);
      a.canonicalize();
      coeffs.push_back(a);
    }
    Rational budget(pick(1, 2 * den), den);
    budget.canonicalize();
    return advcongest::validate_instance(std::move(coeffs), params.players, std::move(budget));
  }
  static constexpr std::array<long, 4> coeff = {1, 3, 10, 40};
  static constexpr std::array<long, 4> budget = {1, 5, 20, 80};
  params.coeff_max = coeff[static_cast<std::size_t>(pick(0, 3))];
  params.budget_max = budget[static_cast<std::size_t>(pick(0, 3))];
  params.denom_max = pick(1, 4);
  params.seed = rng();
  return advcongest::to_instance(advcongest::generate_instance(params));
}

inline Rational random_positive_rational(std::mt19937_64& rng, long max) {
  auto pick = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  const long num = pick(1, max);
  const long den = pick(1, max);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command and captures stdout.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace testsupport
