#include "advcongest/oracle.hpp"

#include <algorithm>
#include <map>

namespace advcongest {

namespace {

void extend(std::vector<int>& prefix, int remaining, int cap, std::size_t resources,
            std::vector<LoadVector>& out) {
  if (prefix.size() == resources) {
    if (remaining == 0) out.emplace_back(prefix);
    return;
  }
  const auto slots = static_cast<long>(resources - prefix.size());
  // Largest part first gives descending lexicographic order.
  for (int part = std::min(cap, remaining); part >= 0; --part) {
    if (static_cast<long>(part) * slots < remaining) break;
    prefix.push_back(part);
    extend(prefix, remaining - part, part, resources, out);
    prefix.pop_back();
  }
}

// Evaluates `score` on every profile, then reduces serially so that the
// minimum and its witness (first in enumeration order, i.e. lexicographically
// largest) do not depend on the execution mode.
template <typename Value, typename Score>
std::pair<Value, std::size_t> min_over_profiles(const std::vector<LoadVector>& profiles,
                                                Execution execution, Score score) {
  std::vector<Value> values(profiles.size());
  const auto count = static_cast<long>(profiles.size());
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
      values[static_cast<std::size_t>(i)] = score(profiles[static_cast<std::size_t>(i)]);
    }
  } else {
    for (long i = 0; i < count; ++i) {
      values[static_cast<std::size_t>(i)] = score(profiles[static_cast<std::size_t>(i)]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return {values[best], best};
}

}  // namespace

std::vector<LoadVector> enumerate_profiles(int players, std::size_t resources) {
  std::vector<LoadVector> out;
  if (players < 0 || resources == 0) return out;
  std::vector<int> prefix;
  prefix.reserve(resources);
  extend(prefix, players, players, resources, out);
  return out;
}

std::uint64_t partition_count(int players, std::size_t resources) {
  std::map<std::pair<int, std::size_t>, std::uint64_t> memo;
  auto p = [&memo](auto&& self, int n, std::size_t m) -> std::uint64_t {
    if (n == 0) return 1;
    if (n < 0 || m == 0) return 0;
    const auto key = std::make_pair(n, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::uint64_t v = self(self, n - static_cast<int>(m), m) + self(self, n, m - 1);
    memo.emplace(key, v);
    return v;
  };
  return p(p, players, resources);
}

OracleAlpha oracle_best_alpha(const Instance& instance, Execution execution) {
  const auto profiles = enumerate_profiles(instance.players(), instance.resources());
  auto [value, index] = min_over_profiles<ExtendedRational>(
      profiles, execution, [&instance](const LoadVector& loads) {
        ExtendedRational needed = needed_alpha(instance, loads);
        return needed < ExtendedRational(Rational(1)) ? ExtendedRational(Rational(1)) : needed;
      });
  return {std::move(value), profiles[index]};
}

ExactPne oracle_has_exact_pne(const Instance& instance, Execution execution) {
  auto best = oracle_best_alpha(instance, execution);
  if (best.alpha <= ExtendedRational(Rational(1))) return {true, std::move(best.witness)};
  return {false, std::nullopt};
}

OracleEpsilon oracle_best_additive_epsilon(const Instance& instance, Execution execution) {
  const auto profiles = enumerate_profiles(instance.players(), instance.resources());
  auto [value, index] = min_over_profiles<Rational>(
      profiles, execution,
      [&instance](const LoadVector& loads) { return needed_epsilon(instance, loads); });
  return {std::move(value), profiles[index]};
}

}  // namespace advcongest
