#pragma once

// Brute-force ground truth over all non-increasing load profiles. Restricting
// to non-increasing profiles loses nothing for multiplicative factors in
// [1, 2]: swapping the loads of a cheaper, less loaded resource with a dearer,
// more loaded one preserves the equilibrium property there.

#include <cstdint>
#include <vector>

#include "advcongest/game.hpp"
#include "advcongest/opt_solver.hpp"

namespace advcongest {

/// All non-increasing vectors of length m summing to n (partitions of n into
/// at most m parts, zero padded), in lexicographically descending order.
std::vector<LoadVector> enumerate_profiles(int players, std::size_t resources);

/// Number of partitions of n into at most m parts, from the recurrence
/// p(n, m) = p(n - m, m) + p(n, m - 1).
std::uint64_t partition_count(int players, std::size_t resources);

struct OracleAlpha {
  ExtendedRational alpha;  // max(needed_alpha, 1), minimized over profiles
  LoadVector witness;
};

struct OracleEpsilon {
  Rational epsilon;
  LoadVector witness;
};

/// Ties on the optimum go to the lexicographically largest profile.
OracleAlpha oracle_best_alpha(const Instance& instance, Execution execution = Execution::parallel);

struct ExactPne {
  bool exists = false;
  std::optional<LoadVector> witness;
};

ExactPne oracle_has_exact_pne(const Instance& instance, Execution execution = Execution::parallel);

/// Smallest additive slack over non-increasing profiles. Exact over all
/// profiles only if the swap argument extends to additive slack, which is
/// not established.
OracleEpsilon oracle_best_additive_epsilon(const Instance& instance,
                                           Execution execution = Execution::parallel);

}  // namespace advcongest
