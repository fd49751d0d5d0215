#pragma once

// Incremental alpha-approximate equilibrium construction: players enter one at
// a time on a best response, then the most expensive unhappy resource (largest
// index on ties) sheds one player to its best response until nobody has an
// alpha-improving move.

#include <set>
#include <vector>

#include "advcongest/game.hpp"

namespace advcongest {

enum class GuardMode {
  strict,   // at most 2k deviations in round k; loads checked non-increasing
  lenient,  // at most 2k + 3m + 3 deviations in round k
};

struct SolverConfig {
  Rational alpha;
  GuardMode guard = GuardMode::lenient;
};

/// Deviation cap for round k (1-based) on an instance with m resources.
int deviation_bound(GuardMode guard, int round, std::size_t resources);

enum class EventKind { player_added, deviation };

struct TraceEvent {
  EventKind kind = EventKind::player_added;
  int round = 0;  // 1-based for-loop index k
  Origin from;    // nullopt for player_added
  std::size_t to = 0;
  /// Cost on `from` before the move; +inf for player_added.
  ExtendedRational cost_before;
  /// Cost on `to` right after the move.
  Rational cost_after;
  LoadVector loads_after;
};

struct SolveTrace {
  std::vector<TraceEvent> events;
  /// Entry k-1 holds the number of deviations in round k.
  std::vector<int> per_round_deviation_counts;
};

struct SolveResult {
  LoadVector loads;
  SolveTrace trace;
};

/// Smallest index minimizing the cost of moving a player from `from` (or a new
/// player). For a seated player, staying put competes at its current cost.
std::size_t best_response(const Instance& instance, const LoadVector& loads, Origin from);

/// Occupied resources whose players have an alpha-improving move.
std::set<std::size_t> unhappy_set(const Instance& instance, const LoadVector& loads,
                                  const Rational& alpha);

/// Most expensive unhappy resource, largest index on ties.
std::size_t select_deviator(const Instance& instance, const LoadVector& loads,
                            const Rational& alpha);

/// Runs the incremental algorithm. Throws Error(guard_exceeded) when a round
/// exceeds deviation_bound, and in strict mode Error(load_order_violated) if
/// loads ever stop being non-increasing.
SolveResult solve(const Instance& instance, const SolverConfig& config);

/// Re-applies trace events to an all-zero vector of the given length.
LoadVector replay(const SolveTrace& trace, std::size_t resources);

}  // namespace advcongest
