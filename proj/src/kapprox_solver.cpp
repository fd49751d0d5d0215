#include "advcongest/kapprox_solver.hpp"

#include <sstream>

namespace advcongest {

namespace {

struct DeviatorScan {
  std::optional<std::size_t> resource;
  Rational cost;
};

// One pass over the occupied resources: collects the unhappy ones (if asked)
// and keeps the most expensive, preferring the larger index on ties.
DeviatorScan scan_unhappy(const ProfileView& view, const Rational& alpha,
                          std::set<std::size_t>* unhappy) {
  DeviatorScan out;
  const auto& loads = view.loads();
  if (loads.size() < 2) return out;
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0) continue;
    Rational cost = view.resource_cost(r);
    const auto cheapest = view.cheapest_deviation(r);
    if (cost <= alpha * cheapest.first) continue;
    if (unhappy) unhappy->insert(r);
    if (!out.resource || cost >= out.cost) {
      out.resource = r;
      out.cost = std::move(cost);
    }
  }
  return out;
}

std::size_t best_response(const ProfileView& view, Origin from) {
  const std::size_t m = view.loads().size();
  std::size_t best = 0;
  Rational best_cost = (from && *from == 0) ? view.resource_cost(0) : view.deviation_cost(from, 0);
  for (std::size_t r = 1; r < m; ++r) {
    Rational c = (from && *from == r) ? view.resource_cost(r) : view.deviation_cost(from, r);
    if (c < best_cost) {
      best_cost = std::move(c);
      best = r;
    }
  }
  return best;
}

void check_order(const LoadVector& loads, int round) {
  if (!loads.is_non_increasing()) {
    std::ostringstream msg;
    msg << "loads " << loads << " in round " << round;
    throw Error(ErrorCode::load_order_violated, msg.str());
  }
}

}  // namespace

int deviation_bound(GuardMode guard, int round, std::size_t resources) {
  const int strict = 2 * round;
  return guard == GuardMode::strict ? strict : strict + 3 * static_cast<int>(resources) + 3;
}

std::size_t best_response(const Instance& instance, const LoadVector& loads, Origin from) {
  return best_response(ProfileView(instance, loads), from);
}

std::set<std::size_t> unhappy_set(const Instance& instance, const LoadVector& loads,
                                  const Rational& alpha) {
  std::set<std::size_t> out;
  scan_unhappy(ProfileView(instance, loads), alpha, &out);
  return out;
}

std::size_t select_deviator(const Instance& instance, const LoadVector& loads,
                            const Rational& alpha) {
  const auto scan = scan_unhappy(ProfileView(instance, loads), alpha, nullptr);
  if (!scan.resource) throw Error(ErrorCode::no_unhappy_players, "every player is happy");
  return *scan.resource;
}

SolveResult solve(const Instance& instance, const SolverConfig& config) {
  if (config.alpha < 1) throw Error(ErrorCode::invalid_alpha, to_string(config.alpha));
  const std::size_t m = instance.resources();
  const bool strict = config.guard == GuardMode::strict;

  SolveResult result;
  result.loads = LoadVector::zeros(m);
  auto& loads = result.loads;
  auto& trace = result.trace;
  trace.per_round_deviation_counts.reserve(static_cast<std::size_t>(instance.players()));

  for (int k = 1; k <= instance.players(); ++k) {
    const std::size_t seat = best_response(ProfileView(instance, loads), std::nullopt);
    loads.move(std::nullopt, seat);
    trace.events.push_back(TraceEvent{EventKind::player_added, k, std::nullopt, seat,
                                      ExtendedRational::infinity(),
                                      ProfileView(instance, loads).resource_cost(seat), loads});
    if (strict) check_order(loads, k);

    const int bound = deviation_bound(config.guard, k, m);
    int deviations = 0;
    for (;;) {
      const ProfileView view(instance, loads);
      auto scan = scan_unhappy(view, config.alpha, nullptr);
      if (!scan.resource) break;
      if (++deviations > bound) {
        std::ostringstream msg;
        msg << "round " << k << " needs more than " << bound << " deviations at loads " << loads;
        throw Error(ErrorCode::guard_exceeded, msg.str());
      }
      const std::size_t from = *scan.resource;
      const std::size_t to = best_response(view, from);
      loads.move(from, to);
      trace.events.push_back(TraceEvent{EventKind::deviation, k, from, to,
                                        ExtendedRational(std::move(scan.cost)),
                                        ProfileView(instance, loads).resource_cost(to), loads});
      if (strict) check_order(loads, k);
    }
    trace.per_round_deviation_counts.push_back(deviations);
  }
  return result;
}

LoadVector replay(const SolveTrace& trace, std::size_t resources) {
  LoadVector loads = LoadVector::zeros(resources);
  for (const auto& event : trace.events) loads.move(event.from, event.to);
  return loads;
}

}  // namespace advcongest
