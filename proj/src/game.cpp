#include "advcongest/game.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace advcongest {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::empty_resources: return "EmptyResources";
    case ErrorCode::non_positive_budget: return "NonPositiveBudget";
    case ErrorCode::negative_coefficient: return "NegativeCoefficient";
    case ErrorCode::non_positive_players: return "NonPositivePlayers";
    case ErrorCode::invalid_loads: return "InvalidLoads";
    case ErrorCode::empty_game: return "EmptyGame";
    case ErrorCode::unoccupied_resource: return "UnoccupiedResource";
    case ErrorCode::same_resource: return "SameResource";
    case ErrorCode::empty_source: return "EmptySource";
    case ErrorCode::invalid_alpha: return "InvalidAlpha";
    case ErrorCode::no_unhappy_players: return "NoUnhappyPlayers";
    case ErrorCode::guard_exceeded: return "GuardExceeded";
    case ErrorCode::load_order_violated: return "LoadOrderViolated";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Instance

Instance Instance::create(std::vector<Rational> coefficients, int players, Rational budget) {
  if (coefficients.empty()) throw Error(ErrorCode::empty_resources, "no resources");
  if (players < 1) throw Error(ErrorCode::non_positive_players, std::to_string(players));
  if (budget <= 0) throw Error(ErrorCode::non_positive_budget, to_string(budget));
  for (const auto& a : coefficients) {
    if (a < 0) throw Error(ErrorCode::negative_coefficient, to_string(a));
  }
  std::stable_sort(coefficients.begin(), coefficients.end());

  Instance inst;
  inst.players_ = players;
  inst.coefficients_ = std::move(coefficients);
  inst.budget_ = std::move(budget);
  inst.shares_.reserve(inst.coefficients_.size());
  for (std::size_t p = 1; p <= inst.coefficients_.size(); ++p) {
    inst.shares_.emplace_back(inst.budget_ / Rational(static_cast<long>(p)));
  }
  return inst;
}

Instance validate_instance(std::vector<Rational> raw_coefficients, int players, Rational budget) {
  return Instance::create(std::move(raw_coefficients), players, std::move(budget));
}

Instance Instance::scaled(const Rational& lambda) const {
  std::vector<Rational> coeffs;
  coeffs.reserve(coefficients_.size());
  for (const auto& a : coefficients_) coeffs.emplace_back(a * lambda);
  return create(std::move(coeffs), players_, budget_ * lambda);
}

Instance Instance::with_players(int players) const {
  return create(coefficients_, players, budget_);
}

// -------------------------------------------------------------- LoadVector

LoadVector::LoadVector(std::vector<int> loads) : loads_(std::move(loads)) {
  for (int l : loads_) {
    if (l < 0) throw Error(ErrorCode::invalid_loads, "negative load");
  }
}

int LoadVector::total() const { return std::accumulate(loads_.begin(), loads_.end(), 0); }

int LoadVector::max_load() const {
  return loads_.empty() ? 0 : *std::max_element(loads_.begin(), loads_.end());
}

std::size_t LoadVector::max_count() const {
  const int m = max_load();
  return static_cast<std::size_t>(std::count(loads_.begin(), loads_.end(), m));
}

bool LoadVector::is_non_increasing() const {
  return std::is_sorted(loads_.begin(), loads_.end(), std::greater<>());
}

void LoadVector::move(Origin from, std::size_t to) {
  if (from) {
    if (*from == to) throw Error(ErrorCode::same_resource, "move onto own resource");
    if (loads_[*from] < 1) throw Error(ErrorCode::empty_source, "no player to move");
    --loads_[*from];
  }
  ++loads_[to];
}

LoadVector LoadVector::moved(Origin from, std::size_t to) const {
  LoadVector copy = *this;
  copy.move(from, to);
  return copy;
}

LoadVector LoadVector::swapped(std::size_t r, std::size_t s) const {
  LoadVector copy = *this;
  std::swap(copy.loads_[r], copy.loads_[s]);
  return copy;
}

std::ostream& operator<<(std::ostream& os, const LoadVector& loads) {
  os << '(';
  for (std::size_t r = 0; r < loads.size(); ++r) os << (r ? "," : "") << loads[r];
  return os << ')';
}

// ------------------------------------------------------------------ attack

AttackVector attack(const LoadVector& loads, const Rational& budget) {
  if (loads.total() < 1) throw Error(ErrorCode::empty_game, "no players");
  const int m = loads.max_load();
  const Rational share = budget / Rational(static_cast<long>(loads.max_count()));
  AttackVector out;
  out.kappa.reserve(loads.size());
  for (std::size_t r = 0; r < loads.size(); ++r) {
    out.kappa.emplace_back(loads[r] == m ? share : Rational(0));
  }
  return out;
}

// ------------------------------------------------------------- ProfileView

ProfileView::ProfileView(const Instance& instance, const LoadVector& loads)
    : instance_(instance), loads_(loads) {
  if (loads.size() != instance.resources()) {
    throw Error(ErrorCode::invalid_loads, "load vector length differs from resource count");
  }
  max_load_ = loads.max_load();
  for (int l : loads.values()) {
    if (l == max_load_) ++max_count_;
    if (l == max_load_ - 1) ++below_max_count_;
  }
}

Rational ProfileView::kappa(std::size_t r) const {
  if (max_load_ > 0 && loads_[r] == max_load_) return instance_.budget_share(max_count_);
  return Rational(0);
}

Rational ProfileView::resource_cost(std::size_t r) const {
  if (loads_[r] < 1) throw Error(ErrorCode::unoccupied_resource, "resource " + std::to_string(r + 1));
  Rational cost = instance_.coefficient(r) * loads_[r];
  if (loads_[r] == max_load_) cost += instance_.budget_share(max_count_);
  return cost;
}

Rational ProfileView::deviation_cost(Origin from, std::size_t to) const {
  if (from) {
    if (*from == to) throw Error(ErrorCode::same_resource, "resource " + std::to_string(to + 1));
    if (loads_[*from] < 1) throw Error(ErrorCode::empty_source, "resource " + std::to_string(*from + 1));
  }
  const int landed = loads_[to] + 1;
  Rational cost = instance_.coefficient(to) * landed;

  if (landed > max_load_) {
    cost += instance_.budget();
    return cost;
  }
  const bool source_was_sole_max =
      from && loads_[*from] == max_load_ && max_count_ == 1;
  if (landed == max_load_) {
    std::size_t others = max_count_;
    if (from && loads_[*from] == max_load_) --others;
    cost += instance_.budget_share(others + 1);
    return cost;
  }
  if (source_was_sole_max && landed == max_load_ - 1) {
    // Maximum drops to M-1: the old M-1 resources, the source and the target.
    cost += instance_.budget_share(below_max_count_ + 2);
  }
  return cost;
}

std::pair<Rational, std::size_t> ProfileView::cheapest_deviation(std::size_t from) const {
  const std::size_t m = loads_.size();
  std::size_t best = from == 0 ? 1 : 0;
  Rational best_cost = deviation_cost(from, best);
  for (std::size_t to = best + 1; to < m; ++to) {
    if (to == from) continue;
    Rational c = deviation_cost(from, to);
    if (c < best_cost) {
      best_cost = std::move(c);
      best = to;
    }
  }
  return {std::move(best_cost), best};
}

Rational resource_cost(const Instance& instance, const LoadVector& loads, std::size_t r) {
  return ProfileView(instance, loads).resource_cost(r);
}

Rational deviation_cost(const Instance& instance, const LoadVector& loads, Origin from,
                        std::size_t to) {
  return ProfileView(instance, loads).deviation_cost(from, to);
}

// ------------------------------------------------------- equilibrium tests

namespace {

void require_complete(const Instance& instance, const LoadVector& loads) {
  if (loads.size() != instance.resources()) {
    throw Error(ErrorCode::invalid_loads, "load vector length differs from resource count");
  }
  if (loads.total() < 1) throw Error(ErrorCode::empty_game, "no players");
  if (loads.total() != instance.players()) {
    throw Error(ErrorCode::invalid_loads, "loads sum to " + std::to_string(loads.total()) +
                                              ", expected " + std::to_string(instance.players()));
  }
}

}  // namespace

std::optional<Deviation> binding_deviation(const Instance& instance, const LoadVector& loads) {
  require_complete(instance, loads);
  if (instance.resources() == 1) return std::nullopt;
  const ProfileView view(instance, loads);
  std::optional<Deviation> best;
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0) continue;
    Rational cost = view.resource_cost(r);
    auto [dev, to] = view.cheapest_deviation(r);
    ExtendedRational ratio;
    if (dev == 0) {
      ratio = cost > 0 ? ExtendedRational::infinity() : ExtendedRational(Rational(0));
    } else {
      ratio = ExtendedRational(Rational(cost / dev));
    }
    if (!best || ratio > best->ratio) {
      best = Deviation{r, to, std::move(cost), std::move(dev), std::move(ratio)};
    }
  }
  return best;
}

ExtendedRational needed_alpha(const Instance& instance, const LoadVector& loads) {
  require_complete(instance, loads);
  if (instance.resources() == 1) return ExtendedRational(Rational(1));
  return binding_deviation(instance, loads)->ratio;
}

bool is_alpha_pne(const Instance& instance, const LoadVector& loads, const Rational& alpha) {
  require_complete(instance, loads);
  if (alpha < 1) throw Error(ErrorCode::invalid_alpha, to_string(alpha));
  if (instance.resources() == 1) return true;
  const ProfileView view(instance, loads);
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0) continue;
    const auto [dev, to] = view.cheapest_deviation(r);
    if (view.resource_cost(r) > alpha * dev) return false;
  }
  return true;
}

Rational needed_epsilon(const Instance& instance, const LoadVector& loads) {
  require_complete(instance, loads);
  Rational worst(0);
  if (instance.resources() == 1) return worst;
  const ProfileView view(instance, loads);
  for (std::size_t r = 0; r < loads.size(); ++r) {
    if (loads[r] == 0) continue;
    Rational slack = view.resource_cost(r) - view.cheapest_deviation(r).first;
    if (slack > worst) worst = std::move(slack);
  }
  return worst;
}

}  // namespace advcongest
