#pragma once

// Exact game model: a symmetric singleton congestion game with linear costs
// a_r * load, followed by an adversary who splits a budget B evenly over the
// maximum-load resources. Resources are indexed 0..m-1 in non-decreasing
// coefficient order.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "advcongest/error.hpp"
#include "advcongest/rational.hpp"

namespace advcongest {

/// Resource index, or std::nullopt for a player that is not yet in the game.
using Origin = std::optional<std::size_t>;

class Instance {
 public:
  /// Validates and canonicalizes. Coefficients are stably sorted
  /// non-decreasing; original labels are dropped.
  static Instance create(std::vector<Rational> coefficients, int players, Rational budget);

  int players() const { return players_; }
  std::size_t resources() const { return coefficients_.size(); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  const Rational& coefficient(std::size_t r) const { return coefficients_[r]; }
  const Rational& budget() const { return budget_; }

  /// B / p for 1 <= p <= m.
  const Rational& budget_share(std::size_t p) const { return shares_[p - 1]; }

  /// Same game with every coefficient and the budget multiplied by lambda > 0.
  Instance scaled(const Rational& lambda) const;

  Instance with_players(int players) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance() = default;

  int players_ = 0;
  std::vector<Rational> coefficients_;
  Rational budget_;
  std::vector<Rational> shares_;
};

Instance validate_instance(std::vector<Rational> raw_coefficients, int players, Rational budget);

class LoadVector {
 public:
  LoadVector() = default;
  explicit LoadVector(std::vector<int> loads);
  static LoadVector zeros(std::size_t resources) {
    return LoadVector(std::vector<int>(resources, 0));
  }

  std::size_t size() const { return loads_.size(); }
  int operator[](std::size_t r) const { return loads_[r]; }
  std::span<const int> values() const { return loads_; }
  const std::vector<int>& to_vector() const { return loads_; }

  int total() const;
  /// M(x); 0 for an all-zero vector.
  int max_load() const;
  /// |M^{-1}(x)|.
  std::size_t max_count() const;
  bool is_non_increasing() const;

  /// Moves one player from `from` (or adds one if nullopt) to `to`.
  void move(Origin from, std::size_t to);
  LoadVector moved(Origin from, std::size_t to) const;
  /// Exchanges the loads of two resources.
  LoadVector swapped(std::size_t r, std::size_t s) const;

  friend bool operator==(const LoadVector&, const LoadVector&) = default;
  friend auto operator<=>(const LoadVector&, const LoadVector&) = default;

 private:
  std::vector<int> loads_;
};

std::ostream& operator<<(std::ostream& os, const LoadVector& loads);

/// The adversary's budget split kappa*.
struct AttackVector {
  std::vector<Rational> kappa;
};

/// Even split of `budget` over the maximum-load resources.
AttackVector attack(const LoadVector& loads, const Rational& budget);

/// Cost evaluation against one fixed (instance, loads) pair. Caches M, |M^-1|
/// and the number of resources at load M-1 so that every cost query is O(1).
/// Holds references; must not outlive its arguments.
class ProfileView {
 public:
  ProfileView(const Instance& instance, const LoadVector& loads);

  const Instance& instance() const { return instance_; }
  const LoadVector& loads() const { return loads_; }
  int max_load() const { return max_load_; }

  /// Adversary share kappa*_r at the current loads.
  Rational kappa(std::size_t r) const;
  /// c_r(x) = a_r * l_r + kappa*_r. Requires l_r >= 1.
  Rational resource_cost(std::size_t r) const;
  /// c_to(x_{-i}, to) for a player i on `from` (or a new player).
  Rational deviation_cost(Origin from, std::size_t to) const;
  /// min over to != from of deviation_cost(from, to), with its smallest
  /// minimizing index. Requires m >= 2.
  std::pair<Rational, std::size_t> cheapest_deviation(std::size_t from) const;

 private:
  const Instance& instance_;
  const LoadVector& loads_;
  int max_load_ = 0;
  std::size_t max_count_ = 0;
  std::size_t below_max_count_ = 0;  // resources at load M-1
};

Rational resource_cost(const Instance& instance, const LoadVector& loads, std::size_t r);
Rational deviation_cost(const Instance& instance, const LoadVector& loads, Origin from,
                        std::size_t to);

/// A unilateral move r -> r' together with the two costs it compares.
struct Deviation {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational cost;            // c_from(x)
  Rational deviation_cost;  // c_to(x_{-i}, to)
  ExtendedRational ratio;   // cost / deviation_cost
};

/// max over occupied r of c_r(x) / min_{r' != r} dev(r, r'). Not clamped to 1.
/// Returns 1 when m == 1 and +inf when a positive cost faces a free deviation.
ExtendedRational needed_alpha(const Instance& instance, const LoadVector& loads);

/// The deviation attaining needed_alpha (ties: smallest from, then smallest
/// to). std::nullopt when m == 1.
std::optional<Deviation> binding_deviation(const Instance& instance, const LoadVector& loads);

/// Exact test of c_r(x) <= alpha * dev(r, r') for every occupied r and r' != r.
bool is_alpha_pne(const Instance& instance, const LoadVector& loads, const Rational& alpha);

/// Additive slack: max over occupied r of c_r(x) - min_{r'} dev(r, r'),
/// clamped at 0. Zero when m == 1.
Rational needed_epsilon(const Instance& instance, const LoadVector& loads);

}  // namespace advcongest
