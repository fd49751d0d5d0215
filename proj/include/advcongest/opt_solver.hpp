#pragma once

// Instance-optimal approximation factor. Every decreasing load profile that is
// not fully balanced has a shape (M, k, k', k''):
//
//   loads M         on resources 1 .. k
//   loads M-1       on resources k+1 .. k'-1
//   loads M-2       on resources k' .. k''-1
//   loads <= M-3    on resources k'' .. m
//
// (1-based; k' and k'' may be m+1 when the corresponding groups reach the
// end). Together with lower bounds on the best alternative costs of max-load
// players (cbar_max) and of everyone else (cbar_below), the shape reduces the
// equilibrium conditions to per-resource load intervals on the tail.

#include <optional>
#include <utility>
#include <vector>

#include "advcongest/game.hpp"

namespace advcongest {

struct Shape {
  int max_load = 0;
  int k = 0;
  int k_prime = 0;
  int k_dprime = 0;

  friend bool operator==(const Shape&, const Shape&) = default;
  friend auto operator<=>(const Shape&, const Shape&) = default;
};

struct ShapeConfig {
  Shape shape;
  Rational cbar_max;
  Rational cbar_below;
};

struct CbarCandidates {
  std::vector<Rational> at_max;  // candidate values of cbar_max
  std::vector<Rational> below;   // candidate values of cbar_below
};

enum class CbarPairing {
  /// Every (cbar_max, cbar_below) combination of the two candidate lists.
  product,
  /// Only pairs (min(H_M, t), min(H_<, t)) where H are the fixed head minima
  /// of the shape and t ranges over tail costs (or +inf). Realized pairs of
  /// any profile with this shape are always of that form.
  coupled,
};

enum class Execution { serial, parallel };

struct OptOptions {
  CbarPairing pairing = CbarPairing::coupled;
  Execution execution = Execution::parallel;
};

struct OptResult {
  Rational alpha_star;
  LoadVector witness;
  /// The deviation that attains needed_alpha on the witness (none when m == 1).
  std::optional<Deviation> binding;
  /// Producing shape; nullopt for the all-equal (n = M m) profile and m == 1.
  std::optional<ShapeConfig> config;
};

/// Range and ordering constraints of a shape for n players on m resources.
bool is_valid_shape(int players, std::size_t resources, const Shape& shape);

/// Shape of a non-increasing load vector that has some load below its
/// maximum; nullopt otherwise.
std::optional<Shape> realized_shape(const LoadVector& loads);

/// Valid shapes whose fixed prefix fits n and whose tail can absorb the rest,
/// in lexicographic (M, k, k', k'') order.
std::vector<Shape> enumerate_shapes(int players, std::size_t resources);

CbarCandidates cbar_candidates(const Instance& instance, const Shape& shape);

std::vector<std::pair<Rational, Rational>> cbar_pairs(const Instance& instance,
                                                      const Shape& shape, CbarPairing pairing);

/// The load-vector construction for a fixed shape, cbar pair and alpha in
/// [1, 2]: head inequality checks, fixed prefix, tail bounds, then a greedy
/// left-to-right fill from the lower bounds. nullopt if any check fails.
std::optional<LoadVector> feasible_load_vector(const Instance& instance, const ShapeConfig& config,
                                               const Rational& alpha);

/// Smallest alpha >= 1 at which feasible_load_vector succeeds for `config`
/// (success is monotone in alpha); nullopt if it never does.
std::optional<Rational> min_feasible_alpha(const Instance& instance, const ShapeConfig& config);

/// Smallest alpha >= 1 for which the all-equal profile (requires m | n) is an
/// alpha-PNE; nullopt if m does not divide n.
std::optional<Rational> full_load_alpha(const Instance& instance);

/// Sorted, deduplicated ratios u/v of attainable cost values lying in
/// [1, upper_K(precision)]; always contains 1.
std::vector<Rational> candidate_alphas(const Instance& instance, int precision = 12);

/// Witness of some alpha-PNE found through the shape procedure (or the
/// full-load case), nullopt if none exists. Deterministic: first success in
/// lexicographic shape order.
std::optional<OptResult> feasible_at(const Instance& instance, const Rational& alpha,
                                     CbarPairing pairing = CbarPairing::product);

/// Exact optimum via the minimum of min_feasible_alpha over every shape and
/// cbar pair. Serial and parallel execution give identical results.
OptResult best_alpha(const Instance& instance, const OptOptions& options = {});

/// Same optimum via binary search of feasible_at over candidate_alphas.
OptResult best_alpha_by_bisection(const Instance& instance,
                                  CbarPairing pairing = CbarPairing::product);

}  // namespace advcongest
