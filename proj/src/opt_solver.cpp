#include "advcongest/opt_solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "advcongest/k_constant.hpp"

namespace advcongest {

namespace {

// Everything about a shape that does not depend on the cbar pair or alpha.
struct ShapeContext {
  const Instance& inst;
  Shape s;
  int players = 0;
  std::size_t resources = 0;

  bool prefix_ok = false;
  long residual = 0;  // n' after the fixed prefix

  Rational nash_max_lhs;                  // a_k M + B/k
  std::optional<Rational> nash_m1_lhs;    // a_{k'-1} (M-1), if load-(M-1) group exists
  std::optional<Rational> nash_m2_lhs;    // a_{k''-1} (M-2), if load-(M-2) group exists
  std::vector<Rational> heads_max;        // upper bounds for cbar_max
  std::vector<Rational> heads_below;      // upper bounds for cbar_below

  std::size_t tail_begin = 0;  // 0-based index of resource k''
  long tail_cap = 0;           // M - 3

  ShapeContext(const Instance& instance, const Shape& shape)
      : inst(instance), s(shape), players(instance.players()), resources(instance.resources()) {
    const int M = s.max_load;
    const int k = s.k, kp = s.k_prime, kpp = s.k_dprime;
    const Rational& B = inst.budget();
    const bool has_m1 = kp >= k + 2;
    const bool has_m2 = kp < kpp;

    nash_max_lhs = a(k) * M + inst.budget_share(static_cast<std::size_t>(k));
    if (has_m1) nash_m1_lhs = Rational(a(kp - 1) * (M - 1));
    if (has_m2) nash_m2_lhs = Rational(a(kpp - 1) * (M - 2));

    const Rational to_first = a(1) * (M + 1) + B;
    if (k >= 2) heads_max.push_back(to_first);
    if (has_m1) heads_max.emplace_back(a(k + 1) * M + inst.budget_share(static_cast<std::size_t>(k)));
    if (has_m2) {
      if (k == 1) {
        heads_max.emplace_back(a(kp) * (M - 1) + inst.budget_share(static_cast<std::size_t>(kp)));
      } else {
        heads_max.emplace_back(a(kp) * (M - 1));
      }
    }
    heads_below.push_back(to_first);
    if (has_m1) {
      heads_below.emplace_back(a(k + 1) * M + inst.budget_share(static_cast<std::size_t>(k + 1)));
    }
    if (has_m2) heads_below.emplace_back(a(kp) * (M - 1));

    prefix_ok = !(has_m2 && M - 2 < 0);
    residual = static_cast<long>(players) - static_cast<long>(k) * M -
               static_cast<long>(kp - k - 1) * (M - 1) - static_cast<long>(kpp - kp) * (M - 2);
    if (residual < 0) prefix_ok = false;
    tail_begin = static_cast<std::size_t>(kpp - 1);
    tail_cap = M - 3;
  }

  // 1-based coefficient access, matching the shape indices.
  const Rational& a(int i) const { return inst.coefficient(static_cast<std::size_t>(i - 1)); }

  // Step-1 inequalities that do not involve alpha (minimum properties).
  bool heads_admit(const Rational& cbar_max, const Rational& cbar_below) const {
    for (const auto& h : heads_max) {
      if (h < cbar_max) return false;
    }
    for (const auto& h : heads_below) {
      if (h < cbar_below) return false;
    }
    return true;
  }

  // Lower bound b_r; nullopt when no load is compatible with the minimum
  // properties (a_r = 0 while some cbar is positive) or b_r exceeds M-3.
  std::optional<long> lower_bound(std::size_t r, const Rational& cbar_max,
                                  const Rational& cbar_below) const {
    const Rational& ar = inst.coefficient(r);
    if (sgn(ar) == 0) {
      if (sgn(cbar_max) > 0 || sgn(cbar_below) > 0) return std::nullopt;
      return tail_cap >= 0 ? std::optional<long>(0) : std::nullopt;
    }
    mpz_class b = std::max(ceil(Rational(cbar_below / ar)), ceil(Rational(cbar_max / ar))) - 1;
    if (b < 0) b = 0;
    if (b > tail_cap) return std::nullopt;
    return b.get_si();
  }

  long upper_bound(std::size_t r, const Rational& alpha, const Rational& cbar_below) const {
    const Rational& ar = inst.coefficient(r);
    if (sgn(ar) == 0) return tail_cap;
    const mpz_class f = floor(Rational(alpha * cbar_below / ar));
    return f < tail_cap ? f.get_si() : tail_cap;
  }
};

bool valid_or_throw(const Instance& instance, const Shape& shape) {
  if (!is_valid_shape(instance.players(), instance.resources(), shape)) {
    throw std::invalid_argument("shape violates its index constraints");
  }
  return true;
}

void sort_unique(std::vector<Rational>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

std::vector<Rational> tail_costs(const ShapeContext& ctx) {
  std::vector<Rational> out;
  for (std::size_t r = ctx.tail_begin; r < ctx.resources; ++r) {
    for (long load = 0; load <= ctx.tail_cap; ++load) {
      out.emplace_back(ctx.inst.coefficient(r) * (load + 1));
    }
  }
  sort_unique(out);
  return out;
}

std::vector<std::pair<Rational, Rational>> pairs_for(const ShapeContext& ctx,
                                                     CbarPairing pairing) {
  std::vector<std::pair<Rational, Rational>> out;
  const auto tails = tail_costs(ctx);
  if (pairing == CbarPairing::product) {
    std::vector<Rational> at_max = ctx.heads_max;
    at_max.insert(at_max.end(), tails.begin(), tails.end());
    std::vector<Rational> below = ctx.heads_below;
    below.insert(below.end(), tails.begin(), tails.end());
    sort_unique(at_max);
    sort_unique(below);
    out.reserve(at_max.size() * below.size());
    for (const auto& cm : at_max) {
      for (const auto& cb : below) out.emplace_back(cm, cb);
    }
    return out;
  }

  std::optional<Rational> head_max;
  if (!ctx.heads_max.empty()) head_max = *std::min_element(ctx.heads_max.begin(), ctx.heads_max.end());
  const Rational head_below = *std::min_element(ctx.heads_below.begin(), ctx.heads_below.end());
  for (const auto& t : tails) {
    out.emplace_back(head_max ? std::min(*head_max, t) : t, std::min(head_below, t));
  }
  if (head_max) out.emplace_back(*head_max, head_below);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<LoadVector> run_procedure(const ShapeContext& ctx, const Rational& cbar_max,
                                        const Rational& cbar_below, const Rational& alpha) {
  const Shape& s = ctx.s;
  const int M = s.max_load;

  // Step 1: Nash conditions for the load M, M-1, M-2 groups, then the
  // minimum properties of the two cbar values.
  if (ctx.nash_max_lhs > alpha * cbar_max) return std::nullopt;
  if (ctx.nash_m1_lhs && *ctx.nash_m1_lhs > alpha * cbar_below) return std::nullopt;
  if (ctx.nash_m2_lhs && *ctx.nash_m2_lhs > alpha * cbar_below) return std::nullopt;
  if (!ctx.heads_admit(cbar_max, cbar_below)) return std::nullopt;

  // Steps 2-3: fixed prefix and the residual player count.
  if (!ctx.prefix_ok) return std::nullopt;
  std::vector<int> loads(ctx.resources, 0);
  for (int r = 1; r <= s.k; ++r) loads[static_cast<std::size_t>(r - 1)] = M;
  for (int r = s.k + 1; r < s.k_prime; ++r) loads[static_cast<std::size_t>(r - 1)] = M - 1;
  for (int r = s.k_prime; r < s.k_dprime; ++r) loads[static_cast<std::size_t>(r - 1)] = M - 2;
  long residual = ctx.residual;

  // Steps 4-6: per-resource tail bounds and the total range.
  std::vector<long> lower, upper;
  long lower_sum = 0, upper_sum = 0;
  for (std::size_t r = ctx.tail_begin; r < ctx.resources; ++r) {
    const auto b = ctx.lower_bound(r, cbar_max, cbar_below);
    if (!b) return std::nullopt;
    const long ub = ctx.upper_bound(r, alpha, cbar_below);
    if (*b > ub) return std::nullopt;
    lower.push_back(*b);
    upper.push_back(ub);
    lower_sum += *b;
    upper_sum += ub;
  }
  if (residual < lower_sum || residual > upper_sum) return std::nullopt;

  // Steps 7-8: start from the lower bounds, fill left to right.
  residual -= lower_sum;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const long take = std::min(upper[i] - lower[i], residual);
    loads[ctx.tail_begin + i] = static_cast<int>(lower[i] + take);
    residual -= take;
  }
  return LoadVector(std::move(loads));
}

// Smallest alpha >= 1 accepted by run_procedure for this pair.
std::optional<Rational> min_alpha_for(const ShapeContext& ctx,
                                      const std::optional<Rational>& sum_threshold,
                                      bool sum_possible, const Rational& cbar_max,
                                      const Rational& cbar_below) {
  if (!ctx.prefix_ok || !sum_possible) return std::nullopt;
  if (!ctx.heads_admit(cbar_max, cbar_below)) return std::nullopt;

  Rational alpha(1);
  // lhs <= alpha * c  for c >= 0.
  auto require = [&alpha](const Rational& lhs, const Rational& c) {
    if (sgn(c) == 0) return sgn(lhs) <= 0;
    Rational need = lhs / c;
    if (need > alpha) alpha = std::move(need);
    return true;
  };

  if (!require(ctx.nash_max_lhs, cbar_max)) return std::nullopt;
  if (ctx.nash_m1_lhs && !require(*ctx.nash_m1_lhs, cbar_below)) return std::nullopt;
  if (ctx.nash_m2_lhs && !require(*ctx.nash_m2_lhs, cbar_below)) return std::nullopt;

  long lower_sum = 0;
  for (std::size_t r = ctx.tail_begin; r < ctx.resources; ++r) {
    const auto b = ctx.lower_bound(r, cbar_max, cbar_below);
    if (!b) return std::nullopt;
    lower_sum += *b;
    // floor(alpha * cbar_below / a_r) >= b  <=>  alpha * cbar_below >= b * a_r
    if (sgn(ctx.inst.coefficient(r)) > 0 && *b > 0) {
      if (!require(Rational(ctx.inst.coefficient(r) * *b), cbar_below)) return std::nullopt;
    }
  }
  if (lower_sum > ctx.residual) return std::nullopt;
  if (sum_threshold && !require(*sum_threshold, cbar_below)) return std::nullopt;
  return alpha;
}

// The upper bounds sum to >= n' iff at least `need` of the values j * a_r
// (tail r with a_r > 0, 1 <= j <= M-3) are <= alpha * cbar_below, where
// zero-coefficient tail resources always supply M-3 each. Returns the
// need-th smallest such value (nullopt if need <= 0) and whether enough
// values exist at all.
std::pair<std::optional<Rational>, bool> sum_threshold(const ShapeContext& ctx) {
  if (ctx.tail_cap <= 0) return {std::nullopt, ctx.residual <= 0};
  long need = ctx.residual;
  std::vector<std::size_t> positive;
  for (std::size_t r = ctx.tail_begin; r < ctx.resources; ++r) {
    if (sgn(ctx.inst.coefficient(r)) == 0) {
      need -= ctx.tail_cap;
    } else {
      positive.push_back(r);
    }
  }
  if (need <= 0) return {std::nullopt, true};
  if (need > static_cast<long>(positive.size()) * ctx.tail_cap) return {std::nullopt, false};

  std::vector<long> next(positive.size(), 1);
  Rational value;
  for (long taken = 0; taken < need; ++taken) {
    std::size_t pick = positive.size();
    Rational best;
    for (std::size_t i = 0; i < positive.size(); ++i) {
      if (next[i] > ctx.tail_cap) continue;
      Rational v = ctx.inst.coefficient(positive[i]) * next[i];
      if (pick == positive.size() || v < best) {
        best = std::move(v);
        pick = i;
      }
    }
    ++next[pick];
    value = std::move(best);
  }
  return {value, true};
}

struct ShapeBest {
  Rational alpha;
  std::pair<Rational, Rational> pair;
};

std::optional<ShapeBest> best_for_shape(const Instance& instance, const Shape& shape,
                                        CbarPairing pairing) {
  const ShapeContext ctx(instance, shape);
  if (!ctx.prefix_ok) return std::nullopt;
  const auto [threshold, possible] = sum_threshold(ctx);
  if (!possible) return std::nullopt;
  std::optional<ShapeBest> best;
  for (auto& pair : pairs_for(ctx, pairing)) {
    auto alpha = min_alpha_for(ctx, threshold, possible, pair.first, pair.second);
    if (alpha && (!best || *alpha < best->alpha)) best = ShapeBest{std::move(*alpha), std::move(pair)};
  }
  return best;
}

LoadVector all_equal(const Instance& instance) {
  const int each = instance.players() / static_cast<int>(instance.resources());
  return LoadVector(std::vector<int>(instance.resources(), each));
}

OptResult finish(const Instance& instance, Rational alpha, LoadVector witness,
                 std::optional<ShapeConfig> config) {
  OptResult out;
  out.alpha_star = std::move(alpha);
  out.binding = binding_deviation(instance, witness);
  out.witness = std::move(witness);
  out.config = std::move(config);
  return out;
}

}  // namespace

bool is_valid_shape(int players, std::size_t resources, const Shape& s) {
  const int m = static_cast<int>(resources);
  const int min_load = (players + m - 1) / m;
  return s.max_load >= min_load && s.max_load <= players && s.k >= 1 && s.k <= m - 1 &&
         s.k_prime >= s.k + 1 && s.k_prime <= m + 1 && s.k_dprime >= s.k_prime &&
         s.k_dprime <= m + 1;
}

std::optional<Shape> realized_shape(const LoadVector& loads) {
  if (!loads.is_non_increasing() || loads.size() == 0) return std::nullopt;
  const int M = loads[0];
  int at_max = 0, at_least_m1 = 0, at_least_m2 = 0;
  for (int l : loads.values()) {
    at_max += l == M;
    at_least_m1 += l >= M - 1;
    at_least_m2 += l >= M - 2;
  }
  if (at_max == static_cast<int>(loads.size())) return std::nullopt;
  return Shape{M, at_max, at_least_m1 + 1, at_least_m2 + 1};
}

std::vector<Shape> enumerate_shapes(int players, std::size_t resources) {
  std::vector<Shape> out;
  const int m = static_cast<int>(resources);
  if (m < 2) return out;
  const int min_load = (players + m - 1) / m;
  for (int M = min_load; M <= players; ++M) {
    for (int k = 1; k <= m - 1; ++k) {
      for (int kp = k + 1; kp <= m + 1; ++kp) {
        for (int kpp = kp; kpp <= m + 1; ++kpp) {
          if (kpp > kp && M < 2) continue;
          const long residual = static_cast<long>(players) - static_cast<long>(k) * M -
                                static_cast<long>(kp - k - 1) * (M - 1) -
                                static_cast<long>(kpp - kp) * (M - 2);
          if (residual < 0) continue;
          const long capacity = static_cast<long>(m + 1 - kpp) * std::max(0, M - 3);
          if (residual > capacity) continue;
          out.push_back(Shape{M, k, kp, kpp});
        }
      }
    }
  }
  return out;
}

CbarCandidates cbar_candidates(const Instance& instance, const Shape& shape) {
  valid_or_throw(instance, shape);
  const ShapeContext ctx(instance, shape);
  const auto tails = tail_costs(ctx);
  CbarCandidates out{ctx.heads_max, ctx.heads_below};
  out.at_max.insert(out.at_max.end(), tails.begin(), tails.end());
  out.below.insert(out.below.end(), tails.begin(), tails.end());
  sort_unique(out.at_max);
  sort_unique(out.below);
  return out;
}

std::vector<std::pair<Rational, Rational>> cbar_pairs(const Instance& instance,
                                                      const Shape& shape, CbarPairing pairing) {
  valid_or_throw(instance, shape);
  return pairs_for(ShapeContext(instance, shape), pairing);
}

std::optional<LoadVector> feasible_load_vector(const Instance& instance, const ShapeConfig& config,
                                               const Rational& alpha) {
  valid_or_throw(instance, config.shape);
  return run_procedure(ShapeContext(instance, config.shape), config.cbar_max, config.cbar_below,
                       alpha);
}

std::optional<Rational> min_feasible_alpha(const Instance& instance, const ShapeConfig& config) {
  valid_or_throw(instance, config.shape);
  const ShapeContext ctx(instance, config.shape);
  const auto [threshold, possible] = sum_threshold(ctx);
  return min_alpha_for(ctx, threshold, possible, config.cbar_max, config.cbar_below);
}

std::optional<Rational> full_load_alpha(const Instance& instance) {
  const auto m = static_cast<int>(instance.resources());
  if (m == 1) return Rational(1);
  if (instance.players() % m != 0) return std::nullopt;
  const int M = instance.players() / m;
  const Rational cost = instance.coefficient(instance.resources() - 1) * M +
                        instance.budget_share(instance.resources());
  const Rational escape = instance.coefficient(0) * (M + 1) + instance.budget();
  Rational alpha = cost / escape;
  return alpha < 1 ? Rational(1) : alpha;
}

std::vector<Rational> candidate_alphas(const Instance& instance, int precision) {
  std::vector<Rational> values;
  const int n = instance.players();
  for (std::size_t r = 0; r < instance.resources(); ++r) {
    for (int load = 0; load <= n; ++load) {
      const Rational base = instance.coefficient(r) * load;
      values.push_back(base);
      for (std::size_t p = 1; p <= instance.resources(); ++p) {
        values.emplace_back(base + instance.budget_share(p));
      }
    }
  }
  sort_unique(values);

  const Rational ceiling = upper_K(precision);
  std::vector<Rational> out{Rational(1)};
  for (const auto& v : values) {
    if (sgn(v) <= 0) continue;
    const Rational top = v * ceiling;
    auto first = std::lower_bound(values.begin(), values.end(), v);
    auto last = std::upper_bound(values.begin(), values.end(), top);
    for (auto it = first; it != last; ++it) out.emplace_back(*it / v);
  }
  sort_unique(out);
  return out;
}

std::optional<OptResult> feasible_at(const Instance& instance, const Rational& alpha,
                                     CbarPairing pairing) {
  if (instance.resources() == 1) {
    return finish(instance, alpha, LoadVector({instance.players()}), std::nullopt);
  }
  if (const auto full = full_load_alpha(instance); full && *full <= alpha) {
    return finish(instance, alpha, all_equal(instance), std::nullopt);
  }
  for (const auto& shape : enumerate_shapes(instance.players(), instance.resources())) {
    const ShapeContext ctx(instance, shape);
    for (auto& [cm, cb] : pairs_for(ctx, pairing)) {
      if (auto loads = run_procedure(ctx, cm, cb, alpha)) {
        return finish(instance, alpha, std::move(*loads),
                      ShapeConfig{shape, std::move(cm), std::move(cb)});
      }
    }
  }
  return std::nullopt;
}

OptResult best_alpha(const Instance& instance, const OptOptions& options) {
  if (instance.resources() == 1) {
    return finish(instance, Rational(1), LoadVector({instance.players()}), std::nullopt);
  }

  const auto shapes = enumerate_shapes(instance.players(), instance.resources());
  std::vector<std::optional<ShapeBest>> per_shape(shapes.size());
  const auto count = static_cast<long>(shapes.size());
  if (options.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      per_shape[static_cast<std::size_t>(i)] =
          best_for_shape(instance, shapes[static_cast<std::size_t>(i)], options.pairing);
    }
  } else {
    for (long i = 0; i < count; ++i) {
      per_shape[static_cast<std::size_t>(i)] =
          best_for_shape(instance, shapes[static_cast<std::size_t>(i)], options.pairing);
    }
  }

  // Deterministic reduction: the full-load profile first, then shapes in
  // lexicographic order; only a strictly smaller alpha replaces the incumbent.
  std::optional<Rational> best_alpha_value = full_load_alpha(instance);
  std::optional<std::size_t> best_shape;
  for (std::size_t i = 0; i < per_shape.size(); ++i) {
    if (per_shape[i] && (!best_alpha_value || per_shape[i]->alpha < *best_alpha_value)) {
      best_alpha_value = per_shape[i]->alpha;
      best_shape = i;
    }
  }
  if (!best_alpha_value) throw std::logic_error("no shape admits an approximate equilibrium");

  if (!best_shape) {
    return finish(instance, *best_alpha_value, all_equal(instance), std::nullopt);
  }
  ShapeConfig config{shapes[*best_shape], per_shape[*best_shape]->pair.first,
                     per_shape[*best_shape]->pair.second};
  auto witness = feasible_load_vector(instance, config, *best_alpha_value);
  if (!witness) throw std::logic_error("minimal alpha rejected by the load construction");
  return finish(instance, *best_alpha_value, std::move(*witness), std::move(config));
}

OptResult best_alpha_by_bisection(const Instance& instance, CbarPairing pairing) {
  const auto candidates = candidate_alphas(instance);
  std::size_t lo = 0, hi = candidates.size() - 1;
  auto top = feasible_at(instance, candidates[hi], pairing);
  if (!top) throw std::logic_error("no equilibrium within the universal bound");
  OptResult best = std::move(*top);
  best.alpha_star = candidates[hi];
  // Invariant: candidates[hi] feasible; everything below lo infeasible.
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto hit = feasible_at(instance, candidates[mid], pairing)) {
      best = std::move(*hit);
      best.alpha_star = candidates[mid];
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

}  // namespace advcongest
