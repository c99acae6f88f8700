#include "axai/perceptron.hpp"

#include "axai/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace axai {

perceptron::perceptron(std::vector<rational> weights, rational bias)
    : weights_(std::move(weights)), bias_(std::move(bias)), compiled_(weights_, bias_) {
  if (weights_.empty()) fail(error_kind::schema, "perceptron arity must be positive");
}

rational perceptron::score(std::span<const std::uint8_t> bits) const {
  rational acc = bias_;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (bits[i]) acc += weights_[i];
  return acc;
}

bool perceptron_evaluate(const perceptron& f, const bit_vector& x) {
  require_same_arity(f.arity(), x.size(), "perceptron_evaluate");
  return f.evaluate(x.bits());
}

perceptron perceptron_rescale_integer(const perceptron& f) {
  std::vector<rational> all = f.weights();
  all.push_back(f.bias());
  const integer lcd = common_denominator(all);
  std::vector<rational> weights;
  weights.reserve(f.arity());
  for (const auto& w : f.weights()) weights.emplace_back(w * lcd);
  return perceptron(std::move(weights), f.bias() * lcd - rational(1, 2));
}

perceptron perceptron_negate(const perceptron& f) {
  const perceptron scaled = perceptron_rescale_integer(f);
  std::vector<rational> weights;
  weights.reserve(f.arity());
  for (const auto& w : scaled.weights()) weights.emplace_back(-w);
  return perceptron(std::move(weights), -scaled.bias());
}

perceptron perceptron_indicator(const bit_vector& x, const rational& w_plus, const rational& w_minus) {
  if (x.size() == 0) fail(error_kind::invalid_argument, "indicator of an empty vector");
  if (w_plus <= 0 || w_minus >= 0) fail(error_kind::invalid_argument, "indicator needs w_plus > 0 and w_minus < 0");
  if (w_plus < rational(1, 2) || w_minus > rational(-1, 2))
    fail(error_kind::invalid_argument, "indicator weights must have magnitude at least 1/2");
  std::vector<rational> weights;
  weights.reserve(x.size());
  rational hit = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    weights.push_back(x[i] ? w_plus : w_minus);
    if (x[i]) hit += w_plus;
  }
  return perceptron(std::move(weights), -hit + rational(1, 2));
}

perceptron perceptron_constant_one(std::size_t n) {
  if (n == 0) fail(error_kind::invalid_argument, "arity must be positive");
  return perceptron(std::vector<rational>(n, rational(0)), rational(1));
}

bool perceptron_contrastive_check(const perceptron& f, const bit_vector& x, const feature_subset& s) {
  require_same_arity(f.arity(), x.size(), "perceptron_contrastive_check");
  require_same_arity(f.arity(), s.arity(), "perceptron_contrastive_check");
  rational pinned = f.bias();
  rational high = 0;
  rational low = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const auto& w = f.weights()[i - 1];
    if (s.contains(i)) {
      (w > 0 ? high : low) += w;
    } else if (x[i]) {
      pinned += w;
    }
  }
  return pinned + high > 0 && pinned + low <= 0;
}

bool perceptron_sufficiency_check(const perceptron& f, const bit_vector& x, const feature_subset& s) {
  require_same_arity(f.arity(), x.size(), "perceptron_sufficiency_check");
  require_same_arity(f.arity(), s.arity(), "perceptron_sufficiency_check");
  rational pinned = f.bias();
  rational high = 0;
  rational low = 0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const auto& w = f.weights()[i - 1];
    if (!s.contains(i)) {
      (w > 0 ? high : low) += w;
    } else if (x[i]) {
      pinned += w;
    }
  }
  // every reachable score on the side of f(x)
  return f.evaluate(x.bits()) ? pinned + low > 0 : pinned + high <= 0;
}

namespace {

/// Smallest set of features with positive gain whose total gain satisfies
/// `enough`, preferring lower indices among minimum sets. `enough` must be
/// monotone in the total.
std::optional<std::vector<std::size_t>> greedy_minimum(const std::vector<rational>& gain,
                                                       const std::function<bool(const rational&)>& enough) {
  const std::size_t n = gain.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (gain[i] > 0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gain[a] > gain[b]; });

  rational total = 0;
  std::size_t k = 0;
  if (!enough(total)) {
    for (; k < order.size() && !enough(total); ++k) total += gain[order[k]];
    if (!enough(total)) return std::nullopt;
  }

  // best `budget` gains among positive-gain features with index > i
  auto best_after = [&](std::size_t i, std::size_t budget) {
    rational sum = 0;
    for (std::size_t j : order) {
      if (budget == 0) break;
      if (j > i) {
        sum += gain[j];
        --budget;
      }
    }
    return sum;
  };

  std::vector<std::size_t> chosen;
  rational taken = 0;
  for (std::size_t i = 0; i < n && chosen.size() < k; ++i) {
    if (gain[i] <= 0) continue;
    const rational with = taken + gain[i];
    if (enough(with + best_after(i, k - chosen.size() - 1))) {
      chosen.push_back(i + 1);
      taken = with;
    }
  }
  return chosen;
}

}  // namespace

std::optional<min_change> perceptron_min_change_misaligned(const perceptron& f, const bit_vector& x) {
  require_same_arity(f.arity(), x.size(), "perceptron_min_change_misaligned");
  const bool label = f.evaluate(x.bits());
  const rational score = f.score(x.bits());
  std::vector<rational> gain(x.size());
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const auto& w = f.weights()[i - 1];
    const rational delta = x[i] ? rational(-w) : w;  // score change when flipping i
    gain[i - 1] = label ? rational(-delta) : delta;
  }
  // label 1 must drop to <= 0, label 0 must rise above 0
  auto crosses = [&](const rational& g) { return label ? score - g <= 0 : score + g > 0; };
  auto chosen = greedy_minimum(gain, crosses);
  if (!chosen || chosen->empty()) return std::nullopt;
  const std::size_t size = chosen->size();
  return min_change{size, feature_subset(x.size(), std::move(*chosen))};
}

min_change perceptron_min_sufficient_misaligned(const perceptron& f, const bit_vector& x) {
  require_same_arity(f.arity(), x.size(), "perceptron_min_sufficient_misaligned");
  const bool label = f.evaluate(x.bits());
  // with nothing pinned the worst case is the min (label 1) or max (label 0)
  // score; pinning feature i to x_i moves it toward f(x) by gain_i >= 0
  rational worst = f.bias();
  std::vector<rational> gain(x.size());
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const auto& w = f.weights()[i - 1];
    const rational at_x = x[i] ? w : rational(0);
    if (label) {
      const rational lo = w < 0 ? w : rational(0);
      worst += lo;
      gain[i - 1] = at_x - lo;
    } else {
      const rational hi = w > 0 ? w : rational(0);
      worst += hi;
      gain[i - 1] = hi - at_x;
    }
  }
  auto holds = [&](const rational& g) { return label ? worst + g > 0 : worst - g <= 0; };
  auto chosen = greedy_minimum(gain, holds);
  // the full pinning reproduces score(x), so a solution always exists
  const std::size_t size = chosen->size();
  return min_change{size, feature_subset(x.size(), std::move(*chosen))};
}

}  // namespace axai
