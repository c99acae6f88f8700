#pragma once

#include "axai/core.hpp"
#include "axai/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace axai {

/// f(x) = 1 iff <w,x> + b > 0, with exact rational weights.
class perceptron {
public:
  perceptron() = default;
  perceptron(std::vector<rational> weights, rational bias);

  std::size_t arity() const { return weights_.size(); }
  const std::vector<rational>& weights() const { return weights_; }
  const rational& bias() const { return bias_; }

  rational score(std::span<const std::uint8_t> bits) const;
  bool evaluate(std::span<const std::uint8_t> bits) const { return compiled_.sign_at(bits) > 0; }

private:
  std::vector<rational> weights_;
  rational bias_;
  integer_affine compiled_;
};

bool perceptron_evaluate(const perceptron& f, const bit_vector& x);

/// Scales (w, b) by the least common denominator and shifts the bias by -1/2.
/// Same function on {0,1}^n, integer weights, and no input scores exactly 0.
perceptron perceptron_rescale_integer(const perceptron& f);

/// Rescale, then negate every coefficient.
perceptron perceptron_negate(const perceptron& f);

/// Weight w_plus where x_i = 1, w_minus where x_i = 0, bias -<w,x> + 1/2.
/// Accepts exactly x. Requires w_plus >= 1/2 and w_minus <= -1/2; smaller
/// magnitudes let a single differing feature stay above the threshold.
perceptron perceptron_indicator(const bit_vector& x, const rational& w_plus, const rational& w_minus);

perceptron perceptron_constant_one(std::size_t n);

/// Whether some assignment to s (complement pinned to x) changes f(x). O(n).
bool perceptron_contrastive_check(const perceptron& f, const bit_vector& x, const feature_subset& s);

/// Whether pinning s to x fixes f(x) for every assignment of the complement.
bool perceptron_sufficiency_check(const perceptron& f, const bit_vector& x, const feature_subset& s);

/// Minimum contrastive subset: greedily flips the features that move the score
/// furthest toward the other class. nullopt when no flip exists.
std::optional<min_change> perceptron_min_change_misaligned(const perceptron& f, const bit_vector& x);

/// Minimum sufficient subset: greedily pins the features whose worst-case
/// contribution matters most. Always exists (the full set is sufficient).
min_change perceptron_min_sufficient_misaligned(const perceptron& f, const bit_vector& x);

}  // namespace axai
