#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace axai {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "-p/q" or a plain integer. Throws error(schema) on bad text
/// or a zero denominator.
rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const rational& value);

/// Least common multiple of the denominators.
integer common_denominator(std::span<const rational> values);

std::optional<std::int64_t> to_int64(const integer& value);

/// Exact sign of a rational: -1, 0 or 1.
inline int sign(const rational& value) {
  return value.sign();
}

/// Integer affine form c*(w, b) with c > 0 chosen so that every entry is
/// integral. Evaluates exactly on 0/1 inputs, using int64 whenever the sum of
/// absolute values is provably below 2^62.
class integer_affine {
public:
  integer_affine() = default;
  integer_affine(std::span<const rational> weights, const rational& bias);

  std::size_t size() const { return weights_.size(); }
  const std::vector<integer>& weights() const { return weights_; }
  const integer& bias() const { return bias_; }
  const integer& scale() const { return scale_; }

  /// Sign of the scaled score at a 0/1 point.
  int sign_at(std::span<const std::uint8_t> bits) const;

private:
  std::vector<integer> weights_;
  integer bias_ = 0;
  integer scale_ = 1;
  bool small_ = true;
  std::vector<std::int64_t> small_weights_;
  std::int64_t small_bias_ = 0;
};

}  // namespace axai
