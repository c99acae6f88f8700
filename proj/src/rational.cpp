#include "axai/rational.hpp"

#include "axai/error.hpp"

#include <cctype>
#include <limits>

namespace axai {

namespace {

integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) fail(error_kind::schema, "bad rational '" + std::string(whole) + "'");
  integer value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(error_kind::schema, "bad rational '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? integer(-value) : value;
}

}  // namespace

rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return rational(parse_integer(text, text));
  const integer num = parse_integer(text.substr(0, slash), text);
  const integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) fail(error_kind::schema, "zero denominator in '" + std::string(text) + "'");
  return rational(num, den);
}

std::string to_string(const rational& value) {
  const integer num = boost::multiprecision::numerator(value);
  const integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

integer common_denominator(std::span<const rational> values) {
  integer lcd = 1;
  for (const auto& v : values) {
    const integer den = boost::multiprecision::denominator(v);
    lcd = lcd / boost::multiprecision::gcd(lcd, den) * den;
  }
  return lcd;
}

std::optional<std::int64_t> to_int64(const integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(value);
}

integer_affine::integer_affine(std::span<const rational> weights, const rational& bias) {
  std::vector<rational> all(weights.begin(), weights.end());
  all.push_back(bias);
  scale_ = common_denominator(all);
  weights_.reserve(weights.size());
  integer magnitude = 0;
  for (const auto& w : weights) {
    weights_.push_back(boost::multiprecision::numerator(rational(w * scale_)));
    magnitude += abs(weights_.back());
  }
  bias_ = boost::multiprecision::numerator(rational(bias * scale_));
  magnitude += abs(bias_);
  small_ = magnitude < (integer(1) << 62);
  if (small_) {
    small_weights_.reserve(weights_.size());
    for (const auto& w : weights_) small_weights_.push_back(static_cast<std::int64_t>(w));
    small_bias_ = static_cast<std::int64_t>(bias_);
  }
}

int integer_affine::sign_at(std::span<const std::uint8_t> bits) const {
  if (small_) {
    std::int64_t acc = small_bias_;
    for (std::size_t i = 0; i < small_weights_.size(); ++i) acc += small_weights_[i] * bits[i];
    return (acc > 0) - (acc < 0);
  }
  integer acc = bias_;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (bits[i]) acc += weights_[i];
  return acc.sign();
}

}  // namespace axai
