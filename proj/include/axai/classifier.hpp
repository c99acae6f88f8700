#pragma once

#include "axai/core.hpp"
#include "axai/fbdd.hpp"
#include "axai/mlp.hpp"
#include "axai/perceptron.hpp"

#include <string_view>
#include <variant>

namespace axai {

/// The always-in-context indicator.
struct constant_one {
  std::size_t n = 0;
};

using classifier = std::variant<fbdd, perceptron, mlp, constant_one>;

enum class model_class { fbdd, perceptron, mlp, constant_one };

model_class class_of(const classifier& c);
std::string_view class_name(model_class k);

std::size_t arity(const classifier& c);

/// f(x) on raw 0/1 storage; no arity check.
bool evaluate(const classifier& c, std::span<const std::uint8_t> bits);

/// f(x); throws error(dimension) on arity mismatch.
bool evaluate(const classifier& c, const bit_vector& x);

/// True for indicators that are syntactically the constant 1 (constant_one,
/// a 1-leaf diagram, a zero-weight perceptron with positive bias). Such
/// instances are "misaligned" and may use the fast paths.
bool is_constant_one(const classifier& c);

}  // namespace axai
