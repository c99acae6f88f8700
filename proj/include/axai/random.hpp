#pragma once

#include "axai/constructions.hpp"
#include "axai/fbdd.hpp"
#include "axai/mlp.hpp"
#include "axai/perceptron.hpp"

#include <random>

namespace axai {

using rng = std::mt19937_64;

std::size_t uniform_index(rng& r, std::size_t lo, std::size_t hi);  // inclusive
bool coin(rng& r, double p = 0.5);

bit_vector random_input(rng& r, std::size_t n);
feature_subset random_subset(rng& r, std::size_t n);

/// Free BDD with mixed variable orders along different paths and shared
/// sub-diagrams. Requires n <= 64.
fbdd random_fbdd(rng& r, std::size_t n, double leaf_probability = 0.2, double reuse_probability = 0.3);
/// Ordered layered diagram of the given width; for large benchmark sizes.
fbdd random_layered_fbdd(rng& r, std::size_t n, std::size_t width);

/// Weights p/q with |p| <= max_num, 1 <= q <= max_den; bias centred so both
/// classes are likely.
perceptron random_perceptron(rng& r, std::size_t n, int max_num = 5, int max_den = 3);

/// 1..max_hidden ReLU layers of width 1..max_width, then a step unit.
mlp random_mlp(rng& r, std::size_t n, std::size_t max_hidden = 2, std::size_t max_width = 3);

boolean_circuit random_circuit(rng& r, std::size_t n, std::size_t gates);

/// m in 1..max_m, values in 1..max_value, every k in 0..m reachable; about
/// half of the targets are sums of an actual k-subset.
ssp_instance random_ssp(rng& r, std::size_t max_m, int max_value);

}  // namespace axai
