#include "axai/random.hpp"

#include "axai/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace axai {

std::size_t uniform_index(rng& r, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(r);
}

bool coin(rng& r, double p) { return std::bernoulli_distribution(p)(r); }

bit_vector random_input(rng& r, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = coin(r) ? 1 : 0;
  return bit_vector(std::move(bits));
}

feature_subset random_subset(rng& r, std::size_t n) {
  std::vector<std::size_t> members;
  for (std::size_t i = 1; i <= n; ++i)
    if (coin(r)) members.push_back(i);
  return feature_subset(n, std::move(members));
}

namespace {

struct free_builder {
  rng& r;
  double leaf_p;
  double reuse_p;
  std::vector<fbdd_node> nodes;
  std::vector<std::uint64_t> support;

  std::uint64_t support_of(node_ref ref) const { return is_leaf(ref) ? 0 : support[static_cast<std::size_t>(ref)]; }

  node_ref build(std::uint64_t avail, std::size_t depth) {
    if (avail == 0 || (depth > 0 && coin(r, leaf_p))) return leaf_of(coin(r));
    if (!nodes.empty() && coin(r, reuse_p)) {
      std::vector<node_ref> fits;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if ((support[i] & ~avail) == 0) fits.push_back(static_cast<node_ref>(i));
      if (!fits.empty()) return fits[uniform_index(r, 0, fits.size() - 1)];
    }
    std::size_t pick = uniform_index(r, 0, static_cast<std::size_t>(std::popcount(avail)) - 1);
    std::uint64_t rest = avail;
    while (pick--) rest &= rest - 1;
    const std::uint64_t bit = rest & (~rest + 1);
    const node_ref low = build(avail & ~bit, depth + 1);
    const node_ref high = build(avail & ~bit, depth + 1);
    if (low == high) return low;
    nodes.push_back({static_cast<std::size_t>(std::countr_zero(bit)) + 1, low, high});
    support.push_back(bit | support_of(low) | support_of(high));
    return static_cast<node_ref>(nodes.size() - 1);
  }
};

rational random_rational(rng& r, int max_num, int max_den) {
  const auto num = std::uniform_int_distribution<int>(-max_num, max_num)(r);
  const auto den = std::uniform_int_distribution<int>(1, max_den)(r);
  return rational(num, den);
}

}  // namespace

fbdd random_fbdd(rng& r, std::size_t n, double leaf_probability, double reuse_probability) {
  if (n == 0 || n > 64) fail(error_kind::invalid_argument, "random_fbdd needs 1 <= n <= 64");
  free_builder b{r, leaf_probability, reuse_probability, {}, {}};
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const node_ref root = b.build(all, 0);
  return fbdd(n, std::move(b.nodes), root);
}

fbdd random_layered_fbdd(rng& r, std::size_t n, std::size_t width) {
  if (n == 0 || width == 0) fail(error_kind::invalid_argument, "random_layered_fbdd needs n, width >= 1");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::shuffle(order.begin(), order.end(), r);
  std::vector<fbdd_node> nodes;
  std::vector<node_ref> next;  // nodes of the level below
  for (std::size_t level = n; level-- > 0;) {
    const std::size_t count = level == 0 ? 1 : width;
    std::vector<node_ref> current;
    auto child = [&] {
      if (next.empty() || coin(r, 0.05)) return leaf_of(coin(r));
      return next[uniform_index(r, 0, next.size() - 1)];
    };
    for (std::size_t k = 0; k < count; ++k) {
      node_ref low = child();
      node_ref high = child();
      while (high == low) high = child();
      nodes.push_back({order[level], low, high});
      current.push_back(static_cast<node_ref>(nodes.size() - 1));
    }
    next = std::move(current);
  }
  return fbdd(n, std::move(nodes), next.front());
}

perceptron random_perceptron(rng& r, std::size_t n, int max_num, int max_den) {
  std::vector<rational> w(n);
  rational half_sum = 0;
  for (auto& v : w) {
    v = random_rational(r, max_num, max_den);
    half_sum += v;
  }
  half_sum /= 2;
  return perceptron(std::move(w), -half_sum + random_rational(r, max_num, max_den));
}

mlp random_mlp(rng& r, std::size_t n, std::size_t max_hidden, std::size_t max_width) {
  const std::size_t hidden = uniform_index(r, 1, max_hidden);
  std::vector<mlp_layer> layers;
  std::size_t width = n;
  for (std::size_t l = 0; l <= hidden; ++l) {
    const bool last = l == hidden;
    const std::size_t out = last ? 1 : uniform_index(r, 1, max_width);
    mlp_layer layer(width, out, last ? activation::step : activation::relu);
    for (auto& w : layer.weights) w = random_rational(r, 3, 2);
    for (auto& b : layer.bias) b = random_rational(r, 2, 2);
    layers.push_back(std::move(layer));
    width = out;
  }
  return mlp(n, std::move(layers));
}

boolean_circuit random_circuit(rng& r, std::size_t n, std::size_t gates) {
  if (gates == 0) fail(error_kind::invalid_argument, "random_circuit needs at least one gate");
  std::vector<circuit_gate> out;
  for (std::size_t g = 0; g < gates; ++g) {
    circuit_gate gate;
    const auto k = uniform_index(r, 0, 4);
    gate.kind = k < 2 ? gate_kind::and_gate : k < 4 ? gate_kind::or_gate : gate_kind::not_gate;
    const std::size_t fan_in = gate.kind == gate_kind::not_gate ? 1 : uniform_index(r, 2, 3);
    for (std::size_t i = 0; i < fan_in; ++i) {
      const std::size_t pick = uniform_index(r, 0, n + g - 1);
      gate.inputs.push_back(pick < n ? circuit_ref::input(pick + 1) : circuit_ref::gate(pick - n));
    }
    out.push_back(std::move(gate));
  }
  return boolean_circuit(n, std::move(out), circuit_ref::gate(gates - 1));
}

ssp_instance random_ssp(rng& r, std::size_t max_m, int max_value) {
  const std::size_t m = uniform_index(r, 1, max_m);
  std::vector<integer> values(m);
  integer total = 0;
  for (auto& v : values) {
    v = std::uniform_int_distribution<int>(1, max_value)(r);
    total += v;
  }
  const std::size_t k = uniform_index(r, 0, m);
  integer target;
  if (coin(r)) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), r);
    target = 0;
    for (std::size_t i = 0; i < k; ++i) target += values[idx[i]];
  } else {
    target = std::uniform_int_distribution<long long>(-1, static_cast<long long>(total) + 1)(r);
  }
  return ssp_instance(std::move(values), k, target);
}

}  // namespace axai
