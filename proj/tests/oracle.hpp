#pragma once

// Exhaustive reference semantics for small instances. Shares no solving code
// with the library: models are re-evaluated from their public fields, and
// every query is decided from its quantified definition over {0,1}^n.

#include "axai/classifier.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using axai::rational;

inline bool bit(std::uint64_t mask, std::size_t feature) { return (mask >> (feature - 1)) & 1U; }

inline bool eval_fbdd(const axai::fbdd& f, std::uint64_t z) {
  axai::node_ref r = f.root();
  while (!axai::is_leaf(r)) {
    const auto& node = f.nodes()[static_cast<std::size_t>(r)];
    r = bit(z, node.var) ? node.high : node.low;
  }
  return r == axai::leaf1;
}

inline bool eval_perceptron(const axai::perceptron& f, std::uint64_t z) {
  rational s = f.bias();
  for (std::size_t i = 1; i <= f.arity(); ++i)
    if (bit(z, i)) s += f.weights()[i - 1];
  return s > 0;
}

inline rational mlp_output(const axai::mlp& f, std::uint64_t z) {
  std::vector<rational> h(f.arity());
  for (std::size_t i = 1; i <= f.arity(); ++i) h[i - 1] = bit(z, i) ? 1 : 0;
  rational out = 0;
  for (const auto& layer : f.layers()) {
    std::vector<rational> next(layer.outputs);
    for (std::size_t j = 0; j < layer.outputs; ++j) {
      rational a = layer.bias[j];
      for (std::size_t i = 0; i < layer.inputs; ++i) a += h[i] * layer.weights[i * layer.outputs + j];
      out = a;
      next[j] = a > 0 ? a : rational(0);
    }
    h = std::move(next);
  }
  return out;  // pre-activation of the single output unit
}

inline bool eval_mlp(const axai::mlp& f, std::uint64_t z) { return mlp_output(f, z) > 0; }

inline bool eval(const axai::classifier& c, std::uint64_t z) {
  if (const auto* d = std::get_if<axai::fbdd>(&c)) return eval_fbdd(*d, z);
  if (const auto* p = std::get_if<axai::perceptron>(&c)) return eval_perceptron(*p, z);
  if (const auto* m = std::get_if<axai::mlp>(&c)) return eval_mlp(*m, z);
  return true;
}

inline std::vector<std::uint8_t> truth_table(const axai::classifier& c, std::size_t n) {
  std::vector<std::uint8_t> t(std::size_t{1} << n);
  for (std::uint64_t z = 0; z < t.size(); ++z) t[z] = eval(c, z) ? 1 : 0;
  return t;
}

template <class F>
std::vector<std::uint8_t> truth_table_of(std::size_t n, F&& f) {
  std::vector<std::uint8_t> t(std::size_t{1} << n);
  for (std::uint64_t z = 0; z < t.size(); ++z) t[z] = f(z) ? 1 : 0;
  return t;
}

inline std::vector<std::size_t> members(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> m;
  for (std::size_t i = 1; i <= n; ++i)
    if (bit(mask, i)) m.push_back(i);
  return m;
}

/// All subsets of {1..n}: by size, then lexicographic on the sorted indices.
inline std::vector<std::uint64_t> canonical_subsets(std::size_t n) {
  std::vector<std::uint64_t> all(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < all.size(); ++s) all[s] = s;
  std::sort(all.begin(), all.end(), [n](std::uint64_t a, std::uint64_t b) {
    const auto ma = members(a, n);
    const auto mb = members(b, n);
    if (ma.size() != mb.size()) return ma.size() < mb.size();
    return ma < mb;
  });
  return all;
}

/// <f, pi, x> tabulated once; all queries answered from the definitions.
struct instance {
  std::size_t n = 0;
  std::vector<std::uint8_t> f;
  std::vector<std::uint8_t> pi;
  std::uint64_t x = 0;

  instance(const axai::classifier& model, const axai::classifier& context, const axai::bit_vector& input)
      : n(input.size()), f(truth_table(model, n)), pi(truth_table(context, n)), x(input.to_mask()) {}
  instance(std::size_t n_, std::vector<std::uint8_t> f_, std::vector<std::uint8_t> pi_, std::uint64_t x_)
      : n(n_), f(std::move(f_)), pi(std::move(pi_)), x(x_) {}

  std::uint64_t full() const { return (std::uint64_t{1} << n) - 1; }

  // forall z agreeing with x on s: pi(z) -> f(z) = f(x)
  bool sufficient(std::uint64_t s) const {
    for (std::uint64_t z = 0; z <= full(); ++z)
      if (((z ^ x) & s) == 0 && pi[z] && f[z] != f[x]) return false;
    return true;
  }
  // exists z agreeing with x off s: pi(z) and f(z) != f(x)
  bool contrastive(std::uint64_t s) const { return count(s) > 0; }
  std::uint64_t count(std::uint64_t s) const {
    std::uint64_t c = 0;
    for (std::uint64_t z = 0; z <= full(); ++z)
      if (((z ^ x) & ~s & full()) == 0 && pi[z] && f[z] != f[x]) ++c;
    return c;
  }

  template <class P>
  std::optional<std::uint64_t> first(P&& pred) const {
    for (auto s : canonical_subsets(n))
      if (pred(s)) return s;
    return std::nullopt;
  }
  std::optional<std::uint64_t> min_sufficient() const {
    return first([&](std::uint64_t s) { return sufficient(s); });
  }
  std::optional<std::uint64_t> min_contrastive() const {
    return first([&](std::uint64_t s) { return contrastive(s); });
  }
};

/// Depth-first walk over every root-to-leaf path; true if no feature repeats.
inline bool read_once_audit(const axai::fbdd& f) {
  std::vector<std::uint8_t> seen(f.arity() + 1, 0);
  bool ok = true;
  auto walk = [&](auto&& self, axai::node_ref r) -> void {
    if (!ok || axai::is_leaf(r)) return;
    const auto& node = f.nodes()[static_cast<std::size_t>(r)];
    if (seen[node.var]) {
      ok = false;
      return;
    }
    seen[node.var] = 1;
    self(self, node.low);
    self(self, node.high);
    seen[node.var] = 0;
  };
  walk(walk, f.root());
  return ok;
}

/// Exhaustive k-subset sum check.
inline bool subset_sum(const std::vector<long long>& values, std::size_t k, long long target) {
  const std::size_t m = values.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    if (static_cast<std::size_t>(__builtin_popcountll(s)) != k) continue;
    long long sum = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((s >> i) & 1U) sum += values[i];
    if (sum == target) return true;
  }
  return false;
}

}  // namespace oracle
