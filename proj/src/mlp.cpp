#include "axai/mlp.hpp"

#include "axai/error.hpp"

#include <algorithm>
#include <map>
#include <variant>

namespace axai {

namespace detail {

/// Integer-rescaled copy of a network used for exact evaluation. Layer j
/// computes alpha_j * h_j for a positive integer alpha_j.
struct compiled_network {
  struct layer {
    std::size_t inputs, outputs;
    std::vector<integer> weights;
    std::vector<integer> bias;
    std::vector<std::int64_t> small_weights;
    std::vector<std::int64_t> small_bias;
  };
  std::vector<layer> layers;
  bool small = true;

  template <typename T>
  int output_sign(std::span<const std::uint8_t> bits) const {
    std::vector<T> h(bits.begin(), bits.end());
    std::vector<T> next;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& layer = layers[l];
      const auto& w = [&]() -> const auto& {
        if constexpr (std::is_same_v<T, std::int64_t>) return layer.small_weights;
        else return layer.weights;
      }();
      const auto& b = [&]() -> const auto& {
        if constexpr (std::is_same_v<T, std::int64_t>) return layer.small_bias;
        else return layer.bias;
      }();
      next.assign(b.begin(), b.end());
      for (std::size_t i = 0; i < layer.inputs; ++i) {
        if (h[i] == 0) continue;
        const T hi = h[i];
        const std::size_t row = i * layer.outputs;
        for (std::size_t j = 0; j < layer.outputs; ++j) next[j] += hi * w[row + j];
      }
      if (l + 1 < layers.size())
        for (auto& v : next)
          if (v < 0) v = 0;
      std::swap(h, next);
    }
    return (h[0] > 0) - (h[0] < 0);
  }
};

}  // namespace detail

namespace {

/// Per-layer integer scaling. Returns the scaled layers (same shapes) and the
/// overall positive factor applied to the final pre-activation.
std::vector<mlp_layer> integer_layers(const std::vector<mlp_layer>& layers) {
  std::vector<mlp_layer> out;
  out.reserve(layers.size());
  integer alpha = 1;
  for (const auto& layer : layers) {
    std::vector<rational> entries = layer.weights;
    for (const auto& b : layer.bias) entries.emplace_back(b * alpha);
    const integer d = common_denominator(entries);
    mlp_layer scaled(layer.inputs, layer.outputs, layer.act);
    for (std::size_t k = 0; k < layer.weights.size(); ++k) scaled.weights[k] = layer.weights[k] * d;
    for (std::size_t k = 0; k < layer.bias.size(); ++k) scaled.bias[k] = layer.bias[k] * alpha * d;
    alpha *= d;
    out.push_back(std::move(scaled));
  }
  return out;
}

std::shared_ptr<const detail::compiled_network> compile(const std::vector<mlp_layer>& layers) {
  auto net = std::make_shared<detail::compiled_network>();
  integer bound = 1;  // bound on |activation| entering the layer
  integer worst = 1;
  for (const auto& layer : integer_layers(layers)) {
    detail::compiled_network::layer c{layer.inputs, layer.outputs, {}, {}, {}, {}};
    c.weights.reserve(layer.weights.size());
    for (const auto& w : layer.weights) c.weights.push_back(boost::multiprecision::numerator(w));
    for (const auto& b : layer.bias) c.bias.push_back(boost::multiprecision::numerator(b));
    integer next_bound = 0;
    for (std::size_t j = 0; j < layer.outputs; ++j) {
      integer acc = abs(c.bias[j]);
      for (std::size_t i = 0; i < layer.inputs; ++i) acc += abs(c.weights[i * layer.outputs + j]) * bound;
      next_bound = std::max(next_bound, acc);
    }
    bound = next_bound;
    worst = std::max(worst, bound);
    net->layers.push_back(std::move(c));
  }
  net->small = worst < (integer(1) << 62);
  if (net->small) {
    for (auto& c : net->layers) {
      for (const auto& w : c.weights) c.small_weights.push_back(static_cast<std::int64_t>(w));
      for (const auto& b : c.bias) c.small_bias.push_back(static_cast<std::int64_t>(b));
    }
  }
  return net;
}

}  // namespace

mlp::mlp(std::size_t n, std::vector<mlp_layer> layers) : n_(n), layers_(std::move(layers)) {
  if (n_ == 0) fail(error_kind::schema, "mlp arity must be positive");
  if (layers_.empty()) fail(error_kind::schema, "mlp needs at least one layer");
  std::size_t width = n_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.inputs != width)
      fail(error_kind::schema, "layer " + std::to_string(l + 1) + " expects " + std::to_string(layer.inputs) +
                                   " inputs but receives " + std::to_string(width));
    if (layer.outputs == 0 || layer.weights.size() != layer.inputs * layer.outputs || layer.bias.size() != layer.outputs)
      fail(error_kind::schema, "layer " + std::to_string(l + 1) + " has inconsistent shape");
    const bool last = l + 1 == layers_.size();
    if (last != (layer.act == activation::step))
      fail(error_kind::schema, "only the final layer may (and must) use the step activation");
    width = layer.outputs;
  }
  if (width != 1) fail(error_kind::schema, "final layer must have a single output");
  compiled_ = compile(layers_);
}

std::size_t mlp::nonzero_parameters() const {
  std::size_t count = 0;
  for (const auto& layer : layers_) {
    count += std::count_if(layer.weights.begin(), layer.weights.end(), [](const rational& v) { return v != 0; });
    count += std::count_if(layer.bias.begin(), layer.bias.end(), [](const rational& v) { return v != 0; });
  }
  return count;
}

bool mlp::evaluate(std::span<const std::uint8_t> bits) const {
  if (compiled_->small) return compiled_->output_sign<std::int64_t>(bits) > 0;
  return compiled_->output_sign<integer>(bits) > 0;
}

rational mlp::output_preactivation(std::span<const std::uint8_t> bits) const {
  std::vector<rational> h(bits.begin(), bits.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    std::vector<rational> next = layer.bias;
    for (std::size_t i = 0; i < layer.inputs; ++i) {
      if (h[i] == 0) continue;
      for (std::size_t j = 0; j < layer.outputs; ++j) next[j] += h[i] * layer.weight(i, j);
    }
    if (l + 1 < layers_.size())
      for (auto& v : next)
        if (v < 0) v = 0;
    h = std::move(next);
  }
  return h[0];
}

bool mlp_evaluate(const mlp& f, const bit_vector& x) {
  require_same_arity(f.arity(), x.size(), "mlp_evaluate");
  return f.evaluate(x.bits());
}

mlp mlp_rescale_integer(const mlp& f) {
  auto layers = integer_layers(f.layers());
  layers.back().bias[0] -= rational(1, 2);
  return mlp(f.arity(), std::move(layers));
}

mlp mlp_negate(const mlp& f) {
  auto layers = mlp_rescale_integer(f).layers();
  auto& last = layers.back();
  for (auto& w : last.weights) w = -w;
  last.bias[0] = -last.bias[0];
  return mlp(f.arity(), std::move(layers));
}

namespace {

/// Layer l of one operand inside the merged network, with the final step
/// turned into ReLU and identity units past the operand's own depth.
mlp_layer operand_layer(const mlp& f, std::size_t l) {
  if (l < f.depth()) {
    mlp_layer layer = f.layers()[l];
    layer.act = activation::relu;
    return layer;
  }
  mlp_layer pass(1, 1, activation::relu);
  pass.weight(0, 0) = 1;
  return pass;
}

}  // namespace

mlp mlp_or(const mlp& ft, const mlp& fs) {
  require_same_arity(ft.arity(), fs.arity(), "mlp_or");
  const std::size_t depth = std::max(ft.depth(), fs.depth());
  std::vector<mlp_layer> layers;
  layers.reserve(depth + 1);
  for (std::size_t l = 0; l < depth; ++l) {
    const mlp_layer a = operand_layer(ft, l);
    const mlp_layer b = operand_layer(fs, l);
    const bool shared_input = l == 0;
    const std::size_t in = shared_input ? a.inputs : a.inputs + b.inputs;
    mlp_layer merged(in, a.outputs + b.outputs, activation::relu);
    for (std::size_t i = 0; i < a.inputs; ++i)
      for (std::size_t j = 0; j < a.outputs; ++j) merged.weight(i, j) = a.weight(i, j);
    const std::size_t row_offset = shared_input ? 0 : a.inputs;
    for (std::size_t i = 0; i < b.inputs; ++i)
      for (std::size_t j = 0; j < b.outputs; ++j) merged.weight(row_offset + i, a.outputs + j) = b.weight(i, j);
    std::copy(a.bias.begin(), a.bias.end(), merged.bias.begin());
    std::copy(b.bias.begin(), b.bias.end(), merged.bias.begin() + a.outputs);
    layers.push_back(std::move(merged));
  }
  mlp_layer out(2, 1, activation::step);
  out.weight(0, 0) = 1;
  out.weight(1, 0) = 1;
  layers.push_back(std::move(out));
  return mlp(ft.arity(), std::move(layers));
}

mlp mlp_and(const mlp& ft, const mlp& fs) { return mlp_negate(mlp_or(mlp_negate(ft), mlp_negate(fs))); }

mlp mlp_implies(const mlp& ft, const mlp& fs) { return mlp_or(mlp_negate(ft), fs); }

mlp mlp_indicator(const bit_vector& x) {
  if (x.size() == 0) fail(error_kind::invalid_argument, "indicator of an empty vector");
  std::vector<circuit_gate> gates;
  circuit_gate conj{gate_kind::and_gate, {}};
  for (std::size_t i = 1; i <= x.size(); ++i) {
    if (x[i]) {
      conj.inputs.push_back(circuit_ref::input(i));
    } else {
      gates.push_back({gate_kind::not_gate, {circuit_ref::input(i)}});
      conj.inputs.push_back(circuit_ref::gate(gates.size() - 1));
    }
  }
  gates.push_back(std::move(conj));
  const std::size_t out = gates.size() - 1;
  return circuit_to_mlp(boolean_circuit(x.size(), std::move(gates), circuit_ref::gate(out)));
}

mlp mlp_constant_one(std::size_t n) {
  if (n == 0) fail(error_kind::invalid_argument, "arity must be positive");
  mlp_layer layer(n, 1, activation::step);
  layer.bias[0] = 1;
  return mlp(n, {std::move(layer)});
}

boolean_circuit::boolean_circuit(std::size_t n, std::vector<circuit_gate> gates, circuit_ref output)
    : n_(n), gates_(std::move(gates)), output_(output) {
  if (n_ == 0) fail(error_kind::schema, "circuit arity must be positive");
  auto check = [&](circuit_ref r, std::size_t limit) {
    if (r.is_input ? (r.index < 1 || r.index > n_) : r.index >= limit)
      fail(error_kind::schema, r.is_input ? "circuit input x" + std::to_string(r.index) + " out of range"
                                          : "gate reference does not precede its use");
  };
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const auto& gate = gates_[g];
    if (gate.inputs.empty()) fail(error_kind::schema, "gate without inputs");
    if (gate.kind == gate_kind::not_gate && gate.inputs.size() != 1) fail(error_kind::schema, "not gate takes one input");
    for (auto r : gate.inputs) check(r, g);
  }
  check(output_, gates_.size());
}

bool boolean_circuit::evaluate(std::span<const std::uint8_t> bits) const {
  std::vector<std::uint8_t> value(gates_.size());
  auto read = [&](circuit_ref r) -> bool { return r.is_input ? bits[r.index - 1] != 0 : value[r.index] != 0; };
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const auto& gate = gates_[g];
    bool v = false;
    switch (gate.kind) {
      case gate_kind::and_gate:
        v = std::all_of(gate.inputs.begin(), gate.inputs.end(), read);
        break;
      case gate_kind::or_gate:
        v = std::any_of(gate.inputs.begin(), gate.inputs.end(), read);
        break;
      case gate_kind::not_gate:
        v = !read(gate.inputs[0]);
        break;
    }
    value[g] = v;
  }
  return read(output_);
}

namespace {

/// Affine function of the units of one layer (or of the inputs at layer 0).
struct affine_form {
  std::vector<rational> coef;
  rational constant = 0;

  explicit affine_form(std::size_t width = 0) : coef(width) {}

  affine_form& operator+=(const affine_form& o) {
    for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
    constant += o.constant;
    return *this;
  }
  affine_form complement() const {  // 1 - this
    affine_form out(coef.size());
    for (std::size_t i = 0; i < coef.size(); ++i) out.coef[i] = -coef[i];
    out.constant = 1 - constant;
    return out;
  }
};

}  // namespace

mlp circuit_to_mlp(const boolean_circuit& c) {
  const std::size_t n = c.arity();
  const auto& gates = c.gates();
  // signal ids: 0..n-1 inputs, n+g gates
  auto sig = [&](circuit_ref r) { return r.is_input ? r.index - 1 : n + r.index; };
  const std::size_t total = n + gates.size();
  auto is_not = [&](std::size_t s) { return s >= n && gates[s - n].kind == gate_kind::not_gate; };

  // number of ReLU layers needed before a signal exists
  std::vector<std::size_t> depth(total, 0);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    std::size_t d = 0;
    for (auto r : gates[g].inputs) d = std::max(d, depth[sig(r)]);
    depth[n + g] = gates[g].kind == gate_kind::not_gate ? d : d + 1;
  }
  const std::size_t out_sig = sig(c.output());
  const std::size_t layers_needed = depth[out_sig];

  // last layer at which each signal must be readable
  std::vector<std::size_t> needed(total, 0);
  std::vector<std::uint8_t> live(total, 0);
  live[out_sig] = 1;
  needed[out_sig] = layers_needed;
  for (std::size_t g = gates.size(); g-- > 0;) {
    const std::size_t s = n + g;
    if (!live[s]) continue;
    for (auto r : gates[g].inputs) {
      const std::size_t in = sig(r);
      const std::size_t want = gates[g].kind == gate_kind::not_gate ? needed[s] : depth[s] - 1;
      needed[in] = live[in] ? std::max(needed[in], want) : want;
      live[in] = 1;
    }
  }

  // form[s] = signal s as an affine function of the current layer
  std::vector<affine_form> form(total);
  for (std::size_t i = 0; i < n; ++i) {
    form[i] = affine_form(n);
    form[i].coef[i] = 1;
  }
  auto resolve_nots = [&](std::size_t layer) {
    for (std::size_t g = 0; g < gates.size(); ++g) {
      const std::size_t s = n + g;
      if (live[s] && is_not(s) && depth[s] <= layer) form[s] = form[sig(gates[g].inputs[0])].complement();
    }
  };
  resolve_nots(0);

  std::vector<mlp_layer> layers;
  std::size_t width = n;
  for (std::size_t layer = 1; layer <= layers_needed; ++layer) {
    // units: new AND/OR gates at this depth, then carried signals
    std::vector<affine_form> pre;
    std::vector<std::pair<std::size_t, bool>> produced;  // signal, is OR (value = 1 - unit)
    for (std::size_t g = 0; g < gates.size(); ++g) {
      const std::size_t s = n + g;
      if (!live[s] || is_not(s) || depth[s] != layer) continue;
      affine_form sum(width);
      for (auto r : gates[g].inputs) sum += form[sig(r)];
      const auto m = static_cast<long>(gates[g].inputs.size());
      if (gates[g].kind == gate_kind::and_gate) {
        sum.constant -= m - 1;
        pre.push_back(std::move(sum));
        produced.emplace_back(s, false);
      } else {
        pre.push_back(sum.complement());
        produced.emplace_back(s, true);
      }
    }
    for (std::size_t s = 0; s < total; ++s) {
      if (!live[s] || is_not(s) || depth[s] >= layer || needed[s] < layer) continue;
      pre.push_back(form[s]);
      produced.emplace_back(s, false);
    }
    mlp_layer hidden(width, pre.size(), activation::relu);
    for (std::size_t j = 0; j < pre.size(); ++j) {
      for (std::size_t i = 0; i < width; ++i) hidden.weight(i, j) = pre[j].coef[i];
      hidden.bias[j] = pre[j].constant;
    }
    layers.push_back(std::move(hidden));
    width = pre.size();
    for (std::size_t j = 0; j < produced.size(); ++j) {
      affine_form unit(width);
      unit.coef[j] = 1;
      form[produced[j].first] = produced[j].second ? unit.complement() : std::move(unit);
    }
    resolve_nots(layer);
  }
  const auto& out = form[out_sig];
  mlp_layer final_layer(width, 1, activation::step);
  for (std::size_t i = 0; i < width; ++i) final_layer.weight(i, 0) = out.coef[i];
  final_layer.bias[0] = out.constant - rational(1, 2);
  layers.push_back(std::move(final_layer));
  return mlp(n, std::move(layers));
}

}  // namespace axai
