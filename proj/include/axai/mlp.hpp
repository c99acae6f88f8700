#pragma once

#include "axai/core.hpp"
#include "axai/rational.hpp"

#include <memory>
#include <span>
#include <vector>

namespace axai {

enum class activation { relu, step };

/// One affine layer h -> act(h W + b). W is inputs x outputs, row-major.
struct mlp_layer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<rational> weights;
  std::vector<rational> bias;
  activation act = activation::relu;

  mlp_layer() = default;
  mlp_layer(std::size_t in, std::size_t out, activation a)
      : inputs(in), outputs(out), weights(in * out), bias(out), act(a) {}

  rational& weight(std::size_t i, std::size_t j) { return weights[i * outputs + j]; }
  const rational& weight(std::size_t i, std::size_t j) const { return weights[i * outputs + j]; }
};

namespace detail {
struct compiled_network;
}

/// ReLU network with a single step output unit. Construction checks that
/// shapes chain from n to 1 and that only the last layer uses step.
class mlp {
public:
  mlp() = default;
  mlp(std::size_t n, std::vector<mlp_layer> layers);

  std::size_t arity() const { return n_; }
  std::size_t depth() const { return layers_.size(); }
  const std::vector<mlp_layer>& layers() const { return layers_; }

  /// Number of non-zero weights and biases.
  std::size_t nonzero_parameters() const;

  bool evaluate(std::span<const std::uint8_t> bits) const;
  /// Exact input to the final step unit.
  rational output_preactivation(std::span<const std::uint8_t> bits) const;

private:
  std::size_t n_ = 0;
  std::vector<mlp_layer> layers_;
  std::shared_ptr<const detail::compiled_network> compiled_;
};

bool mlp_evaluate(const mlp& f, const bit_vector& x);

/// Integer weights everywhere, final bias shifted by -1/2. Layer j is scaled
/// by the common denominator of its weights and its (already scaled) bias;
/// ReLU is positively homogeneous so the output sign is unchanged.
mlp mlp_rescale_integer(const mlp& f);

/// Rescale, then negate the final layer.
mlp mlp_negate(const mlp& f);

/// Hidden layers stacked side by side (shared input, block-diagonal after),
/// both step outputs turned into ReLU units, the shallower side padded with
/// identity units, and a final step unit with weights 1 and bias 0.
mlp mlp_or(const mlp& ft, const mlp& fs);
mlp mlp_and(const mlp& ft, const mlp& fs);
mlp mlp_implies(const mlp& ft, const mlp& fs);

mlp mlp_indicator(const bit_vector& x);
mlp mlp_constant_one(std::size_t n);

enum class gate_kind { and_gate, or_gate, not_gate };

/// Input feature (1-based) or an earlier gate (0-based position).
struct circuit_ref {
  bool is_input = true;
  std::size_t index = 1;

  static circuit_ref input(std::size_t feature) { return {true, feature}; }
  static circuit_ref gate(std::size_t position) { return {false, position}; }
};

struct circuit_gate {
  gate_kind kind = gate_kind::and_gate;
  std::vector<circuit_ref> inputs;
};

/// Topologically ordered circuit: every gate only reads inputs and earlier
/// gates.
class boolean_circuit {
public:
  boolean_circuit(std::size_t n, std::vector<circuit_gate> gates, circuit_ref output);

  std::size_t arity() const { return n_; }
  const std::vector<circuit_gate>& gates() const { return gates_; }
  circuit_ref output() const { return output_; }

  bool evaluate(std::span<const std::uint8_t> bits) const;

private:
  std::size_t n_;
  std::vector<circuit_gate> gates_;
  circuit_ref output_;
};

/// Gate gadgets on 0/1 signals: AND = relu(sum - (m-1)), OR = 1 - relu(1 - sum),
/// NOT = 1 - a folded into the consumer's affine map. One hidden layer per
/// AND/OR depth, final step at threshold 1/2.
mlp circuit_to_mlp(const boolean_circuit& c);

}  // namespace axai
