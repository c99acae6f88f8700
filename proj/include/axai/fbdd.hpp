#pragma once

#include "axai/core.hpp"
#include "axai/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace axai {

/// Reference to a diagram node: non-negative values index the node table,
/// the two negative sentinels are the leaves.
using node_ref = std::int32_t;
inline constexpr node_ref leaf0 = -1;
inline constexpr node_ref leaf1 = -2;

inline bool is_leaf(node_ref r) { return r < 0; }
inline node_ref leaf_of(bool value) { return value ? leaf1 : leaf0; }

struct fbdd_node {
  std::size_t var = 0;  // 1-based feature
  node_ref low = leaf0;
  node_ref high = leaf0;

  bool operator==(const fbdd_node&) const = default;
};

/// Free binary decision diagram. Construction validates reference integrity,
/// acyclicity and the read-once property, drops unreachable nodes and stores
/// the rest children-first, so node i only points at nodes j < i.
class fbdd {
public:
  fbdd() = default;
  fbdd(std::size_t n, std::vector<fbdd_node> nodes, node_ref root);

  static fbdd constant(std::size_t n, bool value);

  std::size_t arity() const { return n_; }
  node_ref root() const { return root_; }
  const std::vector<fbdd_node>& nodes() const { return nodes_; }
  /// |f|: number of edges.
  std::size_t size() const { return 2 * nodes_.size(); }
  bool is_constant() const { return is_leaf(root_); }

  bool evaluate(std::span<const std::uint8_t> bits) const;

private:
  std::size_t n_ = 0;
  std::vector<fbdd_node> nodes_;
  node_ref root_ = leaf0;
};

/// Which operand a node of a composed diagram was copied from: every
/// root-to-leaf path runs through prefix nodes (ft) and then suffix nodes (fs).
enum class diagram_phase : std::uint8_t { prefix, suffix };

struct raw_node {
  std::size_t var = 0;
  node_ref low = leaf0;
  node_ref high = leaf0;
  diagram_phase phase = diagram_phase::prefix;
};

/// Decision diagram that may test a feature more than once along a path.
/// Validated as a two-phase DAG: no suffix node leads back into the prefix,
/// and each phase is read-once on its own.
class raw_diagram {
public:
  raw_diagram(std::size_t n, std::vector<raw_node> nodes, node_ref root);

  std::size_t arity() const { return n_; }
  node_ref root() const { return root_; }
  const std::vector<raw_node>& nodes() const { return nodes_; }
  std::size_t size() const { return 2 * nodes_.size(); }

  bool evaluate(std::span<const std::uint8_t> bits) const;
  /// True when no feature repeats on any path.
  bool is_read_once() const;

private:
  std::size_t n_ = 0;
  std::vector<raw_node> nodes_;
  node_ref root_ = leaf0;
};

bool fbdd_evaluate(const fbdd& f, const bit_vector& x);

/// Leaf swap.
fbdd fbdd_negate(const fbdd& f);

/// Chain of n nodes accepting exactly x.
fbdd fbdd_indicator(const bit_vector& x);

fbdd fbdd_constant_one(std::size_t n);

/// ft with every 1-leaf edge redirected to (a shared copy of) fs.
raw_diagram fbdd_and(const fbdd& ft, const fbdd& fs);

/// not-ft with every 0-leaf edge redirected to fs: computes ft -> fs.
raw_diagram fbdd_implies(const fbdd& ft, const fbdd& fs);

/// Removes repeated tests: a suffix node whose feature was already decided on
/// the prefix part of the path is bypassed toward the child that agrees with
/// that decision. Shared nodes reached under different relevant decisions are
/// split. Throws error(schema) if raw is not a two-phase diagram.
fbdd fbdd_read_once_repair(const raw_diagram& raw);

/// Minimum contrastive subset with the constant-one indicator: shortest path
/// to the opposite leaf where an edge costs 1 iff it disagrees with x. The
/// witness is the lexicographically smallest among minimum ones. nullopt when
/// no input has a different prediction.
std::optional<min_change> fbdd_min_change_misaligned(const fbdd& f, const bit_vector& x);

/// Number of assignments v to s such that f(x with s set to v) != f(x).
integer fbdd_count_completions_misaligned(const fbdd& f, const bit_vector& x, const feature_subset& s);

}  // namespace axai
