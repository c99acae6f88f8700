#include "axai/fbdd.hpp"

#include "axai/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

namespace axai {

namespace {

using word = std::uint64_t;

struct var_set {
  std::vector<word> words;

  explicit var_set(std::size_t n = 0) : words((n + 63) / 64, 0) {}
  void insert(std::size_t var) { words[(var - 1) / 64] |= word{1} << ((var - 1) % 64); }
  bool contains(std::size_t var) const { return (words[(var - 1) / 64] >> ((var - 1) % 64)) & 1; }
  void merge(const var_set& other) {
    for (std::size_t i = 0; i < words.size(); ++i) words[i] |= other.words[i];
  }
};

/// Post-order (children first) of the nodes reachable from root. Fails on
/// dangling references or cycles.
template <typename Node>
std::vector<std::size_t> topological_order(const std::vector<Node>& nodes, node_ref root, std::size_t n) {
  std::vector<std::size_t> order;
  if (is_leaf(root)) return order;
  auto check = [&](node_ref r) {
    if (r != leaf0 && r != leaf1 && (r < 0 || static_cast<std::size_t>(r) >= nodes.size()))
      fail(error_kind::schema, "dangling node reference " + std::to_string(r));
  };
  check(root);
  for (const auto& node : nodes)
    if (node.var < 1 || node.var > n)
      fail(error_kind::schema, "node tests feature " + std::to_string(node.var) + " outside 1.." + std::to_string(n));
  enum : std::uint8_t { white, gray, black };
  std::vector<std::uint8_t> color(nodes.size(), white);
  std::vector<std::pair<std::size_t, int>> stack{{static_cast<std::size_t>(root), 0}};
  color[root] = gray;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    if (next == 2) {
      color[id] = black;
      order.push_back(id);
      stack.pop_back();
      continue;
    }
    const node_ref child = next == 0 ? nodes[id].low : nodes[id].high;
    ++next;
    check(child);
    if (is_leaf(child)) continue;
    if (color[child] == gray) fail(error_kind::schema, "decision diagram contains a cycle");
    if (color[child] == white) {
      color[child] = gray;
      stack.emplace_back(static_cast<std::size_t>(child), 0);
    }
  }
  return order;
}

/// Renumbers the reachable nodes children-first.
template <typename Node>
std::pair<std::vector<Node>, node_ref> compact(const std::vector<Node>& nodes, node_ref root, std::size_t n) {
  const auto order = topological_order(nodes, root, n);
  std::vector<node_ref> remap(nodes.size(), leaf0);
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<node_ref>(i);
  auto map_ref = [&](node_ref r) { return is_leaf(r) ? r : remap[r]; };
  std::vector<Node> out;
  out.reserve(order.size());
  for (auto id : order) {
    Node node = nodes[id];
    node.low = map_ref(node.low);
    node.high = map_ref(node.high);
    out.push_back(node);
  }
  return {std::move(out), map_ref(root)};
}

/// For children-first nodes: features tested at or below each node; fails
/// (returns false) as soon as some node's feature reappears below it.
template <typename Node, typename Filter>
bool read_once_below(const std::vector<Node>& nodes, std::size_t n, Filter include, std::vector<var_set>* below_out) {
  std::vector<var_set> below(nodes.size(), var_set(n));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    for (node_ref child : {node.low, node.high})
      if (!is_leaf(child)) below[i].merge(below[child]);
    if (!include(node)) continue;
    if (below[i].contains(node.var)) return false;
    below[i].insert(node.var);
  }
  if (below_out) *below_out = std::move(below);
  return true;
}

template <typename Node>
bool evaluate_diagram(const std::vector<Node>& nodes, node_ref root, std::span<const std::uint8_t> bits) {
  node_ref r = root;
  while (!is_leaf(r)) {
    const auto& node = nodes[r];
    r = bits[node.var - 1] ? node.high : node.low;
  }
  return r == leaf1;
}

/// Hash-consing node table used when emitting a new diagram.
class fbdd_builder {
public:
  explicit fbdd_builder(std::size_t n) : n_(n) {}

  node_ref make(std::size_t var, node_ref low, node_ref high) {
    if (low == high) return low;
    const key k{var, low, high};
    if (auto it = unique_.find(k); it != unique_.end()) return it->second;
    const auto id = static_cast<node_ref>(nodes_.size());
    nodes_.push_back({var, low, high});
    unique_.emplace(k, id);
    return id;
  }

  fbdd finish(node_ref root) && { return fbdd(n_, std::move(nodes_), root); }

private:
  struct key {
    std::size_t var;
    node_ref low, high;
    bool operator==(const key&) const = default;
  };
  struct key_hash {
    std::size_t operator()(const key& k) const {
      std::size_t h = k.var;
      h = h * 1000003u ^ static_cast<std::uint32_t>(k.low);
      h = h * 1000003u ^ static_cast<std::uint32_t>(k.high);
      return h;
    }
  };

  std::size_t n_;
  std::vector<fbdd_node> nodes_;
  std::unordered_map<key, node_ref, key_hash> unique_;
};

}  // namespace

fbdd::fbdd(std::size_t n, std::vector<fbdd_node> nodes, node_ref root) : n_(n) {
  if (n == 0) fail(error_kind::schema, "diagram arity must be positive");
  std::tie(nodes_, root_) = compact(nodes, root, n);
  if (!read_once_below(nodes_, n_, [](const fbdd_node&) { return true; }, nullptr))
    fail(error_kind::schema, "diagram is not read-once: a feature repeats on some path");
}

fbdd fbdd::constant(std::size_t n, bool value) { return fbdd(n, {}, leaf_of(value)); }

bool fbdd::evaluate(std::span<const std::uint8_t> bits) const { return evaluate_diagram(nodes_, root_, bits); }

raw_diagram::raw_diagram(std::size_t n, std::vector<raw_node> nodes, node_ref root) : n_(n) {
  if (n == 0) fail(error_kind::schema, "diagram arity must be positive");
  std::tie(nodes_, root_) = compact(nodes, root, n);
  for (const auto& node : nodes_)
    if (node.phase == diagram_phase::suffix)
      for (node_ref child : {node.low, node.high})
        if (!is_leaf(child) && nodes_[child].phase == diagram_phase::prefix)
          fail(error_kind::schema, "raw diagram is not two-phase: suffix node leads back into the prefix");
  const bool prefix_ok =
      read_once_below(nodes_, n_, [](const raw_node& v) { return v.phase == diagram_phase::prefix; }, nullptr);
  const bool suffix_ok =
      read_once_below(nodes_, n_, [](const raw_node& v) { return v.phase == diagram_phase::suffix; }, nullptr);
  if (!prefix_ok || !suffix_ok) fail(error_kind::schema, "raw diagram phase repeats a feature on some path");
}

bool raw_diagram::evaluate(std::span<const std::uint8_t> bits) const { return evaluate_diagram(nodes_, root_, bits); }

bool raw_diagram::is_read_once() const {
  return read_once_below(nodes_, n_, [](const raw_node&) { return true; }, nullptr);
}

bool fbdd_evaluate(const fbdd& f, const bit_vector& x) {
  require_same_arity(f.arity(), x.size(), "fbdd_evaluate");
  return f.evaluate(x.bits());
}

fbdd fbdd_negate(const fbdd& f) {
  auto swap_leaf = [](node_ref r) { return r == leaf0 ? leaf1 : r == leaf1 ? leaf0 : r; };
  std::vector<fbdd_node> nodes = f.nodes();
  for (auto& node : nodes) {
    node.low = swap_leaf(node.low);
    node.high = swap_leaf(node.high);
  }
  return fbdd(f.arity(), std::move(nodes), swap_leaf(f.root()));
}

fbdd fbdd_indicator(const bit_vector& x) {
  const std::size_t n = x.size();
  if (n == 0) fail(error_kind::invalid_argument, "indicator of an empty vector");
  std::vector<fbdd_node> nodes;
  nodes.reserve(n);
  node_ref next = leaf1;
  for (std::size_t i = n; i >= 1; --i) {
    fbdd_node node{i, leaf0, leaf0};
    (x[i] ? node.high : node.low) = next;
    nodes.push_back(node);
    next = static_cast<node_ref>(nodes.size() - 1);
  }
  return fbdd(n, std::move(nodes), next);
}

fbdd fbdd_constant_one(std::size_t n) { return fbdd::constant(n, true); }

namespace {

/// ft's nodes as prefix, fs's as suffix, with ft edges into `replaced` sent to
/// the root of fs.
raw_diagram splice_diagrams(const fbdd& ft, const fbdd& fs, node_ref replaced) {
  require_same_arity(ft.arity(), fs.arity(), "fbdd composition");
  const auto offset = static_cast<node_ref>(fs.nodes().size());
  std::vector<raw_node> nodes;
  nodes.reserve(fs.nodes().size() + ft.nodes().size());
  for (const auto& node : fs.nodes()) nodes.push_back({node.var, node.low, node.high, diagram_phase::suffix});
  const node_ref fs_root = fs.root();
  auto map_ref = [&](node_ref r) { return r == replaced ? fs_root : is_leaf(r) ? r : r + offset; };
  for (const auto& node : ft.nodes())
    nodes.push_back({node.var, map_ref(node.low), map_ref(node.high), diagram_phase::prefix});
  return raw_diagram(ft.arity(), std::move(nodes), map_ref(ft.root()));
}

}  // namespace

raw_diagram fbdd_and(const fbdd& ft, const fbdd& fs) { return splice_diagrams(ft, fs, leaf1); }

raw_diagram fbdd_implies(const fbdd& ft, const fbdd& fs) { return splice_diagrams(fbdd_negate(ft), fs, leaf0); }

fbdd fbdd_read_once_repair(const raw_diagram& raw) {
  const std::size_t n = raw.arity();
  const auto& nodes = raw.nodes();
  std::vector<var_set> suffix_below;
  read_once_below(nodes, n, [](const raw_node& v) { return v.phase == diagram_phase::suffix; }, &suffix_below);

  fbdd_builder builder(n);
  // key: node, then the prefix decisions restricted to suffix features still
  // reachable (domain words followed by value words)
  std::map<std::pair<node_ref, std::vector<word>>, node_ref> memo;
  const std::size_t width = (n + 63) / 64;

  auto repair = [&](auto&& self, node_ref r, const var_set& dom, const var_set& val) -> node_ref {
    if (is_leaf(r)) return r;
    const auto& node = nodes[r];
    const auto& relevant = suffix_below[r].words;
    std::vector<word> key(2 * width);
    for (std::size_t i = 0; i < width; ++i) {
      key[i] = dom.words[i] & relevant[i];
      key[width + i] = val.words[i] & key[i];
    }
    auto memo_key = std::make_pair(r, std::move(key));
    if (auto it = memo.find(memo_key); it != memo.end()) return it->second;

    node_ref out;
    if (node.phase == diagram_phase::suffix && dom.contains(node.var)) {
      out = self(self, val.contains(node.var) ? node.high : node.low, dom, val);
    } else if (node.phase == diagram_phase::prefix) {
      var_set dom2 = dom;
      dom2.insert(node.var);
      var_set val_low = val;
      var_set val_high = val;
      val_high.insert(node.var);
      const node_ref lo = self(self, node.low, dom2, val_low);
      const node_ref hi = self(self, node.high, dom2, val_high);
      out = builder.make(node.var, lo, hi);
    } else {
      const node_ref lo = self(self, node.low, dom, val);
      const node_ref hi = self(self, node.high, dom, val);
      out = builder.make(node.var, lo, hi);
    }
    memo.emplace(std::move(memo_key), out);
    return out;
  };
  const node_ref root = repair(repair, raw.root(), var_set(n), var_set(n));
  return std::move(builder).finish(root);
}

namespace {

constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max() / 4;

/// Minimum number of features of x that must change for a path to reach
/// `target`, with some features pinned (-1 = free). Pinned features count
/// toward the total whether or not the path tests them.
std::size_t pinned_distance(const fbdd& f, const bit_vector& x, const std::vector<std::int8_t>& pin, node_ref target) {
  const auto& nodes = f.nodes();
  std::vector<std::size_t> cost(nodes.size(), unreachable);
  auto leaf_cost = [&](node_ref r) { return r == target ? std::size_t{0} : unreachable; };
  auto at = [&](node_ref r) { return is_leaf(r) ? leaf_cost(r) : cost[r]; };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    const auto v = node.var;
    for (int b = 0; b < 2; ++b) {
      if (pin[v - 1] >= 0 && pin[v - 1] != b) continue;
      const std::size_t child = at(b ? node.high : node.low);
      if (child >= unreachable) continue;
      const std::size_t edge = (pin[v - 1] < 0 && b != static_cast<int>(x[v])) ? 1 : 0;
      cost[i] = std::min(cost[i], child + edge);
    }
  }
  std::size_t total = at(f.root());
  if (total >= unreachable) return unreachable;
  for (std::size_t i = 1; i <= x.size(); ++i)
    if (pin[i - 1] >= 0 && pin[i - 1] != static_cast<int>(x[i])) ++total;
  return total;
}

}  // namespace

std::optional<min_change> fbdd_min_change_misaligned(const fbdd& f, const bit_vector& x) {
  require_same_arity(f.arity(), x.size(), "fbdd_min_change_misaligned");
  const std::size_t n = x.size();
  const node_ref target = leaf_of(!f.evaluate(x.bits()));
  std::vector<std::int8_t> pin(n, -1);
  const std::size_t best = pinned_distance(f, x, pin, target);
  if (best >= unreachable) return std::nullopt;
  // prefer changing the lowest-indexed features: yields the lexicographically
  // smallest minimum witness
  std::vector<std::size_t> witness;
  for (std::size_t i = 1; i <= n && witness.size() < best; ++i) {
    pin[i - 1] = static_cast<std::int8_t>(!x[i]);
    if (pinned_distance(f, x, pin, target) == best) {
      witness.push_back(i);
    } else {
      pin[i - 1] = static_cast<std::int8_t>(x[i]);
    }
  }
  return min_change{best, feature_subset(n, std::move(witness))};
}

integer fbdd_count_completions_misaligned(const fbdd& f, const bit_vector& x, const feature_subset& s) {
  require_same_arity(f.arity(), x.size(), "fbdd_count_completions_misaligned");
  require_same_arity(f.arity(), s.arity(), "fbdd_count_completions_misaligned");
  const node_ref target = leaf_of(!f.evaluate(x.bits()));
  const integer full = integer(1) << s.size();
  const auto& nodes = f.nodes();
  // count[i] = 2^|s| * (fraction of assignments to s that reach target);
  // integral because a free feature is never tested twice on a path
  std::vector<integer> count(nodes.size());
  auto at = [&](node_ref r) -> integer { return is_leaf(r) ? (r == target ? full : integer(0)) : count[r]; };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    if (s.contains(node.var)) {
      count[i] = (at(node.low) + at(node.high)) >> 1;
    } else {
      count[i] = at(x[node.var] ? node.high : node.low);
    }
  }
  return at(f.root());
}

}  // namespace axai
