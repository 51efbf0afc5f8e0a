#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "barcode.hpp"

namespace treecode {

struct RawMergeTreeNode {
  std::optional<std::string> parent;  // absent on the root
  std::optional<double> height;       // absent on the root (treated as +inf)
};

struct RawMergeTree {
  std::string root;
  std::map<std::string, RawMergeTreeNode> nodes;
};

// Validated generic merge tree: one root of height +inf with a unique child,
// every other internal node binary, heights strictly increasing toward the
// root, all finite heights pairwise distinct.
class MergeTree {
 public:
  struct Node {
    std::string id;
    int parent = -1;               // -1 on the root
    std::optional<double> height;  // nullopt on the root
    std::vector<int> children;
  };

  static MergeTree validate(const RawMergeTree& raw) {
    if (raw.nodes.empty()) throw std::invalid_argument("merge tree: no nodes");
    MergeTree t;
    t.nodes_.reserve(raw.nodes.size());
    std::map<std::string, int> index;
    for (const auto& [id, raw_node] : raw.nodes) {
      index[id] = static_cast<int>(t.nodes_.size());
      Node node;
      node.id = id;
      node.height = raw_node.height;
      t.nodes_.push_back(std::move(node));
    }
    const auto root_it = index.find(raw.root);
    if (root_it == index.end())
      throw std::invalid_argument("merge tree: root id '" + raw.root + "' is not a node");
    t.root_ = root_it->second;

    int parentless = 0;
    for (const auto& [id, raw_node] : raw.nodes) {
      const int idx = index[id];
      if (!raw_node.parent.has_value()) {
        ++parentless;
        if (idx != t.root_)
          throw std::invalid_argument("merge tree: multiple roots ('" + id + "' also has no parent)");
        if (raw_node.height.has_value())
          throw std::invalid_argument("merge tree: the root must have no height (null)");
        continue;
      }
      const auto parent_it = index.find(*raw_node.parent);
      if (parent_it == index.end())
        throw std::invalid_argument("merge tree: unknown parent '" + *raw_node.parent +
                                    "' of node '" + id + "'");
      if (idx == t.root_)
        throw std::invalid_argument("merge tree: the root must have no parent");
      if (!raw_node.height.has_value())
        throw std::invalid_argument("merge tree: non-root node '" + id + "' needs a height");
      t.nodes_[static_cast<std::size_t>(idx)].parent = parent_it->second;
      t.nodes_[static_cast<std::size_t>(parent_it->second)].children.push_back(idx);
    }
    if (parentless == 0) throw std::invalid_argument("merge tree: no root (every node has a parent)");

    // N-1 parent edges: a node unreachable from the root means a parent cycle.
    std::vector<char> seen(t.nodes_.size(), 0);
    std::vector<int> stack{t.root_};
    seen[static_cast<std::size_t>(t.root_)] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int c : t.nodes_[static_cast<std::size_t>(v)].children) {
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = 1;
          ++reached;
          stack.push_back(c);
        }
      }
    }
    if (reached != t.nodes_.size())
      throw std::invalid_argument("merge tree: cycle detected among parent links");

    for (const Node& node : t.nodes_) {
      const int degree = static_cast<int>(node.children.size());
      if (node.parent == -1) {
        if (degree != 1)
          throw std::invalid_argument("merge tree: the root must have exactly one child");
      } else if (degree != 0 && degree != 2) {
        throw std::invalid_argument("merge tree: node '" + node.id +
                                    "' must have zero or two children");
      }
    }

    for (const Node& node : t.nodes_) {
      if (node.parent == -1) continue;
      const Node& parent = t.nodes_[static_cast<std::size_t>(node.parent)];
      if (parent.height.has_value() && !(*node.height < *parent.height))
        throw std::invalid_argument("merge tree: height inversion along edge '" + node.id +
                                    "' -> '" + parent.id + "'");
    }

    std::vector<double> heights;
    heights.reserve(t.nodes_.size());
    for (const Node& node : t.nodes_)
      if (node.height.has_value()) heights.push_back(*node.height);
    std::sort(heights.begin(), heights.end());
    if (std::adjacent_find(heights.begin(), heights.end()) != heights.end())
      throw std::invalid_argument("merge tree: duplicate finite heights (non-generic)");

    return t;
  }

  int root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int idx) const { return nodes_.at(static_cast<std::size_t>(idx)); }
  const std::vector<Node>& nodes() const { return nodes_; }

  int index_of(const std::string& id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].id == id) return static_cast<int>(i);
    return -1;
  }

  int leaf_count() const {
    int count = 0;
    for (const Node& node : nodes_)
      if (node.children.empty()) ++count;
    return count;
  }

  // A tree with n+1 leaves yields n finite bars.
  int n() const { return leaf_count() - 1; }

  // Leaf indices in birth order (increasing height).
  std::vector<int> leaves_by_height() const {
    std::vector<int> leaves;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].children.empty()) leaves.push_back(static_cast<int>(i));
    sort_by_height(leaves);
    return leaves;
  }

  // Non-root internal indices in death order (increasing height).
  std::vector<int> internals_by_height() const {
    std::vector<int> internals;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!nodes_[i].children.empty() && static_cast<int>(i) != root_)
        internals.push_back(static_cast<int>(i));
    sort_by_height(internals);
    return internals;
  }

 private:
  MergeTree() = default;

  void sort_by_height(std::vector<int>& idx) const {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return *nodes_[static_cast<std::size_t>(a)].height < *nodes_[static_cast<std::size_t>(b)].height;
    });
  }

  std::vector<Node> nodes_;
  int root_ = -1;
};

namespace detail {

// Union-find with path halving; carries the elder (minimum-height) leaf of
// each component.
class ElderUnionFind {
 public:
  explicit ElderUnionFind(int n) : parent_(static_cast<std::size_t>(n)), elder_(static_cast<std::size_t>(n), -1) {
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }

  int elder(int root) const { return elder_[static_cast<std::size_t>(root)]; }
  void set_elder(int root, int leaf) { elder_[static_cast<std::size_t>(root)] = leaf; }

  // Returns the new root.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    parent_[static_cast<std::size_t>(b)] = a;
    return a;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> elder_;
};

}  // namespace detail

// Elder rule: every leaf opens a bar at its height; at each merge the bar of
// the younger elder dies; the oldest leaf's bar is essential. Single sweep
// over nodes in increasing height with union-find.
inline StrictBarcode elder_rule(const MergeTree& t) {
  const std::vector<int> leaves = t.leaves_by_height();
  const std::vector<int> internals = t.internals_by_height();

  detail::ElderUnionFind uf(t.node_count());
  for (int leaf : leaves) uf.set_elder(leaf, leaf);

  const auto height = [&](int idx) { return *t.node(idx).height; };

  std::vector<Bar> bars;
  bars.reserve(internals.size());
  for (int v : internals) {
    const std::vector<int>& children = t.node(v).children;
    const int ra = uf.find(children[0]);
    const int rb = uf.find(children[1]);
    int elder = uf.elder(ra), younger = uf.elder(rb);
    if (height(younger) < height(elder)) std::swap(elder, younger);
    bars.push_back(Bar{height(younger), height(v)});
    const int merged = uf.unite(ra, rb);
    uf.unite(merged, v);  // v joins its own component; the root stays `merged`
    uf.set_elder(merged, elder);
  }
  return StrictBarcode(height(leaves.front()), std::move(bars));
}

// Canonical witness of the combinatorial class: leaves ranked by birth,
// internal nodes by death, parent map rewritten in those ranks. Two trees
// are combinatorially equivalent exactly when their codes agree; the id
// sequences are a witness of the ranking and excluded from comparison.
struct ComboClassWitness {
  std::vector<std::string> birth_order;  // leaf ids, increasing height
  std::vector<std::string> death_order;  // non-root internal ids, increasing height
  std::vector<int> code;  // canonical parent of canonical node k; the root is index 2n+1

  friend bool operator==(const ComboClassWitness& a, const ComboClassWitness& b) {
    return a.code == b.code;
  }
  friend std::strong_ordering operator<=>(const ComboClassWitness& a, const ComboClassWitness& b) {
    return a.code <=> b.code;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < code.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(code[i]);
    }
    return out;
  }
};

inline ComboClassWitness canonical_code(const MergeTree& t) {
  const std::vector<int> leaves = t.leaves_by_height();
  const std::vector<int> internals = t.internals_by_height();
  const int n = static_cast<int>(leaves.size()) - 1;

  std::vector<int> canon(static_cast<std::size_t>(t.node_count()), -1);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    canon[static_cast<std::size_t>(leaves[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < internals.size(); ++i)
    canon[static_cast<std::size_t>(internals[i])] = n + 1 + static_cast<int>(i);
  canon[static_cast<std::size_t>(t.root())] = 2 * n + 1;

  ComboClassWitness w;
  for (int leaf : leaves) w.birth_order.push_back(t.node(leaf).id);
  for (int internal : internals) w.death_order.push_back(t.node(internal).id);
  w.code.assign(static_cast<std::size_t>(2 * n + 1), -1);
  for (int idx = 0; idx < t.node_count(); ++idx) {
    if (idx == t.root()) continue;
    w.code[static_cast<std::size_t>(canon[static_cast<std::size_t>(idx)])] =
        canon[static_cast<std::size_t>(t.node(idx).parent)];
  }
  return w;
}

inline bool combinatorially_equivalent(const MergeTree& a, const MergeTree& b) {
  return canonical_code(a) == canonical_code(b);
}

// Heights replaced by ranks: leaves onto {0,...,n} by birth order, internal
// nodes onto {n+1,...,2n} by death order. Idempotent; preserves the class.
inline MergeTree standardize(const MergeTree& t) {
  const std::vector<int> leaves = t.leaves_by_height();
  const std::vector<int> internals = t.internals_by_height();
  const int n = static_cast<int>(leaves.size()) - 1;

  std::vector<double> new_height(static_cast<std::size_t>(t.node_count()), 0.0);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    new_height[static_cast<std::size_t>(leaves[i])] = static_cast<double>(i);
  for (std::size_t i = 0; i < internals.size(); ++i)
    new_height[static_cast<std::size_t>(internals[i])] = static_cast<double>(n + 1 + static_cast<int>(i));

  RawMergeTree raw;
  raw.root = t.node(t.root()).id;
  for (int idx = 0; idx < t.node_count(); ++idx) {
    const MergeTree::Node& node = t.node(idx);
    RawMergeTreeNode raw_node;
    if (node.parent != -1) {
      raw_node.parent = t.node(node.parent).id;
      raw_node.height = new_height[static_cast<std::size_t>(idx)];
    }
    raw.nodes[node.id] = std::move(raw_node);
  }
  return MergeTree::validate(raw);
}

// {"root": "r", "nodes": {"r": {"parent": null, "height": null}, ...}}
inline nlohmann::json merge_tree_to_json(const MergeTree& t) {
  nlohmann::json nodes = nlohmann::json::object();
  for (const MergeTree::Node& node : t.nodes()) {
    nlohmann::json entry;
    entry["parent"] = node.parent == -1 ? nlohmann::json(nullptr)
                                        : nlohmann::json(t.node(node.parent).id);
    entry["height"] = node.height.has_value() ? nlohmann::json(*node.height)
                                              : nlohmann::json(nullptr);
    nodes[node.id] = std::move(entry);
  }
  return nlohmann::json{{"root", t.node(t.root()).id}, {"nodes", nodes}};
}

inline MergeTree merge_tree_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("merge tree: expected a JSON object");
  RawMergeTree raw;
  raw.root = j.at("root").get<std::string>();
  for (const auto& [id, entry] : j.at("nodes").items()) {
    RawMergeTreeNode node;
    const nlohmann::json& parent = entry.at("parent");
    if (!parent.is_null()) node.parent = parent.get<std::string>();
    const nlohmann::json& height = entry.at("height");
    if (!height.is_null()) node.height = height.get<double>();
    raw.nodes[id] = std::move(node);
  }
  return MergeTree::validate(raw);
}

}  // namespace treecode
