#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "merge_tree.hpp"

namespace treecode {

// Rooted binary tree whose root has a unique child and whose leaves carry
// distinct labels. Edge weights (to the parent), when present on every
// non-root node, make it a metric phylogenetic tree.
class PhyloTree {
 public:
  struct Node {
    std::string name;              // leaf label; optional on internal nodes
    int parent = -1;               // -1 on the root
    std::optional<double> weight;  // edge weight to the parent
    std::vector<int> children;
  };

  PhyloTree(std::vector<Node> nodes, int root) : nodes_(std::move(nodes)), root_(root) {
    if (nodes_.empty() || root_ < 0 || root_ >= static_cast<int>(nodes_.size()))
      throw std::invalid_argument("phylo tree: bad root index");
    for (Node& node : nodes_) node.children.clear();
    int parentless = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const int parent = nodes_[i].parent;
      if (parent == -1) {
        ++parentless;
        continue;
      }
      if (parent < 0 || parent >= static_cast<int>(nodes_.size()))
        throw std::invalid_argument("phylo tree: bad parent index");
      nodes_[static_cast<std::size_t>(parent)].children.push_back(static_cast<int>(i));
    }
    if (parentless != 1 || nodes_[static_cast<std::size_t>(root_)].parent != -1)
      throw std::invalid_argument("phylo tree: exactly one root expected");

    std::vector<char> seen(nodes_.size(), 0);
    std::vector<int> stack{root_};
    seen[static_cast<std::size_t>(root_)] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int c : nodes_[static_cast<std::size_t>(v)].children) {
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = 1;
          ++reached;
          stack.push_back(c);
        }
      }
    }
    if (reached != nodes_.size()) throw std::invalid_argument("phylo tree: cycle in parent links");

    if (nodes_[static_cast<std::size_t>(root_)].children.size() != 1)
      throw std::invalid_argument("phylo tree: the root must have exactly one child");
    std::set<std::string> labels;
    int weighted = 0, non_root = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& node = nodes_[i];
      if (static_cast<int>(i) != root_) {
        ++non_root;
        if (node.weight.has_value()) {
          if (*node.weight < 0) throw std::invalid_argument("phylo tree: negative edge weight");
          ++weighted;
        }
      } else if (node.weight.has_value()) {
        throw std::invalid_argument("phylo tree: the root has no parent edge");
      }
      if (node.children.empty()) {
        if (node.name.empty()) throw std::invalid_argument("phylo tree: unlabelled leaf");
        if (!labels.insert(node.name).second)
          throw std::invalid_argument("phylo tree: duplicate leaf label '" + node.name + "'");
      } else if (static_cast<int>(i) != root_ && node.children.size() != 2) {
        throw std::invalid_argument("phylo tree: internal nodes must be binary");
      }
    }
    if (weighted != 0 && weighted != non_root)
      throw std::invalid_argument("phylo tree: edge weights must be on all non-root nodes or none");
    metric_ = weighted == non_root && non_root > 0;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int idx) const { return nodes_.at(static_cast<std::size_t>(idx)); }
  int root() const { return root_; }
  int root_child() const { return nodes_[static_cast<std::size_t>(root_)].children[0]; }
  bool is_metric() const { return metric_; }

  int leaf_count() const {
    int count = 0;
    for (const Node& node : nodes_)
      if (node.children.empty()) ++count;
    return count;
  }

  // Non-root internal node indices.
  std::vector<int> internal_nodes() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!nodes_[i].children.empty() && static_cast<int>(i) != root_)
        out.push_back(static_cast<int>(i));
    return out;
  }

  static PhyloTree parse_newick(const std::string& text);
  std::string to_newick() const;

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
  bool metric_ = false;
};

namespace detail {

inline std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

struct NewickParser {
  const std::string& text;
  std::size_t pos = 0;
  std::vector<PhyloTree::Node> nodes;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool is_name_char(char c) const {
    return c != '(' && c != ')' && c != ',' && c != ':' && c != ';' && c != '[' && c != ']' &&
           !std::isspace(static_cast<unsigned char>(c));
  }

  std::string parse_name() {
    std::string name;
    while (pos < text.size() && is_name_char(text[pos])) name += text[pos++];
    return name;
  }

  double parse_length() {
    skip_space();
    double value = 0;
    const auto result = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (result.ec != std::errc())
      throw std::invalid_argument("newick: bad branch length at offset " + std::to_string(pos));
    pos = static_cast<std::size_t>(result.ptr - text.data());
    return value;
  }

  // Returns the new node's index; `is_root` suppresses storing the length
  // (a trailing length on the root is tolerated and discarded).
  int parse_node(bool is_root) {
    skip_space();
    const int idx = static_cast<int>(nodes.size());
    nodes.emplace_back();
    std::vector<int> children;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      while (true) {
        children.push_back(parse_node(false));
        skip_space();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      if (pos >= text.size() || text[pos] != ')')
        throw std::invalid_argument("newick: expected ')' at offset " + std::to_string(pos));
      ++pos;
      skip_space();
    }
    nodes[static_cast<std::size_t>(idx)].name = parse_name();
    skip_space();
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      const double length = parse_length();
      if (!is_root) nodes[static_cast<std::size_t>(idx)].weight = length;
    }
    for (int c : children) nodes[static_cast<std::size_t>(c)].parent = idx;
    return idx;
  }
};

}  // namespace detail

// Accepts e.g. "((A:1.0,B:2.0):1.0)R;", names on internal nodes optional.
inline PhyloTree PhyloTree::parse_newick(const std::string& text) {
  detail::NewickParser parser{text};
  const int root = parser.parse_node(true);
  parser.skip_space();
  if (parser.pos < text.size() && text[parser.pos] == ';') ++parser.pos;
  parser.skip_space();
  if (parser.pos != text.size())
    throw std::invalid_argument("newick: trailing input at offset " + std::to_string(parser.pos));
  return PhyloTree(std::move(parser.nodes), root);
}

inline std::string PhyloTree::to_newick() const {
  const std::function<std::string(int)> render = [&](int idx) {
    const Node& node = nodes_[static_cast<std::size_t>(idx)];
    std::string out;
    if (!node.children.empty()) {
      out += '(';
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += ',';
        out += render(node.children[i]);
      }
      out += ')';
    }
    out += node.name;
    if (node.weight.has_value()) out += ':' + detail::format_double(*node.weight);
    return out;
  };
  return render(root_) + ";";
}

// (2n-1)!! combinatorial phylogenetic trees with n+1 leaves.
inline BigInt count_phylo_classes(int leaves) {
  if (leaves < 2) throw std::invalid_argument("count_phylo_classes: need at least 2 leaves");
  return double_factorial(2 * static_cast<unsigned long>(leaves - 1) - 1);
}

// eta(T) >= prod_j |A_j|!, where A_j holds the internal nodes j hops from
// the root's child c (A_0 = {c}).
inline BigInt eta_lower_bound(const PhyloTree& p) {
  const std::vector<int> internals = p.internal_nodes();
  if (internals.empty()) return 1;
  std::map<int, int> level_sizes;
  std::vector<std::pair<int, int>> frontier{{p.root_child(), 0}};
  while (!frontier.empty()) {
    const auto [v, level] = frontier.back();
    frontier.pop_back();
    ++level_sizes[level];
    for (int c : p.node(v).children)
      if (!p.node(c).children.empty()) frontier.emplace_back(c, level + 1);
  }
  BigInt result = 1;
  for (const auto& [level, size] : level_sizes) result *= factorial(static_cast<unsigned long>(size));
  return result;
}

inline constexpr int kEtaBruteForceMaxInternal = 20;

// Exact eta(T): the number of total orders on the internal nodes extending
// the ancestor partial order (children die before parents). Each such order
// is one combinatorial merge-tree class indistinguishable from T. Counted by
// dynamic programming over descendant-closed subsets.
inline BigInt eta_brute_force(const PhyloTree& p) {
  const std::vector<int> internals = p.internal_nodes();
  const int k = static_cast<int>(internals.size());
  if (k > kEtaBruteForceMaxInternal)
    throw std::invalid_argument("eta_brute_force: size guard exceeded (" + std::to_string(k) +
                                " internal nodes, limit " +
                                std::to_string(kEtaBruteForceMaxInternal) + ")");
  if (k == 0) return 1;
  std::map<int, int> internal_index;
  for (int i = 0; i < k; ++i) internal_index[internals[static_cast<std::size_t>(i)]] = i;
  // parent_mask[i]: bit of i's internal parent, 0 for the root's child.
  std::vector<std::uint32_t> parent_mask(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    const int parent = p.node(internals[static_cast<std::size_t>(i)]).parent;
    if (parent != p.root()) parent_mask[static_cast<std::size_t>(i)] = 1u << internal_index.at(parent);
  }
  std::unordered_map<std::uint32_t, BigInt> memo;
  const std::function<BigInt(std::uint32_t)> count = [&](std::uint32_t placed) -> BigInt {
    if (placed == 0) return 1;
    const auto it = memo.find(placed);
    if (it != memo.end()) return it->second;
    BigInt total = 0;
    for (int i = 0; i < k; ++i) {
      const std::uint32_t bit = 1u << i;
      // i can be the latest death among `placed` iff its parent is not placed.
      if ((placed & bit) && !(placed & parent_mask[static_cast<std::size_t>(i)]))
        total += count(placed & ~bit);
    }
    memo.emplace(placed, total);
    return total;
  };
  return count((1u << k) - 1u);
}

// All leaf-labelled rooted binary shapes (root with a unique child) on
// labels "0",...,"leaves-1"; there are (2*leaves-3)!! of them. Splits keep
// the smallest label on the left, so each shape appears exactly once.
inline std::vector<PhyloTree> enumerate_phylo_trees(int leaves) {
  if (leaves < 1) throw std::invalid_argument("enumerate_phylo_trees: need at least 1 leaf");
  struct Shape {
    int label = -1;  // leaf label, or -1 for internal
    std::shared_ptr<const Shape> left, right;
  };
  using ShapePtr = std::shared_ptr<const Shape>;
  const std::function<std::vector<ShapePtr>(const std::vector<int>&)> build =
      [&](const std::vector<int>& labels) -> std::vector<ShapePtr> {
    if (labels.size() == 1) return {std::make_shared<Shape>(Shape{labels[0], nullptr, nullptr})};
    std::vector<ShapePtr> out;
    const std::vector<int> rest(labels.begin() + 1, labels.end());
    const std::size_t subsets = static_cast<std::size_t>(1) << rest.size();
    for (std::size_t mask = 0; mask + 1 < subsets; ++mask) {
      std::vector<int> left_labels{labels[0]};
      std::vector<int> right_labels;
      for (std::size_t i = 0; i < rest.size(); ++i)
        ((mask >> i) & 1 ? left_labels : right_labels).push_back(rest[i]);
      for (const ShapePtr& left : build(left_labels))
        for (const ShapePtr& right : build(right_labels))
          out.push_back(std::make_shared<Shape>(Shape{-1, left, right}));
    }
    return out;
  };
  std::vector<int> labels(static_cast<std::size_t>(leaves));
  for (int i = 0; i < leaves; ++i) labels[static_cast<std::size_t>(i)] = i;

  std::vector<PhyloTree> trees;
  for (const ShapePtr& shape : build(labels)) {
    std::vector<PhyloTree::Node> nodes;
    nodes.emplace_back();  // root
    const std::function<int(const ShapePtr&, int)> materialize = [&](const ShapePtr& s,
                                                                     int parent) -> int {
      const int idx = static_cast<int>(nodes.size());
      nodes.emplace_back();
      nodes[static_cast<std::size_t>(idx)].parent = parent;
      if (s->label >= 0) {
        nodes[static_cast<std::size_t>(idx)].name = std::to_string(s->label);
      } else {
        materialize(s->left, idx);
        materialize(s->right, idx);
      }
      return idx;
    };
    materialize(shape, 0);
    trees.emplace_back(std::move(nodes), 0);
  }
  return trees;
}

// Heights from root distance: h(v) = delta - d(root, v); leaf labels become
// the merge-tree leaf ids. Requires a metric tree; non-generic distances are
// rejected by merge-tree validation.
inline MergeTree h_delta(const PhyloTree& p, double delta) {
  if (!p.is_metric()) throw std::invalid_argument("h_delta: edge weights are required");
  std::vector<double> depth(p.nodes().size(), 0.0);
  std::vector<int> order{p.root()};
  for (std::size_t next = 0; next < order.size(); ++next) {
    const int v = order[next];
    for (int c : p.node(v).children) {
      depth[static_cast<std::size_t>(c)] = depth[static_cast<std::size_t>(v)] + *p.node(c).weight;
      order.push_back(c);
    }
  }
  RawMergeTree raw;
  std::vector<std::string> id_of(p.nodes().size());
  const auto claim = [&raw](std::string id) {
    while (raw.nodes.count(id)) id += '_';
    return id;
  };
  int synth = 0;
  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    const PhyloTree::Node& node = p.nodes()[i];
    std::string id;
    if (static_cast<int>(i) == p.root())
      id = claim(node.name.empty() ? "r" : node.name);
    else if (node.children.empty())
      id = claim(node.name);
    else
      id = claim(node.name.empty() ? "i" + std::to_string(synth++) : node.name);
    raw.nodes[id] = RawMergeTreeNode{};
    id_of[i] = id;
  }
  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    const PhyloTree::Node& node = p.nodes()[i];
    if (static_cast<int>(i) == p.root()) continue;
    raw.nodes[id_of[i]].parent = id_of[static_cast<std::size_t>(node.parent)];
    raw.nodes[id_of[i]].height = delta - depth[i];
  }
  raw.root = id_of[static_cast<std::size_t>(p.root())];
  return MergeTree::validate(raw);
}

// Metric phylogenetic tree with leaves labelled by birth rank ("0".."n"),
// edge weights given by height differences, and root edge weight delta.
inline PhyloTree t_delta(const MergeTree& t, double delta) {
  if (delta < 0) throw std::invalid_argument("t_delta: delta must be non-negative");
  const std::vector<int> leaves = t.leaves_by_height();
  std::vector<int> birth_rank(static_cast<std::size_t>(t.node_count()), -1);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    birth_rank[static_cast<std::size_t>(leaves[i])] = static_cast<int>(i);

  std::vector<PhyloTree::Node> nodes(static_cast<std::size_t>(t.node_count()));
  for (int idx = 0; idx < t.node_count(); ++idx) {
    const MergeTree::Node& node = t.node(idx);
    PhyloTree::Node& out = nodes[static_cast<std::size_t>(idx)];
    out.parent = node.parent;
    if (node.children.empty()) out.name = std::to_string(birth_rank[static_cast<std::size_t>(idx)]);
    if (node.parent == -1) continue;
    const MergeTree::Node& parent = t.node(node.parent);
    out.weight = parent.height.has_value() ? *parent.height - *node.height : delta;
  }
  return PhyloTree(std::move(nodes), t.root());
}

}  // namespace treecode
