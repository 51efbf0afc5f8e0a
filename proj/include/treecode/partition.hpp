#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "merge_tree.hpp"

namespace treecode {

// Partition of {0,...,n} into disjoint non-empty blocks, stored canonically:
// each block sorted, blocks ordered by minimum element.
class SetPartition {
 public:
  explicit SetPartition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
    int count = 0;
    for (std::vector<int>& block : blocks_) {
      if (block.empty()) throw std::invalid_argument("partition: empty block");
      std::sort(block.begin(), block.end());
      count += static_cast<int>(block.size());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
    std::vector<char> seen(static_cast<std::size_t>(count), 0);
    for (const std::vector<int>& block : blocks_) {
      for (int x : block) {
        if (x < 0 || x >= count || seen[static_cast<std::size_t>(x)])
          throw std::invalid_argument("partition: blocks must partition {0,...,n}");
        seen[static_cast<std::size_t>(x)] = 1;
      }
    }
    if (count == 0) throw std::invalid_argument("partition: no blocks");
  }

  static SetPartition finest(int n) {
    std::vector<std::vector<int>> blocks;
    for (int x = 0; x <= n; ++x) blocks.push_back({x});
    return SetPartition(std::move(blocks));
  }

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }

  // Ground set is {0,...,n}; returns n.
  int n() const {
    int count = 0;
    for (const std::vector<int>& block : blocks_) count += static_cast<int>(block.size());
    return count - 1;
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
    return a.blocks_ <=> b.blocks_;
  }

  // "0|1,2" for {0 | 12}.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) out += '|';
      for (std::size_t k = 0; k < blocks_[i].size(); ++k) {
        if (k) out += ',';
        out += std::to_string(blocks_[i][k]);
      }
    }
    return out;
  }

  static SetPartition parse(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::istringstream stream(text);
    std::string block_text;
    while (std::getline(stream, block_text, '|')) {
      std::vector<int> block;
      std::istringstream block_stream(block_text);
      std::string token;
      while (std::getline(block_stream, token, ',')) {
        try {
          std::size_t used = 0;
          const int value = std::stoi(token, &used);
          if (used != token.size()) throw std::invalid_argument(token);
          block.push_back(value);
        } catch (const std::exception&) {
          throw std::invalid_argument("partition: bad element '" + token + "'");
        }
      }
      blocks.push_back(std::move(block));
    }
    return SetPartition(std::move(blocks));
  }

 private:
  std::vector<std::vector<int>> blocks_;
};

// u refines v: every block of u lies inside some block of v.
inline bool refines(const SetPartition& u, const SetPartition& v) {
  if (u.n() != v.n()) throw std::invalid_argument("refines: ground sets differ");
  std::vector<int> block_of(static_cast<std::size_t>(v.n()) + 1);
  for (std::size_t b = 0; b < v.blocks().size(); ++b)
    for (int x : v.blocks()[b]) block_of[static_cast<std::size_t>(x)] = static_cast<int>(b);
  for (const std::vector<int>& block : u.blocks()) {
    const int target = block_of[static_cast<std::size_t>(block[0])];
    for (int x : block)
      if (block_of[static_cast<std::size_t>(x)] != target) return false;
  }
  return true;
}

// Bottom-to-top chain in the partition lattice where every step merges
// exactly two blocks; length n+1 over the ground set {0,...,n}.
class MaximalChain {
 public:
  explicit MaximalChain(std::vector<SetPartition> partitions) : partitions_(std::move(partitions)) {
    if (partitions_.empty()) throw std::invalid_argument("chain: empty");
    const int n = partitions_.front().n();
    if (partitions_.front() != SetPartition::finest(n))
      throw std::invalid_argument("chain: must start at the finest partition");
    if (partitions_.back().block_count() != 1)
      throw std::invalid_argument("chain: must end at the one-block partition");
    for (std::size_t i = 0; i + 1 < partitions_.size(); ++i) {
      if (partitions_[i + 1].block_count() != partitions_[i].block_count() - 1 ||
          !refines(partitions_[i], partitions_[i + 1]))
        throw std::invalid_argument("chain: step " + std::to_string(i + 1) +
                                    " must merge exactly two blocks");
    }
  }

  const std::vector<SetPartition>& partitions() const { return partitions_; }
  int n() const { return partitions_.front().n(); }

  friend bool operator==(const MaximalChain&, const MaximalChain&) = default;

 private:
  std::vector<SetPartition> partitions_;
};

// The i-th partition groups the leaf labels {0,...,n} by connected component
// of the sublevel set at height n+i. Input must be in standard form.
inline MaximalChain tree_to_chain(const MergeTree& t) {
  const std::vector<int> leaves = t.leaves_by_height();
  const std::vector<int> internals = t.internals_by_height();
  const int n = static_cast<int>(leaves.size()) - 1;
  for (int i = 0; i <= n; ++i)
    if (*t.node(leaves[static_cast<std::size_t>(i)]).height != static_cast<double>(i))
      throw std::invalid_argument("tree_to_chain: tree is not in standard form");
  for (int i = 0; i < n; ++i)
    if (*t.node(internals[static_cast<std::size_t>(i)]).height != static_cast<double>(n + 1 + i))
      throw std::invalid_argument("tree_to_chain: tree is not in standard form");

  // label(leaf) == its height; track one representative label per component.
  std::vector<int> label_of(static_cast<std::size_t>(t.node_count()), -1);
  for (int i = 0; i <= n; ++i) label_of[static_cast<std::size_t>(leaves[static_cast<std::size_t>(i)])] = i;

  std::vector<int> parent_label(static_cast<std::size_t>(n) + 1);
  for (int x = 0; x <= n; ++x) parent_label[static_cast<std::size_t>(x)] = x;
  const std::function<int(int)> find = [&](int x) {
    while (parent_label[static_cast<std::size_t>(x)] != x) x = parent_label[static_cast<std::size_t>(x)];
    return x;
  };
  const auto snapshot = [&]() {
    std::map<int, std::vector<int>> groups;
    for (int x = 0; x <= n; ++x) groups[find(x)].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto& [root, members] : groups) blocks.push_back(std::move(members));
    return SetPartition(std::move(blocks));
  };

  std::vector<SetPartition> chain;
  chain.push_back(snapshot());
  for (int v : internals) {
    const std::vector<int>& children = t.node(v).children;
    const int a = find(label_of[static_cast<std::size_t>(children[0])]);
    const int b = find(label_of[static_cast<std::size_t>(children[1])]);
    parent_label[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    label_of[static_cast<std::size_t>(v)] = std::min(a, b);
    chain.push_back(snapshot());
  }
  return MaximalChain(std::move(chain));
}

// Standard-form merge tree realizing the chain: leaf i at height i, the
// merge between partitions i and i+1 at height n+i.
inline MergeTree chain_to_tree(const MaximalChain& chain) {
  const int n = chain.n();
  RawMergeTree raw;
  std::map<int, std::string> top;  // component (keyed by min element) -> branch top
  for (int x = 0; x <= n; ++x) {
    const std::string id = std::to_string(x);
    raw.nodes[id] = RawMergeTreeNode{std::nullopt, static_cast<double>(x)};
    top[x] = id;
  }
  for (int i = 1; i <= n; ++i) {
    const SetPartition& before = chain.partitions()[static_cast<std::size_t>(i) - 1];
    const SetPartition& after = chain.partitions()[static_cast<std::size_t>(i)];
    // The two blocks of `before` missing from `after` merged at this step.
    std::vector<const std::vector<int>*> merged;
    for (const std::vector<int>& block : before.blocks()) {
      if (std::find(after.blocks().begin(), after.blocks().end(), block) == after.blocks().end())
        merged.push_back(&block);
    }
    if (merged.size() != 2)
      throw std::invalid_argument("chain_to_tree: step does not merge exactly two blocks");
    const std::string id = "m" + std::to_string(n + i);
    raw.nodes[id] = RawMergeTreeNode{std::nullopt, static_cast<double>(n + i)};
    raw.nodes[top[(*merged[0])[0]]].parent = id;
    raw.nodes[top[(*merged[1])[0]]].parent = id;
    top.erase(std::max((*merged[0])[0], (*merged[1])[0]));
    top[std::min((*merged[0])[0], (*merged[1])[0])] = id;
  }
  raw.root = "r";
  raw.nodes["r"] = RawMergeTreeNode{std::nullopt, std::nullopt};
  raw.nodes[top[0]].parent = "r";
  return MergeTree::validate(raw);
}

namespace detail {

template <typename Fn>
void extend_chain(std::vector<SetPartition>& prefix, Fn& fn) {
  const SetPartition& current = prefix.back();
  if (current.block_count() == 1) {
    fn(MaximalChain(prefix));
    return;
  }
  const std::vector<std::vector<int>>& blocks = current.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      std::vector<std::vector<int>> next;
      next.reserve(blocks.size() - 1);
      std::vector<int> merged = blocks[i];
      merged.insert(merged.end(), blocks[j].begin(), blocks[j].end());
      next.push_back(std::move(merged));
      for (std::size_t k = 0; k < blocks.size(); ++k)
        if (k != i && k != j) next.push_back(blocks[k]);
      prefix.emplace_back(std::move(next));
      extend_chain(prefix, fn);
      prefix.pop_back();
    }
  }
}

}  // namespace detail

// All (n+1)! n! / 2^n maximal chains, no duplicates; merge choices are tried
// in lexicographic block order.
template <typename Fn>
void for_each_maximal_chain(int n, Fn&& fn) {
  if (n < 0) throw std::invalid_argument("for_each_maximal_chain: negative n");
  std::vector<SetPartition> prefix{SetPartition::finest(n)};
  detail::extend_chain(prefix, fn);
}

inline std::vector<MaximalChain> enumerate_maximal_chains(int n) {
  std::vector<MaximalChain> out;
  for_each_maximal_chain(n, [&](const MaximalChain& c) { out.push_back(c); });
  return out;
}

// One partition per line.
inline std::string chain_to_text(const MaximalChain& chain) {
  std::string out;
  for (const SetPartition& p : chain.partitions()) {
    out += p.to_string();
    out += '\n';
  }
  return out;
}

inline MaximalChain chain_from_text(const std::string& text) {
  std::vector<SetPartition> partitions;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    partitions.push_back(SetPartition::parse(line));
  }
  return MaximalChain(std::move(partitions));
}

}  // namespace treecode
