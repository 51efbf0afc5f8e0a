#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "test_util.hpp"
#include "treecode/merge_tree.hpp"
#include "treecode/realization.hpp"

using namespace treecode;

namespace {

using NodeSpec = std::tuple<std::string, std::optional<std::string>, std::optional<double>>;

RawMergeTree raw_tree(const std::string& root, const std::vector<NodeSpec>& nodes) {
  RawMergeTree raw;
  raw.root = root;
  for (const auto& [id, parent, height] : nodes) raw.nodes[id] = RawMergeTreeNode{parent, height};
  return raw;
}

MergeTree translate(const MergeTree& t, double delta) {
  RawMergeTree raw;
  raw.root = t.node(t.root()).id;
  for (const MergeTree::Node& node : t.nodes()) {
    RawMergeTreeNode raw_node;
    if (node.parent != -1) {
      raw_node.parent = t.node(node.parent).id;
      raw_node.height = *node.height + delta;
    }
    raw.nodes[node.id] = raw_node;
  }
  return MergeTree::validate(raw);
}

// Two leaves at heights 0 and 1 merging at 2.
MergeTree cherry() {
  return MergeTree::validate(raw_tree(
      "r", {{"r", std::nullopt, std::nullopt}, {"m", "r", 2.0}, {"a", "m", 0.0}, {"b", "m", 1.0}}));
}

// Leaves 0,1,2; leaves 1 and 2 merge at 3, then the component meets leaf 0 at 4.
MergeTree three_leaf_caterpillar() {
  return MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                            {"top", "r", 4.0},
                                            {"m", "top", 3.0},
                                            {"l0", "top", 0.0},
                                            {"l1", "m", 1.0},
                                            {"l2", "m", 2.0}}));
}

}  // namespace

TEST_CASE("validate accepts well-formed trees") {
  const MergeTree single = MergeTree::validate(
      raw_tree("r", {{"r", std::nullopt, std::nullopt}, {"a", "r", 0.0}}));
  REQUIRE(single.leaf_count() == 1);
  REQUIRE(single.n() == 0);

  const MergeTree two = cherry();
  REQUIRE(two.leaf_count() == 2);
  REQUIRE(two.n() == 1);
  REQUIRE(two.node(two.root()).children.size() == 1);
}

TEST_CASE("validate rejects malformed trees") {
  // height inversion: internal node below one of its leaves
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                         {"m", "r", 0.5},
                                         {"a", "m", 0.0},
                                         {"b", "m", 1.0}})),
      Catch::Matchers::ContainsSubstring("height inversion"));
  // cycle among parent links
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree(
          "r", {{"r", std::nullopt, std::nullopt}, {"a", "b", 1.0}, {"b", "a", 2.0}})),
      Catch::Matchers::ContainsSubstring("cycle"));
  // multiple roots
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree(
          "r", {{"r", std::nullopt, std::nullopt}, {"s", std::nullopt, std::nullopt},
                {"a", "r", 0.0}})),
      Catch::Matchers::ContainsSubstring("multiple roots"));
  // non-binary internal node
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                         {"m", "r", 2.0},
                                         {"a", "m", 0.0}})),
      Catch::Matchers::ContainsSubstring("zero or two children"));
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                         {"m", "r", 3.0},
                                         {"a", "m", 0.0},
                                         {"b", "m", 1.0},
                                         {"c", "m", 2.0}})),
      Catch::Matchers::ContainsSubstring("zero or two children"));
  // duplicate finite heights (non-generic)
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                         {"m", "r", 2.0},
                                         {"a", "m", 1.0},
                                         {"b", "m", 1.0}})),
      Catch::Matchers::ContainsSubstring("non-generic"));
  // the root carries no finite height
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, 5.0}, {"a", "r", 0.0}})),
      Catch::Matchers::ContainsSubstring("root"));
  // unknown parent id
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt}, {"a", "x", 0.0}})),
      Catch::Matchers::ContainsSubstring("unknown parent"));
  // root must have exactly one child
  REQUIRE_THROWS_WITH(
      MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                         {"a", "r", 0.0},
                                         {"b", "r", 1.0}})),
      Catch::Matchers::ContainsSubstring("exactly one child"));
}

TEST_CASE("elder rule") {
  const MergeTree single = MergeTree::validate(
      raw_tree("r", {{"r", std::nullopt, std::nullopt}, {"a", "r", 0.0}}));
  REQUIRE(elder_rule(single) == StrictBarcode(0.0, {}));

  REQUIRE(elder_rule(cherry()) == StrictBarcode(0.0, {{1, 2}}));

  // At height 3 the younger leaf 2 dies; at 4 leaf 1 dies against elder leaf 0.
  REQUIRE(elder_rule(three_leaf_caterpillar()) == StrictBarcode(0.0, {{1, 4}, {2, 3}}));
}

TEST_CASE("elder rule structure invariants") {
  for (int n = 0; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      for_each_realization(standard_barcode(sigma), [&](const MergeTree& t) {
        const StrictBarcode b = elder_rule(t);
        REQUIRE(b.n() == t.leaf_count() - 1);
        std::multiset<double> deaths, internal_heights, births, leaf_heights;
        for (const Bar& bar : b.bars()) {
          deaths.insert(bar.death);
          births.insert(bar.birth);
        }
        for (int idx : t.internals_by_height()) internal_heights.insert(*t.node(idx).height);
        const std::vector<int> leaves = t.leaves_by_height();
        for (std::size_t i = 1; i < leaves.size(); ++i)
          leaf_heights.insert(*t.node(leaves[i]).height);
        REQUIRE(deaths == internal_heights);
        REQUIRE(births == leaf_heights);
        REQUIRE(b.essential_birth() == *t.node(leaves.front()).height);
      });
    });
  }
}

TEST_CASE("combinatorial equivalence") {
  const MergeTree t = three_leaf_caterpillar();
  REQUIRE(combinatorially_equivalent(t, translate(t, 10.5)));
  REQUIRE(combinatorially_equivalent(t, translate(t, -3.25)));

  // Same adjacency and same birth/death orders, but the cherry's death slides
  // below the third birth: still equivalent (total order not preserved).
  const MergeTree interleaved = MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                                                   {"top", "r", 4.0},
                                                                   {"m", "top", 2.0},
                                                                   {"l0", "top", 3.0},
                                                                   {"l1", "m", 0.0},
                                                                   {"l2", "m", 1.0}}));
  const MergeTree separated = MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                                                 {"top", "r", 4.0},
                                                                 {"m", "top", 3.5},
                                                                 {"l0", "top", 3.0},
                                                                 {"l1", "m", 0.0},
                                                                 {"l2", "m", 1.0}}));
  REQUIRE(combinatorially_equivalent(interleaved, separated));

  // Isomorphic graphs whose only isomorphism reverses the birth order: the
  // cherry holds births {1,2} on one side and {0,1} on the other.
  const MergeTree deep_young = three_leaf_caterpillar();
  const MergeTree deep_old = MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                                                {"top", "r", 4.0},
                                                                {"m", "top", 3.0},
                                                                {"l0", "m", 0.0},
                                                                {"l1", "m", 1.0},
                                                                {"l2", "top", 2.0}}));
  REQUIRE_FALSE(combinatorially_equivalent(deep_young, deep_old));
}

TEST_CASE("standardize") {
  const MergeTree t = MergeTree::validate(raw_tree(
      "r",
      {{"r", std::nullopt, std::nullopt}, {"m", "r", 9.9}, {"a", "m", 0.3}, {"b", "m", 1.7}}));
  const MergeTree s = standardize(t);
  REQUIRE(*s.node(s.index_of("a")).height == 0.0);
  REQUIRE(*s.node(s.index_of("b")).height == 1.0);
  REQUIRE(*s.node(s.index_of("m")).height == 2.0);

  // Idempotent on standard-form trees.
  const MergeTree again = standardize(s);
  for (const MergeTree::Node& node : s.nodes())
    if (node.parent != -1)
      REQUIRE(*again.node(again.index_of(node.id)).height == *node.height);

  // Leaves (5,1,3) with merges at (10,20) get ranks (2,0,1) and (3,4).
  const MergeTree three = MergeTree::validate(raw_tree("r", {{"r", std::nullopt, std::nullopt},
                                                             {"top", "r", 20.0},
                                                             {"m", "top", 10.0},
                                                             {"l0", "m", 5.0},
                                                             {"l1", "m", 1.0},
                                                             {"l2", "top", 3.0}}));
  const MergeTree std_three = standardize(three);
  REQUIRE(*std_three.node(std_three.index_of("l0")).height == 2.0);
  REQUIRE(*std_three.node(std_three.index_of("l1")).height == 0.0);
  REQUIRE(*std_three.node(std_three.index_of("l2")).height == 1.0);
  REQUIRE(*std_three.node(std_three.index_of("m")).height == 3.0);
  REQUIRE(*std_three.node(std_three.index_of("top")).height == 4.0);

  REQUIRE(combinatorially_equivalent(three, std_three));
  REQUIRE(elder_rule(std_three) == standard_barcode(permutation_type(elder_rule(three))));
}

TEST_CASE("standard form heights are exactly the two rank ranges") {
  for (int n = 0; n <= 5; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      for_each_realization(standard_barcode(sigma), [&](const MergeTree& t) {
        const MergeTree s = standardize(t);
        const std::vector<int> leaves = s.leaves_by_height();
        const std::vector<int> internals = s.internals_by_height();
        for (int i = 0; i <= n; ++i)
          REQUIRE(*s.node(leaves[static_cast<std::size_t>(i)]).height == static_cast<double>(i));
        for (int i = 0; i < n; ++i)
          REQUIRE(*s.node(internals[static_cast<std::size_t>(i)]).height ==
                  static_cast<double>(n + 1 + i));
      });
    });
  }
}

TEST_CASE("canonical codes") {
  const MergeTree t = three_leaf_caterpillar();
  REQUIRE(canonical_code(t) == canonical_code(translate(t, 42.0)));
  REQUIRE(canonical_code(t) == canonical_code(standardize(t)));

  // The three classes of 3-leaf merge trees have three distinct codes.
  std::set<ComboClassWitness> codes;
  for_each_permutation(2, [&](const Permutation& sigma) {
    for_each_realization(standard_barcode(sigma),
                         [&](const MergeTree& tree) { codes.insert(canonical_code(tree)); });
  });
  REQUIRE(codes.size() == 3);
}

TEST_CASE("equal codes force equal barcode permutation type") {
  for (int n = 0; n <= 4; ++n) {
    std::map<ComboClassWitness, Permutation> type_of;
    for_each_permutation(n, [&](const Permutation& sigma) {
      for_each_realization(standard_barcode(sigma), [&](const MergeTree& t) {
        const auto [it, inserted] = type_of.emplace(canonical_code(t), sigma);
        REQUIRE(it->second == sigma);
        REQUIRE(it->second == permutation_type(elder_rule(t)));
      });
    });
  }
}

TEST_CASE("merge tree json") {
  const nlohmann::json doc = nlohmann::json::parse(R"({
    "root": "r",
    "nodes": {
      "r": {"parent": null, "height": null},
      "a": {"parent": "r", "height": 2.0}
    }
  })");
  const MergeTree t = merge_tree_from_json(doc);
  REQUIRE(t.leaf_count() == 1);
  REQUIRE(merge_tree_from_json(merge_tree_to_json(t)).node_count() == t.node_count());

  const MergeTree cat = three_leaf_caterpillar();
  const MergeTree reloaded = merge_tree_from_json(merge_tree_to_json(cat));
  REQUIRE(combinatorially_equivalent(cat, reloaded));
  REQUIRE(elder_rule(reloaded) == elder_rule(cat));

  REQUIRE_THROWS(merge_tree_from_json(nlohmann::json::parse(R"({"root": "r"})")));
  REQUIRE_THROWS(merge_tree_from_json(nlohmann::json::parse(
      R"({"root": "r", "nodes": {"r": {"parent": null, "height": 1.0}}})")));
}
