#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "barcode.hpp"
#include "bigint.hpp"
#include "merge_tree.hpp"
#include "permutation.hpp"

namespace treecode {

using RealizationCount = BigInt;

// R(sigma) = product of the left inversion vector entries.
inline RealizationCount trn(const Permutation& sigma) {
  const InversionVector v = left_inversion_vector(sigma);
  RealizationCount r = 1;
  for (int entry : v.entries()) r *= entry;
  return r;
}

// R(B) = product of the bar indices mu(I_j) (bars containing I_j, the
// essential bar included); equals trn(permutation_type(B)).
inline RealizationCount trn_of_barcode(const StrictBarcode& b) {
  const InversionVector v = barcode_inversion_vector(b);
  RealizationCount r = 1;
  for (int entry : v.entries()) r *= entry;
  return r;
}

// (n+1)! n! / 2^n: the number of combinatorial merge-tree classes with n+1
// leaves, also the number of maximal chains in the partition lattice.
inline BigInt count_combinatorial_merge_trees(unsigned long n) {
  BigInt numerator = factorial(n + 1) * factorial(n);
  BigInt denominator = pow_ui(2, n);
  BigInt result;
  mpz_divexact(result.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  return result;
}

// Streams every merge tree realizing a strict barcode, one per attachment
// choice sequence: bars are processed in increasing death order, and the bar
// dying at step s may attach to any bar strictly containing it (candidates
// tried in increasing birth order). Tuples are visited lexicographically
// with the last step varying fastest. Emitted trees reuse the barcode's
// endpoints as heights, so the elder-rule round trip is endpoint-exact.
class RealizationEnumerator {
 public:
  explicit RealizationEnumerator(StrictBarcode barcode) : barcode_(std::move(barcode)) {
    const int n = barcode_.n();
    death_order_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) death_order_[static_cast<std::size_t>(j)] = j + 1;
    std::sort(death_order_.begin(), death_order_.end(), [&](int a, int b) {
      return bar(a).death < bar(b).death;
    });
    total_ = 1;
    targets_.resize(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      const int j = death_order_[static_cast<std::size_t>(s)];
      std::vector<int>& candidates = targets_[static_cast<std::size_t>(s)];
      candidates.push_back(0);  // the essential bar contains everything
      for (int k = 1; k < j; ++k)
        if (bar(k).death > bar(j).death) candidates.push_back(k);
      std::sort(candidates.begin(), candidates.end());  // bar index == birth order
      total_ *= static_cast<unsigned long>(candidates.size());
    }
    digits_.assign(static_cast<std::size_t>(n), 0);
  }

  // Product of the per-step choice counts; agrees with trn_of_barcode.
  const RealizationCount& total() const { return total_; }

  std::optional<MergeTree> next() {
    if (done_) return std::nullopt;
    MergeTree tree = build_current();
    // Mixed-radix increment, last digit fastest.
    int s = static_cast<int>(digits_.size()) - 1;
    while (s >= 0) {
      if (++digits_[static_cast<std::size_t>(s)] <
          static_cast<int>(targets_[static_cast<std::size_t>(s)].size()))
        break;
      digits_[static_cast<std::size_t>(s)] = 0;
      --s;
    }
    if (s < 0) done_ = true;
    return tree;
  }

 private:
  // Bar 0 is the essential bar; 1..n are the finite bars in birth order.
  const Bar& bar(int j) const { return barcode_.bars()[static_cast<std::size_t>(j) - 1]; }

  double birth(int j) const { return j == 0 ? barcode_.essential_birth() : bar(j).birth; }

  MergeTree build_current() const {
    const int n = barcode_.n();
    RawMergeTree raw;
    std::vector<std::string> top(static_cast<std::size_t>(n) + 1);  // branch top per bar
    for (int j = 0; j <= n; ++j) {
      const std::string id = "b" + std::to_string(j);
      raw.nodes[id] = RawMergeTreeNode{std::nullopt, birth(j)};
      top[static_cast<std::size_t>(j)] = id;
    }
    for (int s = 0; s < n; ++s) {
      const int j = death_order_[static_cast<std::size_t>(s)];
      const int k = targets_[static_cast<std::size_t>(s)]
                            [static_cast<std::size_t>(digits_[static_cast<std::size_t>(s)])];
      const std::string id = "d" + std::to_string(j);
      raw.nodes[id] = RawMergeTreeNode{std::nullopt, bar(j).death};
      raw.nodes[top[static_cast<std::size_t>(j)]].parent = id;
      raw.nodes[top[static_cast<std::size_t>(k)]].parent = id;
      top[static_cast<std::size_t>(k)] = id;
    }
    raw.root = "root";
    raw.nodes["root"] = RawMergeTreeNode{std::nullopt, std::nullopt};
    raw.nodes[top[0]].parent = "root";
    return MergeTree::validate(raw);
  }

  StrictBarcode barcode_;
  std::vector<int> death_order_;           // finite bar indices, increasing death
  std::vector<std::vector<int>> targets_;  // per step: containing-bar indices, increasing birth
  std::vector<int> digits_;
  bool done_ = false;
  RealizationCount total_ = 0;
};

template <typename Fn>
void for_each_realization(const StrictBarcode& b, Fn&& fn) {
  RealizationEnumerator stream(b);
  while (std::optional<MergeTree> tree = stream.next()) fn(*tree);
}

// Materialized enumeration; counts can be astronomically large, so prefer
// the streaming form outside of small cases.
inline std::vector<MergeTree> enumerate_realizations(const StrictBarcode& b) {
  std::vector<MergeTree> out;
  for_each_realization(b, [&](const MergeTree& t) { out.push_back(t); });
  return out;
}

}  // namespace treecode
