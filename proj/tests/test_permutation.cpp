#include <catch2/catch_amalgamated.hpp>

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "test_util.hpp"
#include "treecode/permutation.hpp"
#include "treecode/realization.hpp"

using namespace treecode;
using treecode::testing::all_permutations;

namespace {

// Oracle: minimal word lengths over the generators tau_i by breadth-first
// search on the Cayley graph (left multiplication), independent of the
// inversion-count implementation.
std::map<Permutation, int> bfs_word_lengths(int n) {
  std::map<Permutation, int> dist;
  std::deque<Permutation> queue{Permutation::identity(n)};
  dist[queue.front()] = 0;
  while (!queue.empty()) {
    const Permutation sigma = queue.front();
    queue.pop_front();
    for (int i = 1; i < n; ++i) {
      Permutation next = left_multiply_transposition(i, sigma);
      if (dist.emplace(next, dist[sigma] + 1).second) queue.push_back(next);
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("permutation construction and basics") {
  REQUIRE_THROWS_AS(Permutation({1, 1, 2}), std::invalid_argument);
  REQUIRE_THROWS_AS(Permutation({0, 1, 2}), std::invalid_argument);
  REQUIRE_THROWS_AS(Permutation({2, 3, 4}), std::invalid_argument);
  REQUIRE(Permutation().size() == 0);
  REQUIRE(Permutation::identity(3) == Permutation({1, 2, 3}));
  REQUIRE(Permutation({3, 2, 1, 4}).inverse() == Permutation({3, 2, 1, 4}));
  REQUIRE(Permutation({2, 3, 1}).inverse() == Permutation({3, 1, 2}));
  REQUIRE(Permutation::parse("3,2,1,4") == Permutation({3, 2, 1, 4}));
  REQUIRE(Permutation({3, 2, 1, 4}).to_string() == "3,2,1,4");
  REQUIRE_THROWS_AS(Permutation::parse("3,x,1"), std::invalid_argument);

  // Composition reads right to left: (12)(23) = (123).
  const Permutation t12({2, 1, 3});
  const Permutation t23({1, 3, 2});
  REQUIRE(compose(t12, t23) == Permutation({2, 3, 1}));
}

TEST_CASE("left inversion vector") {
  REQUIRE(left_inversion_vector(Permutation({3, 2, 1, 4})) == InversionVector({1, 2, 3, 1}));
  REQUIRE(left_inversion_vector(Permutation({1, 2, 3})) == InversionVector({1, 1, 1}));
  REQUIRE(left_inversion_vector(Permutation({4, 3, 2, 1})) == InversionVector({1, 2, 3, 4}));
}

TEST_CASE("from_inversion_vector inverts left_inversion_vector") {
  // Oracle: exhaustive search over S_4 for the unique preimage of (1,2,3,1).
  const InversionVector target({1, 2, 3, 1});
  std::vector<Permutation> matches;
  for (const Permutation& sigma : all_permutations(4))
    if (left_inversion_vector(sigma) == target) matches.push_back(sigma);
  REQUIRE(matches.size() == 1);
  REQUIRE(matches.front() == Permutation({3, 2, 1, 4}));
  REQUIRE(from_inversion_vector(target) == Permutation({3, 2, 1, 4}));

  REQUIRE(from_inversion_vector(InversionVector({1, 1, 1})) == Permutation({1, 2, 3}));
  REQUIRE(from_inversion_vector(InversionVector({1, 2})) == Permutation({2, 1}));

  REQUIRE_THROWS_AS(InversionVector({1, 3}), std::invalid_argument);
  REQUIRE_THROWS_AS(InversionVector({0}), std::invalid_argument);
  REQUIRE_THROWS_AS(InversionVector({2, 1}), std::invalid_argument);
}

TEST_CASE("inversion vector round trip and range bijectivity") {
  for (int n = 0; n <= 8; ++n) {
    for_each_permutation(n, [&](const Permutation& sigma) {
      REQUIRE(from_inversion_vector(left_inversion_vector(sigma)) == sigma);
    });
  }
  // The image of S_n is the full product [1] x ... x [n], each vector once.
  for (int n = 1; n <= 7; ++n) {
    std::set<InversionVector> image;
    long long count = 0;
    for_each_permutation(n, [&](const Permutation& sigma) {
      image.insert(left_inversion_vector(sigma));
      ++count;
    });
    long long product_size = 1;
    for (int i = 1; i <= n; ++i) product_size *= i;
    REQUIRE(count == product_size);
    REQUIRE(static_cast<long long>(image.size()) == product_size);
  }
}

TEST_CASE("word length") {
  REQUIRE(word_length(Permutation({1, 2, 3})) == 0);
  REQUIRE(word_length(Permutation({2, 1, 3})) == 1);
  REQUIRE(word_length(Permutation({4, 3, 2, 1})) == 6);

  // Inversion count agrees with minimal word length (BFS oracle).
  for (int n = 2; n <= 5; ++n) {
    const std::map<Permutation, int> oracle = bfs_word_lengths(n);
    for (const auto& [sigma, length] : oracle) REQUIRE(word_length(sigma) == length);
  }
}

TEST_CASE("left weak Bruhat order") {
  const Permutation t23({1, 3, 2});   // (23)
  const Permutation c123({2, 3, 1});  // (123)
  const Permutation t12({2, 1, 3});   // (12)
  REQUIRE(bruhat_leq(t23, c123));
  REQUIRE_FALSE(bruhat_leq(t12, c123));
  REQUIRE_FALSE(bruhat_leq(c123, t12));
  for (const Permutation& sigma : all_permutations(4))
    REQUIRE(bruhat_leq(Permutation::identity(4), sigma));
  REQUIRE_THROWS_AS(bruhat_leq(t12, Permutation({1, 2})), std::invalid_argument);
}

TEST_CASE("bruhat_leq is a partial order") {
  for (int n = 1; n <= 5; ++n) {
    const std::vector<Permutation> group = all_permutations(n);
    const int size = static_cast<int>(group.size());
    std::vector<std::vector<char>> leq(size, std::vector<char>(size, 0));
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b) leq[a][b] = bruhat_leq(group[a], group[b]);
    for (int a = 0; a < size; ++a) {
      REQUIRE(leq[a][a]);
      for (int b = 0; b < size; ++b) {
        if (a != b && leq[a][b]) REQUIRE_FALSE(leq[b][a]);
        for (int c = 0; c < size; ++c)
          if (leq[a][b] && leq[b][c]) REQUIRE(leq[a][c]);
      }
    }
  }
}

TEST_CASE("covering pairs") {
  REQUIRE(covering_pairs(1).empty());

  const std::vector<CoveringPair> n2 = covering_pairs(2);
  REQUIRE(n2.size() == 1);
  REQUIRE(n2.front().lower == Permutation({1, 2}));
  REQUIRE(n2.front().upper == Permutation({2, 1}));
  REQUIRE(n2.front().position == 1);

  // Oracle: brute force over S_3 x generators with the BFS lengths.
  const std::map<Permutation, int> oracle = bfs_word_lengths(3);
  int expected = 0;
  for (const auto& [sigma, length] : oracle)
    for (int i = 1; i < 3; ++i)
      if (oracle.at(left_multiply_transposition(i, sigma)) == length + 1) ++expected;
  REQUIRE(expected == 6);
  REQUIRE(covering_pairs(3).size() == 6);

  std::set<std::pair<Permutation, Permutation>> unique_pairs;
  for_each_covering_pair(4, [&](const CoveringPair& pair) {
    REQUIRE(word_length(pair.upper) == word_length(pair.lower) + 1);
    REQUIRE(pair.upper == left_multiply_transposition(pair.position, pair.lower));
    REQUIRE(bruhat_leq(pair.lower, pair.upper));
    REQUIRE(unique_pairs.emplace(pair.lower, pair.upper).second);
  });
}

TEST_CASE("realization number is monotone along covering pairs") {
  // R(tau_i sigma) = R(sigma) (l_q + 1) / l_q where q = sigma^-1(i+1) is the
  // position of the bar dying (i+1)-st; strictly increasing, never equal.
  for (int n = 2; n <= 6; ++n) {
    for_each_covering_pair(n, [&](const CoveringPair& pair) {
      const RealizationCount lower = trn(pair.lower);
      const RealizationCount upper = trn(pair.upper);
      REQUIRE(upper > lower);
      REQUIRE(upper != lower);
      const int q = pair.lower.inverse()(pair.position + 1);
      const int entry = left_inversion_vector(pair.lower)[q];
      REQUIRE(upper * entry == lower * (entry + 1));
    });
  }
}
