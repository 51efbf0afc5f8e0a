#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace treecode {

// Element of S_n in one-line (image) notation: images()[i] = sigma(i+1),
// with 1-based values. Composition reads right to left, so
// compose(a, b)(i) = a(b(i)). The empty permutation (n = 0) is allowed.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<int> sorted = images_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != static_cast<int>(i) + 1)
        throw std::invalid_argument("permutation images must be a bijection of {1,...,n}");
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(images_.size()); }

  // sigma(i), 1-based.
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i) - 1); }

  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[static_cast<std::size_t>(images_[i]) - 1] = static_cast<int>(i) + 1;
    Permutation p;
    p.images_ = std::move(inv);
    return p;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  // "3,2,1,4"; the empty permutation prints as "".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(images_[i]);
    }
    return out;
  }

  static Permutation parse(const std::string& text) {
    std::vector<int> v;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string::npos) next = text.size();
      std::string tok = text.substr(pos, next - pos);
      try {
        std::size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(value);
      } catch (const std::exception&) {
        throw std::invalid_argument("permutation: bad token '" + tok + "'");
      }
      pos = next + 1;
    }
    return Permutation(std::move(v));
  }

 private:
  std::vector<int> images_;
};

// (after o first)(i) = after(first(i)).
inline Permutation compose(const Permutation& after, const Permutation& first) {
  if (after.size() != first.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> v(static_cast<std::size_t>(first.size()));
  for (int i = 1; i <= first.size(); ++i) v[static_cast<std::size_t>(i) - 1] = after(first(i));
  return Permutation(std::move(v));
}

// Vector (l_1,...,l_n) with 1 <= l_i <= i. These coordinates identify S_n
// with the product [1] x [2] x ... x [n].
class InversionVector {
 public:
  InversionVector() = default;

  explicit InversionVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] < 1 || entries_[i] > static_cast<int>(i) + 1)
        throw std::invalid_argument("inversion vector entry out of range: l_" +
                                    std::to_string(i + 1) + " = " + std::to_string(entries_[i]));
    }
  }

  int size() const { return static_cast<int>(entries_.size()); }

  // l_i, 1-based.
  int operator[](int i) const { return entries_.at(static_cast<std::size_t>(i) - 1); }

  const std::vector<int>& entries() const { return entries_; }

  friend bool operator==(const InversionVector& a, const InversionVector& b) = default;
  friend std::strong_ordering operator<=>(const InversionVector& a, const InversionVector& b) {
    return a.entries_ <=> b.entries_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(entries_[i]);
    }
    return out;
  }

 private:
  std::vector<int> entries_;
};

// l_i = #{ j <= i : sigma(j) >= sigma(i) }; the self-count makes l_i >= 1.
inline InversionVector left_inversion_vector(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    int count = 0;
    for (int j = 1; j <= i; ++j)
      if (sigma(j) >= sigma(i)) ++count;
    entries[static_cast<std::size_t>(i) - 1] = count;
  }
  return InversionVector(std::move(entries));
}

// Exact inverse of left_inversion_vector. Working from position n down,
// l_i says sigma(i) is the (l_i)-th largest of the values not yet used.
inline Permutation from_inversion_vector(const InversionVector& v) {
  const int n = v.size();
  std::vector<int> available(static_cast<std::size_t>(n));
  std::iota(available.begin(), available.end(), 1);
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const int rank = static_cast<int>(available.size()) - v[i] + 1;  // 1-based, ascending
    images[static_cast<std::size_t>(i) - 1] = available[static_cast<std::size_t>(rank) - 1];
    available.erase(available.begin() + rank - 1);
  }
  return Permutation(std::move(images));
}

// Number of inversions; equals the minimal word length in the adjacent
// transpositions tau_1,...,tau_{n-1}.
inline int word_length(const Permutation& sigma) {
  const int n = sigma.size();
  int count = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (sigma(i) > sigma(j)) ++count;
  return count;
}

// Left weak Bruhat order: sigma <= sigma' iff lengths add along
// sigma' = (sigma' sigma^-1) sigma.
inline bool bruhat_leq(const Permutation& sigma, const Permutation& sigma_prime) {
  if (sigma.size() != sigma_prime.size()) throw std::invalid_argument("bruhat_leq: size mismatch");
  return word_length(sigma_prime) ==
         word_length(sigma) + word_length(compose(sigma_prime, sigma.inverse()));
}

// tau_i sigma: values i and i+1 swapped in the image list.
inline Permutation left_multiply_transposition(int i, const Permutation& sigma) {
  if (i < 1 || i >= sigma.size())
    throw std::invalid_argument("transposition index out of range");
  std::vector<int> v = sigma.images();
  for (int& x : v) {
    if (x == i)
      x = i + 1;
    else if (x == i + 1)
      x = i;
  }
  return Permutation(std::move(v));
}

// Visits S_n in lexicographic order of the image lists.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  if (n < 0) throw std::invalid_argument("for_each_permutation: negative n");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(Permutation(std::vector<int>(v)));
  } while (std::next_permutation(v.begin(), v.end()));
}

struct CoveringPair {
  Permutation lower;
  Permutation upper;  // tau_position * lower, one letter longer
  int position;       // generator index i of tau_i
};

// Every covering relation of the left weak order on S_n, exactly once.
// tau_i sigma covers sigma iff value i appears before value i+1 in sigma.
template <typename Fn>
void for_each_covering_pair(int n, Fn&& fn) {
  if (n < 1) throw std::invalid_argument("for_each_covering_pair: n must be >= 1");
  for_each_permutation(n, [&](const Permutation& sigma) {
    const Permutation inv = sigma.inverse();
    for (int i = 1; i < n; ++i) {
      if (inv(i) < inv(i + 1))
        fn(CoveringPair{sigma, left_multiply_transposition(i, sigma), i});
    }
  });
}

inline std::vector<CoveringPair> covering_pairs(int n) {
  std::vector<CoveringPair> out;
  for_each_covering_pair(n, [&](const CoveringPair& p) { out.push_back(p); });
  return out;
}

}  // namespace treecode
