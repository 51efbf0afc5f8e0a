#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "permutation.hpp"

namespace treecode {

struct Bar {
  double birth = 0;
  double death = 0;
  friend bool operator==(const Bar&, const Bar&) = default;
};

// One essential bar [b_0, inf), stored by its birth only, plus n finite bars
// with pairwise-distinct births and pairwise-distinct deaths. Bars are kept
// sorted by birth. Ties are rejected, never broken: a tie means the barcode
// is not strict.
class StrictBarcode {
 public:
  StrictBarcode(double essential_birth, std::vector<Bar> bars)
      : essential_birth_(essential_birth), bars_(std::move(bars)) {
    if (!std::isfinite(essential_birth_)) throw std::invalid_argument("essential birth must be finite");
    std::sort(bars_.begin(), bars_.end(),
              [](const Bar& a, const Bar& b) { return a.birth < b.birth; });
    double prev_birth = essential_birth_;
    for (const Bar& bar : bars_) {
      if (!std::isfinite(bar.birth) || !std::isfinite(bar.death))
        throw std::invalid_argument("bar endpoints must be finite");
      if (bar.birth <= prev_birth)
        throw std::invalid_argument("births must be pairwise distinct and after the essential birth");
      if (bar.birth >= bar.death) throw std::invalid_argument("each bar needs birth < death");
      prev_birth = bar.birth;
    }
    std::vector<double> deaths;
    deaths.reserve(bars_.size());
    for (const Bar& bar : bars_) deaths.push_back(bar.death);
    std::sort(deaths.begin(), deaths.end());
    if (std::adjacent_find(deaths.begin(), deaths.end()) != deaths.end())
      throw std::invalid_argument("deaths must be pairwise distinct");
  }

  double essential_birth() const { return essential_birth_; }
  const std::vector<Bar>& bars() const { return bars_; }  // birth order
  int n() const { return static_cast<int>(bars_.size()); }

  friend bool operator==(const StrictBarcode&, const StrictBarcode&) = default;

 private:
  double essential_birth_;
  std::vector<Bar> bars_;
};

// The combinatorial class of a strict barcode is just its permutation type.
using BarcodeClass = Permutation;

// sigma(j) = rank of d_j among the finite deaths; birth order maps to death
// order. The essential bar plays no role.
inline Permutation permutation_type(const StrictBarcode& b) {
  const int n = b.n();
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int rank = 0;
    for (int k = 0; k < n; ++k)
      if (b.bars()[static_cast<std::size_t>(k)].death <= b.bars()[static_cast<std::size_t>(j)].death)
        ++rank;
    images[static_cast<std::size_t>(j)] = rank;
  }
  return Permutation(std::move(images));
}

// l_i(B) = #{ 0 <= j < i : d_j > d_i } with d_0 = +inf, i.e. the number of
// bars strictly containing bar i, the essential bar included. Coincides
// entrywise with left_inversion_vector(permutation_type(B)).
inline InversionVector barcode_inversion_vector(const StrictBarcode& b) {
  const int n = b.n();
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int count = 1;  // d_0 = +inf always exceeds d_i
    for (int j = 0; j < i; ++j)
      if (b.bars()[static_cast<std::size_t>(j)].death > b.bars()[static_cast<std::size_t>(i)].death)
        ++count;
    entries[static_cast<std::size_t>(i)] = count;
  }
  return InversionVector(std::move(entries));
}

// B(sigma) = {[i, sigma(i)+n)}_{i=1..n} plus the essential bar [0, inf).
inline StrictBarcode standard_barcode(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<Bar> bars;
  bars.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    bars.push_back(Bar{static_cast<double>(i), static_cast<double>(sigma(i) + n)});
  return StrictBarcode(0.0, std::move(bars));
}

inline StrictBarcode scale(const StrictBarcode& b, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<Bar> bars;
  bars.reserve(b.bars().size());
  for (const Bar& bar : b.bars()) bars.push_back(Bar{lambda * bar.birth, lambda * bar.death});
  return StrictBarcode(lambda * b.essential_birth(), std::move(bars));
}

// Pointwise sum of two barcodes in birth order. Births stay distinct, but
// deaths can collide when the permutation types differ, so the result
// carries an explicit strictness flag instead of being a StrictBarcode.
struct BarcodeSum {
  double essential_birth = 0;
  std::vector<Bar> bars;  // birth order
  bool strict = false;

  StrictBarcode to_strict() const {
    if (!strict) throw std::invalid_argument("barcode sum is not strict");
    return StrictBarcode(essential_birth, bars);
  }
};

inline BarcodeSum add(const StrictBarcode& a, const StrictBarcode& b) {
  if (a.n() != b.n()) throw std::invalid_argument("add: bar counts differ");
  BarcodeSum out;
  out.essential_birth = a.essential_birth() + b.essential_birth();
  out.bars.reserve(a.bars().size());
  for (std::size_t i = 0; i < a.bars().size(); ++i)
    out.bars.push_back(Bar{a.bars()[i].birth + b.bars()[i].birth,
                           a.bars()[i].death + b.bars()[i].death});
  out.strict = true;
  double prev_birth = out.essential_birth;
  for (const Bar& bar : out.bars) {
    if (bar.birth <= prev_birth || bar.birth >= bar.death) out.strict = false;
    prev_birth = bar.birth;
  }
  std::vector<double> deaths;
  for (const Bar& bar : out.bars) deaths.push_back(bar.death);
  std::sort(deaths.begin(), deaths.end());
  if (std::adjacent_find(deaths.begin(), deaths.end()) != deaths.end()) out.strict = false;
  return out;
}

// B^t = t*B + (1-t)*B_prime. Requires equal permutation types; the class is
// convex, so the result is strict with the same type for every t in [0,1].
inline StrictBarcode interpolate(const StrictBarcode& b, const StrictBarcode& b_prime, double t) {
  if (b.n() != b_prime.n()) throw std::invalid_argument("interpolate: bar counts differ");
  if (permutation_type(b) != permutation_type(b_prime))
    throw std::invalid_argument("interpolate: permutation types differ");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("interpolate: t must lie in [0,1]");
  std::vector<Bar> bars;
  bars.reserve(b.bars().size());
  for (std::size_t i = 0; i < b.bars().size(); ++i)
    bars.push_back(Bar{t * b.bars()[i].birth + (1 - t) * b_prime.bars()[i].birth,
                       t * b.bars()[i].death + (1 - t) * b_prime.bars()[i].death});
  return StrictBarcode(t * b.essential_birth() + (1 - t) * b_prime.essential_birth(),
                       std::move(bars));
}

// {"essential_birth": 0.0, "bars": [[1.0, 7.0], ...]}; bars always emitted
// in birth order, input order is free.
inline nlohmann::json barcode_to_json(const StrictBarcode& b) {
  nlohmann::json bars = nlohmann::json::array();
  for (const Bar& bar : b.bars()) bars.push_back({bar.birth, bar.death});
  return nlohmann::json{{"essential_birth", b.essential_birth()}, {"bars", bars}};
}

inline StrictBarcode barcode_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("barcode: expected a JSON object");
  const double essential = j.at("essential_birth").get<double>();
  std::vector<Bar> bars;
  for (const nlohmann::json& pair : j.at("bars")) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("barcode: each bar must be a [birth, death] pair");
    bars.push_back(Bar{pair[0].get<double>(), pair[1].get<double>()});
  }
  return StrictBarcode(essential, std::move(bars));
}

}  // namespace treecode
