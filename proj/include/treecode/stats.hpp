#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "barcode.hpp"
#include "bigint.hpp"
#include "permutation.hpp"
#include "rng.hpp"

namespace treecode {

// Exact pushforward pi_n of the uniform measure on S_n under the realization
// number. Probabilities are positive rationals summing to 1; n! * pmf(x) is
// the multiplicity of x in the multiset Pi_n.
struct TrnDistribution {
  int n = 0;
  std::map<BigInt, Rational> pmf;

  BigInt multiplicity(const BigInt& x) const {
    const auto it = pmf.find(x);
    if (it == pmf.end()) return 0;
    Rational m = it->second * Rational(factorial(static_cast<unsigned long>(n)));
    m.canonicalize();
    if (m.get_den() != 1) throw std::logic_error("multiplicity is not an integer");
    return m.get_num();
  }

  std::map<BigInt, BigInt> multiplicities() const {
    std::map<BigInt, BigInt> out;
    for (const auto& [x, p] : pmf) out.emplace(x, multiplicity(x));
    return out;
  }

  Rational total_mass() const {
    Rational total = 0;
    for (const auto& [x, p] : pmf) total += p;
    return total;
  }
};

// Dirichlet convolution with U_k, the uniform distribution on {1,...,k}:
// (pmf * U_k)(c) = sum over ab=c of pmf(b)/k.
inline std::map<BigInt, Rational> dirichlet_convolve(const std::map<BigInt, Rational>& pmf,
                                                     int k) {
  if (k < 1) throw std::invalid_argument("dirichlet_convolve: k must be >= 1");
  std::map<BigInt, Rational> out;
  const Rational inv_k = make_rational(1, k);
  for (const auto& [x, p] : pmf) {
    const Rational share = p * inv_k;
    for (int a = 1; a <= k; ++a) out[x * a] += share;
  }
  return out;
}

// The support grows superpolynomially; keep exact computation tractable.
inline constexpr int kMaxDistributionN = 40;

// pi_n = U_n * U_{n-1} * ... * U_1.
inline TrnDistribution trn_distribution(int n) {
  if (n < 1) throw std::invalid_argument("trn_distribution: n must be >= 1");
  if (n > kMaxDistributionN)
    throw std::invalid_argument("trn_distribution: n exceeds the guard (" +
                                std::to_string(kMaxDistributionN) + ")");
  std::map<BigInt, Rational> pmf{{BigInt(1), Rational(1)}};
  for (int k = 2; k <= n; ++k) pmf = dirichlet_convolve(pmf, k);
  return TrnDistribution{n, std::move(pmf)};
}

// E(pi_n) = (n+1)!/2^n.
inline Rational trn_mean(int n) {
  if (n < 1) throw std::invalid_argument("trn_mean: n must be >= 1");
  return make_rational(factorial(static_cast<unsigned long>(n) + 1),
                       pow_ui(2, static_cast<unsigned long>(n)));
}

// E(pi_n^2) = (n+1)(2n+1)!/12^n.
inline Rational trn_second_moment(int n) {
  if (n < 1) throw std::invalid_argument("trn_second_moment: n must be >= 1");
  return make_rational(BigInt(n + 1) * factorial(2 * static_cast<unsigned long>(n) + 1),
                       pow_ui(12, static_cast<unsigned long>(n)));
}

inline Rational trn_variance(int n) {
  Rational mean = trn_mean(n);
  return trn_second_moment(n) - mean * mean;
}

// k-th moment by unrolling n! E(pi_n^k) = (sum_{a<=n} a^k) (n-1)! E(pi_{n-1}^k).
inline Rational trn_kth_moment(int n, int k) {
  if (n < 1) throw std::invalid_argument("trn_kth_moment: n must be >= 1");
  if (k < 0) throw std::invalid_argument("trn_kth_moment: k must be >= 0");
  Rational result = 1;
  for (int m = 2; m <= n; ++m) {
    BigInt power_sum = 0;
    for (unsigned long a = 1; a <= static_cast<unsigned long>(m); ++a)
      power_sum += pow_ui(a, static_cast<unsigned long>(k));
    result *= make_rational(std::move(power_sum), m);
  }
  return result;
}

// E(log R) = sum_{i=1}^n log(i!)/i (natural log).
inline double expected_log_trn(int n) {
  if (n < 1) throw std::invalid_argument("expected_log_trn: n must be >= 1");
  double log_factorial = 0.0;
  double result = 0.0;
  for (int i = 1; i <= n; ++i) {
    log_factorial += std::log(static_cast<double>(i));
    result += log_factorial / i;
  }
  return result;
}

enum class SamplerScheme {
  kConditioned,  // births uniform, each death uniform above its birth
  kSeparated,    // births and deaths drawn from disjoint intervals
};

struct SamplerIntervals {
  double birth_lo = 0;
  double birth_hi = 0;
  double death_lo = 0;  // unused by the conditioned scheme (deaths start at the birth)
  double death_hi = 0;
};

inline SamplerIntervals default_intervals(SamplerScheme scheme) {
  switch (scheme) {
    case SamplerScheme::kConditioned:
      return SamplerIntervals{0, 100, 0, 100};
    case SamplerScheme::kSeparated:
      return SamplerIntervals{0, 49, 50, 100};
  }
  throw std::invalid_argument("unknown sampler scheme");
}

// Deterministic given the seed. Exact floating-point ties are resampled, so
// the output is always strict.
struct BarcodeSampler {
  SamplerScheme scheme = SamplerScheme::kSeparated;
  SamplerIntervals intervals = default_intervals(SamplerScheme::kSeparated);
  std::uint64_t seed = 0;

  static BarcodeSampler conditioned(std::uint64_t seed) {
    return BarcodeSampler{SamplerScheme::kConditioned,
                          default_intervals(SamplerScheme::kConditioned), seed};
  }
  static BarcodeSampler separated(std::uint64_t seed) {
    return BarcodeSampler{SamplerScheme::kSeparated,
                          default_intervals(SamplerScheme::kSeparated), seed};
  }
};

// Sampler for trial t of a batch: same scheme and intervals, stream-derived
// seed. pushforward_histogram and the CLI both use this derivation.
inline BarcodeSampler stream_sampler(const BarcodeSampler& sampler, std::uint64_t trial) {
  BarcodeSampler derived = sampler;
  derived.seed = derive_stream_seed(sampler.seed, trial);
  return derived;
}

inline StrictBarcode sample_barcode(const BarcodeSampler& sampler, int n) {
  if (n < 1) throw std::invalid_argument("sample_barcode: n must be >= 1");
  const SamplerIntervals& iv = sampler.intervals;
  if (!(iv.birth_lo < iv.birth_hi)) throw std::invalid_argument("sample_barcode: empty birth interval");
  if (sampler.scheme == SamplerScheme::kSeparated) {
    if (!(iv.death_lo < iv.death_hi))
      throw std::invalid_argument("sample_barcode: empty death interval");
    if (iv.death_lo < iv.birth_hi)
      throw std::invalid_argument("sample_barcode: separated scheme needs disjoint intervals");
  } else if (!(iv.death_hi >= iv.birth_hi)) {
    throw std::invalid_argument("sample_barcode: deaths must be able to exceed any birth");
  }

  Rng rng(sampler.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Bar> bars(static_cast<std::size_t>(n));
    if (sampler.scheme == SamplerScheme::kConditioned) {
      for (Bar& bar : bars) {
        bar.birth = rng.uniform(iv.birth_lo, iv.birth_hi);
        bar.death = rng.uniform(bar.birth, iv.death_hi);
      }
    } else {
      std::vector<double> births(static_cast<std::size_t>(n));
      for (double& b : births) b = rng.uniform(iv.birth_lo, iv.birth_hi);
      // Births sorted, deaths assigned by draw index: the i-th drawn death
      // goes to the i-th smallest birth. Sorting both would force the
      // identity type; this pairing makes the induced type exactly uniform.
      std::sort(births.begin(), births.end());
      for (std::size_t i = 0; i < bars.size(); ++i) {
        bars[i].birth = births[i];
        bars[i].death = rng.uniform(iv.death_lo, iv.death_hi);
      }
    }
    try {
      return StrictBarcode(iv.birth_lo - 1.0, std::move(bars));
    } catch (const std::invalid_argument&) {
      continue;  // tie among endpoints; resample
    }
  }
  throw std::runtime_error("sample_barcode: repeated ties; intervals look degenerate");
}

// Classifies `trials` sampled barcodes by permutation type. Counts sum to
// `trials`; trial t uses stream_sampler(sampler, t).
inline std::map<Permutation, std::uint64_t> pushforward_histogram(const BarcodeSampler& sampler,
                                                                  int n, std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("pushforward_histogram: trials must be >= 1");
  std::map<Permutation, std::uint64_t> histogram;
  for (std::uint64_t t = 0; t < trials; ++t)
    ++histogram[permutation_type(sample_barcode(stream_sampler(sampler, t), n))];
  return histogram;
}

}  // namespace treecode
