#pragma once

#include "latinpat/latin_square.hpp"
#include "latinpat/pattern.hpp"
#include "latinpat/random.hpp"
#include "latinpat/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace latinpat {

// Exact k x l pattern census of one square. Selections whose submatrix
// repeats a value match no pattern and are counted in `ties`.
struct DensityProfile {
  int k = 0;
  int l = 0;
  int n = 0;
  BigInt total;                       // C(n,k) * C(n,l)
  std::vector<std::uint64_t> counts;  // indexed by PatternId
  std::uint64_t ties = 0;

  Rational density(PatternId id) const;
  Rational tie_fraction() const;
  std::vector<Rational> densities() const;
};

struct McEstimate {
  double estimate = 0.0;
  std::uint64_t samples = 0;
  // Present for Bernoulli estimators (estimate == hits / samples); absent
  // for Rao-Blackwellised ones.
  std::optional<std::uint64_t> hits;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

// Samples per Monte Carlo block; block b draws from Rng(block_key(seed, b)).
inline constexpr std::uint64_t kMcBlockSize = 1u << 14;

// PatternId of the rank pattern of a row-major k x l grid, or nullopt when
// two values are equal.
std::optional<PatternId> order_class(int k, int l, std::span<const int> values);

Rational exact_density(const LatinSquare& square, const Pattern& pattern);
Rational generalized_exact_density(const LatinSquare& square, const GeneralizedPattern& pattern);

// One sweep over all row/column selections. threads == 0 uses every core;
// the result does not depend on the thread count. Throws TooLarge if
// k*l > 10.
DensityProfile exact_profile(const LatinSquare& square, int k, int l, unsigned threads = 0);

McEstimate mc_density(const LatinSquare& square, const GeneralizedPattern& pattern, std::uint64_t samples,
                      std::uint64_t seed, unsigned threads = 0);
McEstimate mc_density(const LatinSquare& square, const Pattern& pattern, std::uint64_t samples,
                      std::uint64_t seed, unsigned threads = 0);

// Histogram of sampled selections over all k x l patterns; every pattern's
// estimate uses all `samples` draws.
struct McProfile {
  int k = 0;
  int l = 0;
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> hits;
  std::uint64_t ties = 0;

  McEstimate estimate(PatternId id) const;
};

McProfile mc_profile(const LatinSquare& square, int k, int l, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads = 0);

// Bernoulli estimate with std_error sqrt(p(1-p)/N).
McEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed);

// Uniform sorted k-subset of {0..n-1} (Floyd's algorithm); k <= n.
void sample_sorted_subset(int n, int k, Rng& rng, std::span<int> out);

}  // namespace latinpat
