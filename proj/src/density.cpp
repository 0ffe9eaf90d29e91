#include "latinpat/density.hpp"

#include "latinpat/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace latinpat {

namespace {

// Maps the column-major "earlier smaller" code of a selection to the
// row-major PatternId. Element t of the column-major sequence contributes
// d_t * t!, where d_t counts earlier elements with a smaller value; this
// lets the code grow one column at a time during the census.
struct CodeTable {
  std::vector<std::uint32_t> code_to_id;
  std::array<std::uint64_t, kMaxEnumerable + 1> weight{};
};

std::shared_ptr<const CodeTable> code_table(int k, int l) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const CodeTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{k, l}];
  if (slot) return slot;

  auto table = std::make_shared<CodeTable>();
  const int cells = k * l;
  table->weight[0] = 1;
  for (int t = 1; t <= cells; ++t) table->weight[static_cast<std::size_t>(t)] = table->weight[static_cast<std::size_t>(t - 1)] * static_cast<std::uint64_t>(t);
  table->code_to_id.resize(pattern_count(k, l));

  std::vector<int> row_major(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) row_major[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> col_major(static_cast<std::size_t>(cells));
  std::uint32_t id = 0;
  do {
    for (int c = 0; c < l; ++c) {
      for (int r = 0; r < k; ++r) col_major[static_cast<std::size_t>(c * k + r)] = row_major[static_cast<std::size_t>(r * l + c)];
    }
    std::uint64_t code = 0;
    for (int t = 1; t < cells; ++t) {
      std::uint64_t d = 0;
      for (int s = 0; s < t; ++s) d += col_major[static_cast<std::size_t>(s)] < col_major[static_cast<std::size_t>(t)];
      code += d * table->weight[static_cast<std::size_t>(t)];
    }
    table->code_to_id[code] = id++;
  } while (std::next_permutation(row_major.begin(), row_major.end()));
  slot = std::move(table);
  return slot;
}

std::vector<std::vector<std::uint64_t>> binomial_table(int n, int kmax) {
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(n) + 1,
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(kmax) + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)][0] = 1;
    for (int j = 1; j <= std::min(i, kmax); ++j) {
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          (j <= i - 1 ? c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0);
    }
  }
  return c;
}

bool next_combination(std::vector<int>& idx, int n) {
  const auto k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::vector<int> first_combination(int k) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

// Column-by-column census below one fixed row selection.
class ColumnCensus {
 public:
  ColumnCensus(const LatinSquare& square, int k, int l, const CodeTable& table,
               const std::vector<std::vector<std::uint64_t>>& binom, std::vector<std::uint64_t>& counts,
               std::uint64_t& ties)
      : square_(square), k_(k), l_(l), table_(table), binom_(binom), counts_(counts), ties_(ties) {}

  void run(std::span<const int> rows) {
    rows_ = rows;
    descend(0, 0, 0);
  }

 private:
  void descend(int depth, int first_col, std::uint64_t code) {
    const int n = square_.order();
    const int base = depth * k_;
    for (int j = first_col; j <= n - (l_ - depth); ++j) {
      std::uint64_t next = code;
      bool tie = false;
      for (int a = 0; a < k_ && !tie; ++a) {
        const int v = square_.at(rows_[static_cast<std::size_t>(a)], j);
        const int p = base + a;
        std::uint64_t d = 0;
        for (int s = 0; s < p; ++s) {
          const int u = values_[static_cast<std::size_t>(s)];
          if (u == v) {
            tie = true;
            break;
          }
          d += u < v;
        }
        values_[static_cast<std::size_t>(p)] = v;
        next += d * table_.weight[static_cast<std::size_t>(p)];
      }
      if (tie) {
        // Every completion of this column prefix ties as well.
        ties_ += binom_[static_cast<std::size_t>(n - 1 - j)][static_cast<std::size_t>(l_ - 1 - depth)];
        continue;
      }
      if (depth + 1 == l_) {
        ++counts_[table_.code_to_id[next]];
      } else {
        descend(depth + 1, j + 1, next);
      }
    }
  }

  const LatinSquare& square_;
  int k_;
  int l_;
  const CodeTable& table_;
  const std::vector<std::vector<std::uint64_t>>& binom_;
  std::vector<std::uint64_t>& counts_;
  std::uint64_t& ties_;
  std::span<const int> rows_;
  std::array<int, kMaxEnumerable> values_{};
};

// True when the selected submatrix satisfies every constrained order.
bool satisfies(const LatinSquare& square, const GeneralizedPattern& pattern, std::span<const int> rows,
               std::span<const int> cols) {
  const auto chain = pattern.cells_by_rank();
  int previous = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const int cell = chain[i];
    const int v = square.at(rows[static_cast<std::size_t>(cell / pattern.cols())],
                            cols[static_cast<std::size_t>(cell % pattern.cols())]);
    if (i > 0 && v <= previous) return false;
    previous = v;
  }
  return true;
}

template <class Sampler>
std::vector<std::uint64_t> run_blocks(std::uint64_t samples, unsigned threads, Sampler sampler) {
  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<std::uint64_t> per_block(blocks);
  detail::parallel_workers(blocks, detail::resolve_threads(threads), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const std::uint64_t count = std::min<std::uint64_t>(kMcBlockSize, samples - b * kMcBlockSize);
      per_block[b] = sampler(b, count);
    }
  });
  return per_block;
}

}  // namespace

Rational DensityProfile::density(PatternId id) const {
  if (id.value >= counts.size()) throw Error(Errc::IdOutOfRange, "pattern id out of range");
  if (total == 0) return Rational(0);
  return Rational(BigInt(static_cast<unsigned long>(counts[id.value])), total);
}

Rational DensityProfile::tie_fraction() const {
  if (total == 0) return Rational(0);
  return Rational(BigInt(static_cast<unsigned long>(ties)), total);
}

std::vector<Rational> DensityProfile::densities() const {
  std::vector<Rational> out;
  out.reserve(counts.size());
  for (std::uint64_t i = 0; i < counts.size(); ++i) out.push_back(density(PatternId{i}));
  return out;
}

std::optional<PatternId> order_class(int k, int l, std::span<const int> values) {
  if (static_cast<std::size_t>(k) * static_cast<std::size_t>(l) != values.size()) {
    throw Error(Errc::InvalidArgument, "value grid does not match dimensions");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] == values[j]) return std::nullopt;
    }
  }
  (void)pattern_count(k, l);
  return PatternId{permutation_rank(values)};
}

Rational generalized_exact_density(const LatinSquare& square, const GeneralizedPattern& pattern) {
  const int n = square.order();
  const int k = pattern.rows();
  const int l = pattern.cols();
  if (k > n || l > n) return Rational(0);
  std::uint64_t hits = 0;
  auto rows = first_combination(k);
  do {
    auto cols = first_combination(l);
    do {
      hits += satisfies(square, pattern, rows, cols);
    } while (next_combination(cols, n));
  } while (next_combination(rows, n));
  const BigInt total = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) *
                       binomial(static_cast<unsigned>(n), static_cast<unsigned>(l));
  return Rational(BigInt(static_cast<unsigned long>(hits)), total);
}

Rational exact_density(const LatinSquare& square, const Pattern& pattern) {
  return generalized_exact_density(square, GeneralizedPattern::from_pattern(pattern));
}

DensityProfile exact_profile(const LatinSquare& square, int k, int l, unsigned threads) {
  if (k < 1 || l < 1) throw Error(Errc::InvalidArgument, "pattern dimensions must be positive");
  if (k * l > kMaxEnumerable) {
    throw Error(Errc::TooLarge, "profiles are limited to k*l <= " + std::to_string(kMaxEnumerable));
  }
  const int n = square.order();
  DensityProfile profile;
  profile.k = k;
  profile.l = l;
  profile.n = n;
  profile.total = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) *
                  binomial(static_cast<unsigned>(n), static_cast<unsigned>(l));
  profile.counts.assign(pattern_count(k, l), 0);
  if (k > n || l > n) return profile;
  if (!profile.total.fits_ulong_p()) throw Error(Errc::TooLarge, "selection count exceeds 64 bits");

  const auto table = code_table(k, l);
  const auto binom = binomial_table(n, l);

  std::vector<std::vector<int>> row_sets;
  auto rows = first_combination(k);
  do {
    row_sets.push_back(rows);
  } while (next_combination(rows, n));

  const unsigned workers = detail::resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> counts(workers);
  std::vector<std::uint64_t> ties(workers, 0);
  detail::parallel_workers(row_sets.size(), workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    counts[w].assign(profile.counts.size(), 0);
    ColumnCensus census(square, k, l, *table, binom, counts[w], ties[w]);
    for (std::size_t i = begin; i < end; ++i) census.run(row_sets[i]);
  });
  for (unsigned w = 0; w < workers; ++w) {
    profile.ties += ties[w];
    for (std::size_t i = 0; i < counts[w].size(); ++i) profile.counts[i] += counts[w][i];
  }
  return profile;
}

void sample_sorted_subset(int n, int k, Rng& rng, std::span<int> out) {
  int filled = 0;
  for (int j = n - k; j < n; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    bool present = false;
    for (int i = 0; i < filled; ++i) present = present || out[static_cast<std::size_t>(i)] == t;
    out[static_cast<std::size_t>(filled++)] = present ? j : t;
  }
  std::sort(out.begin(), out.begin() + k);
}

McEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
  McEstimate e;
  e.samples = samples;
  e.hits = hits;
  e.seed = seed;
  e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
  return e;
}

McEstimate mc_density(const LatinSquare& square, const GeneralizedPattern& pattern, std::uint64_t samples,
                      std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw Error(Errc::ZeroSamples, "Monte Carlo needs at least one sample");
  const int n = square.order();
  const int k = pattern.rows();
  const int l = pattern.cols();
  if (k > n || l > n) return bernoulli_estimate(0, samples, seed);
  const auto per_block = run_blocks(samples, threads, [&](std::uint64_t block, std::uint64_t count) {
    Rng rng(block_key(seed, block));
    std::vector<int> rows(static_cast<std::size_t>(k));
    std::vector<int> cols(static_cast<std::size_t>(l));
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      sample_sorted_subset(n, k, rng, rows);
      sample_sorted_subset(n, l, rng, cols);
      hits += satisfies(square, pattern, rows, cols);
    }
    return hits;
  });
  std::uint64_t hits = 0;
  for (auto h : per_block) hits += h;
  return bernoulli_estimate(hits, samples, seed);
}

McEstimate mc_density(const LatinSquare& square, const Pattern& pattern, std::uint64_t samples,
                      std::uint64_t seed, unsigned threads) {
  return mc_density(square, GeneralizedPattern::from_pattern(pattern), samples, seed, threads);
}

McEstimate McProfile::estimate(PatternId id) const {
  if (id.value >= hits.size()) throw Error(Errc::IdOutOfRange, "pattern id out of range");
  return bernoulli_estimate(hits[id.value], samples, seed);
}

McProfile mc_profile(const LatinSquare& square, int k, int l, std::uint64_t samples, std::uint64_t seed,
                     unsigned threads) {
  if (samples == 0) throw Error(Errc::ZeroSamples, "Monte Carlo needs at least one sample");
  if (k < 1 || l < 1) throw Error(Errc::InvalidArgument, "pattern dimensions must be positive");
  if (k * l > kMaxEnumerable) {
    throw Error(Errc::TooLarge, "profiles are limited to k*l <= " + std::to_string(kMaxEnumerable));
  }
  const int n = square.order();
  McProfile profile;
  profile.k = k;
  profile.l = l;
  profile.n = n;
  profile.samples = samples;
  profile.seed = seed;
  profile.hits.assign(pattern_count(k, l), 0);
  if (k > n || l > n) return profile;

  const auto table = code_table(k, l);
  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  const unsigned workers = detail::resolve_threads(threads);
  // Integer histograms merge by addition, so the result is independent of
  // which worker ran which block.
  std::vector<std::vector<std::uint64_t>> hist(workers);
  std::vector<std::uint64_t> ties(workers, 0);
  detail::parallel_workers(blocks, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    auto& out = hist[w];
    out.assign(profile.hits.size(), 0);
    std::vector<int> rows(static_cast<std::size_t>(k));
    std::vector<int> cols(static_cast<std::size_t>(l));
    std::array<int, kMaxEnumerable> values{};
    for (std::size_t b = begin; b < end; ++b) {
      Rng rng(block_key(seed, b));
      const std::uint64_t count = std::min<std::uint64_t>(kMcBlockSize, samples - b * kMcBlockSize);
      for (std::uint64_t s = 0; s < count; ++s) {
        sample_sorted_subset(n, k, rng, rows);
        sample_sorted_subset(n, l, rng, cols);
        std::uint64_t code = 0;
        bool tie = false;
        for (int c = 0; c < l && !tie; ++c) {
          for (int r = 0; r < k && !tie; ++r) {
            const int p = c * k + r;
            const int v = square.at(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
            std::uint64_t d = 0;
            for (int q = 0; q < p; ++q) {
              tie = tie || values[static_cast<std::size_t>(q)] == v;
              d += values[static_cast<std::size_t>(q)] < v;
            }
            values[static_cast<std::size_t>(p)] = v;
            code += d * table->weight[static_cast<std::size_t>(p)];
          }
        }
        if (tie) {
          ++ties[w];
        } else {
          ++out[table->code_to_id[code]];
        }
      }
    }
  });
  for (unsigned w = 0; w < workers; ++w) {
    profile.ties += ties[w];
    for (std::size_t i = 0; i < hist[w].size(); ++i) profile.hits[i] += hist[w][i];
  }
  return profile;
}

}  // namespace latinpat
