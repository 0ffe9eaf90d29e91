#include "latinpat/analysis.hpp"

#include "latinpat/error.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace latinpat {

namespace {

const Rational& ideal_density() {
  static const Rational ideal(1, static_cast<std::int64_t>(kCertPatterns));
  return ideal;
}

const std::vector<Rational>& corner_weights() {
  static const std::vector<Rational> weights = [] {
    std::vector<Rational> out;
    for (const auto& p : enumerate_patterns(kCertRows, kCertCols)) out.push_back(corner_weight(p));
    return out;
  }();
  return weights;
}

void require_cert_shape(const Pattern& p) {
  if (p.rows() != kCertRows || p.cols() != kCertCols) {
    throw Error(Errc::InvalidArgument, "expected a 2x3 pattern, got " + p.str());
  }
}

}  // namespace

bool five_six_same_column(const Pattern& p) {
  require_cert_shape(p);
  for (int c = 0; c < p.cols(); ++c) {
    const int lo = std::min(p.at(0, c), p.at(1, c));
    const int hi = std::max(p.at(0, c), p.at(1, c));
    if (lo == 5 && hi == 6) return true;
  }
  return false;
}

Classification56 classify_56(const std::vector<Pattern>& patterns) {
  Classification56 out;
  for (const auto& p : patterns) (five_six_same_column(p) ? out.same_column : out.rest).push_back(p);
  return out;
}

Rational corner_weight(const Pattern& p) { return five_six_same_column(p) ? Rational(1, 3) : Rational(1, 6); }

Rational corner_statistic(const std::vector<Rational>& densities) {
  if (densities.size() != kCertPatterns) {
    throw Error(Errc::MissingPattern, "expected " + std::to_string(kCertPatterns) + " densities, got " +
                                          std::to_string(densities.size()));
  }
  const auto& w = corner_weights();
  Rational total;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (!densities[i].is_zero()) total += w[i] * densities[i];
  }
  return total;
}

Rational corner_statistic(const std::map<PatternId, Rational>& densities) {
  std::vector<Rational> dense;
  dense.reserve(kCertPatterns);
  for (std::uint64_t i = 0; i < kCertPatterns; ++i) {
    auto it = densities.find(PatternId{i});
    if (it == densities.end()) {
      throw Error(Errc::MissingPattern, "no density for pattern " + pattern_from_id(2, 3, PatternId{i}).str());
    }
    dense.push_back(it->second);
  }
  return corner_statistic(dense);
}

CertReport certify(const std::vector<Rational>& densities, const Rational& threshold) {
  if (densities.size() != kCertPatterns) {
    throw Error(Errc::MissingPattern, "certification needs all " + std::to_string(kCertPatterns) + " densities");
  }
  CertReport report;
  report.method = "exact";
  report.densities = densities;
  Rational mass;
  for (const auto& d : densities) {
    const Rational dev = abs(d - ideal_density());
    if (dev > report.max_dev) report.max_dev = dev;
    report.l1_dev += dev;
    mass += d;
  }
  report.tie_fraction = Rational(1) - mass;
  report.corner = corner_statistic(densities);
  report.threshold = threshold;
  report.pass = report.max_dev <= threshold;
  return report;
}

CertReport certify(const DensityProfile& profile, const Rational& threshold) {
  if (profile.k != kCertRows || profile.l != kCertCols) {
    throw Error(Errc::MissingPattern, "certification needs a 2x3 profile");
  }
  CertReport report = certify(profile.densities(), threshold);
  report.order = profile.n;
  // Keeps ties explicit even when the square is too small to hold a 2x3
  // submatrix (every density and the tie count are then zero).
  report.tie_fraction = profile.tie_fraction();
  return report;
}

CertReport certify(const McProfile& profile, const Rational& threshold) {
  if (profile.k != kCertRows || profile.l != kCertCols) {
    throw Error(Errc::MissingPattern, "certification needs a 2x3 profile");
  }
  const BigInt n(static_cast<unsigned long>(profile.samples));
  std::vector<Rational> densities;
  for (auto h : profile.hits) densities.emplace_back(BigInt(static_cast<unsigned long>(h)), n);
  CertReport report = certify(densities, threshold);
  report.method = "mc";
  report.order = profile.n;
  report.samples = profile.samples;
  report.seed = profile.seed;
  report.tie_fraction = Rational(BigInt(static_cast<unsigned long>(profile.ties)), n);
  for (std::uint64_t i = 0; i < profile.hits.size(); ++i) report.estimates.push_back(profile.estimate(PatternId{i}));
  return report;
}

EliminabilityResult is_eliminable(const GeneralizedPattern& g) {
  const int k = g.rows();
  const int l = g.cols();
  const auto chain = g.cells_by_rank();
  const auto m = chain.size();
  std::vector<char> labels(m, 0);
  std::vector<int> row_owner(static_cast<std::size_t>(k), -1);
  std::vector<int> col_owner(static_cast<std::size_t>(l), -1);

  // Kahn's algorithm over the precedence arcs; smallest entry value first
  // among ready entries so witnesses are deterministic.
  const auto topological = [&]() -> std::vector<int> {
    std::vector<std::vector<int>> succ(m);
    std::vector<int> indegree(m, 0);
    for (std::size_t e = 0; e < m; ++e) {
      const int cell = chain[e];
      for (std::size_t f = 0; f < m; ++f) {
        if (f == e) continue;
        const int other = chain[f];
        const bool same_row = cell / l == other / l;
        const bool same_col = cell % l == other % l;
        if ((labels[e] == 'R' && same_row) || (labels[e] == 'C' && same_col)) {
          succ[e].push_back(static_cast<int>(f));
          ++indegree[f];
        }
      }
    }
    std::vector<int> order;
    std::vector<bool> done(m, false);
    while (order.size() < m) {
      std::size_t next = m;
      for (std::size_t e = 0; e < m; ++e) {
        if (!done[e] && indegree[e] == 0) {
          next = e;
          break;
        }
      }
      if (next == m) return {};
      done[next] = true;
      order.push_back(static_cast<int>(next) + 1);
      for (int f : succ[next]) --indegree[static_cast<std::size_t>(f)];
    }
    return order;
  };

  EliminabilityResult result;
  std::function<bool(std::size_t)> search = [&](std::size_t e) -> bool {
    if (e == m) {
      auto order = topological();
      if (order.empty()) return false;
      result.eliminable = true;
      result.witness = std::move(order);
      result.labels = labels;
      return true;
    }
    const int r = chain[e] / l;
    const int c = chain[e] % l;
    if (row_owner[static_cast<std::size_t>(r)] < 0) {
      row_owner[static_cast<std::size_t>(r)] = static_cast<int>(e);
      labels[e] = 'R';
      if (search(e + 1)) return true;
      row_owner[static_cast<std::size_t>(r)] = -1;
    }
    if (col_owner[static_cast<std::size_t>(c)] < 0) {
      col_owner[static_cast<std::size_t>(c)] = static_cast<int>(e);
      labels[e] = 'C';
      if (search(e + 1)) return true;
      col_owner[static_cast<std::size_t>(c)] = -1;
    }
    labels[e] = 0;
    return false;
  };
  search(0);
  return result;
}

bool is_valid_elimination_order(const GeneralizedPattern& g, const std::vector<int>& order) {
  const auto chain = g.cells_by_rank();
  if (order.size() != chain.size()) return false;
  std::vector<bool> placed(chain.size(), false);
  const int l = g.cols();
  for (int value : order) {
    if (value < 1 || value > static_cast<int>(chain.size()) || placed[static_cast<std::size_t>(value - 1)]) return false;
    const int cell = chain[static_cast<std::size_t>(value - 1)];
    bool first_in_row = true;
    bool first_in_col = true;
    for (std::size_t f = 0; f < chain.size(); ++f) {
      if (!placed[f]) continue;
      first_in_row = first_in_row && chain[f] / l != cell / l;
      first_in_col = first_in_col && chain[f] % l != cell % l;
    }
    if (!first_in_row && !first_in_col) return false;
    placed[static_cast<std::size_t>(value - 1)] = true;
  }
  return true;
}

std::vector<GeneralizedPattern> suite_72() {
  std::vector<GeneralizedPattern> out;
  for (int five_col : {2, 1, 0}) {
    std::vector<int> slots;
    for (int cell = 0; cell < 6; ++cell) {
      if (cell % 3 != five_col) slots.push_back(cell);
    }
    std::vector<int> fill{1, 2, 3, 4};
    do {
      std::vector<int> entries(6, GeneralizedPattern::kHole);
      entries[static_cast<std::size_t>(five_col)] = 5;
      for (std::size_t i = 0; i < slots.size(); ++i) entries[static_cast<std::size_t>(slots[i])] = fill[i];
      out.push_back(GeneralizedPattern::from_entries(2, 3, std::move(entries)));
    } while (std::next_permutation(fill.begin(), fill.end()));
  }
  return out;
}

Rational eliminable_density_check(const StepLatinon& latinon, const GeneralizedPattern& pattern) {
  if (!is_eliminable(pattern).eliminable) {
    throw Error(Errc::NotEliminable, pattern.str() + " is not eliminable");
  }
  return exact_density(latinon, pattern);
}

std::vector<GeneralizedPattern> small_generalized_patterns(int max_side, int max_entries) {
  std::vector<GeneralizedPattern> out;
  for (int k = 1; k <= max_side; ++k) {
    for (int l = 1; l <= max_side; ++l) {
      const int cells = k * l;
      if (cells > 30) throw Error(Errc::TooLarge, "shape too large to enumerate cell subsets");
      for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
        const int m = std::popcount(mask);
        if (m > max_entries) continue;
        std::uint32_t rows = 0;
        std::uint32_t cols = 0;
        std::vector<int> chosen;
        for (int cell = 0; cell < cells; ++cell) {
          if (mask & (1u << cell)) {
            rows |= 1u << (cell / l);
            cols |= 1u << (cell % l);
            chosen.push_back(cell);
          }
        }
        if (rows != (1u << k) - 1 || cols != (1u << l) - 1) continue;
        std::vector<int> ranks(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) ranks[static_cast<std::size_t>(i)] = i + 1;
        do {
          std::vector<int> entries(static_cast<std::size_t>(cells), GeneralizedPattern::kHole);
          for (int i = 0; i < m; ++i) {
            entries[static_cast<std::size_t>(chosen[static_cast<std::size_t>(i)])] = ranks[static_cast<std::size_t>(i)];
          }
          out.push_back(GeneralizedPattern::from_entries(k, l, std::move(entries)));
        } while (std::next_permutation(ranks.begin(), ranks.end()));
      }
    }
  }
  return out;
}

}  // namespace latinpat
