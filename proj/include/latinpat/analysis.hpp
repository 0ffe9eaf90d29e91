#pragma once

#include "latinpat/density.hpp"
#include "latinpat/latinon.hpp"
#include "latinpat/pattern.hpp"
#include "latinpat/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace latinpat {

inline constexpr int kCertRows = 2;
inline constexpr int kCertCols = 3;
inline constexpr std::uint64_t kCertPatterns = 720;

struct Classification56 {
  std::vector<Pattern> same_column;
  std::vector<Pattern> rest;
};

// True when ranks 5 and 6 of a 2x3 pattern share a column.
bool five_six_same_column(const Pattern& pattern);
Classification56 classify_56(const std::vector<Pattern>& patterns);

// 1/3 when 5 and 6 share a column, else 1/6.
Rational corner_weight(const Pattern& pattern);

// Sum over 2x3 patterns of corner_weight(A) * t(A). The vector is indexed by
// PatternId; the map form throws MissingPattern naming the first absent id.
Rational corner_statistic(const std::vector<Rational>& densities);
Rational corner_statistic(const std::map<PatternId, Rational>& densities);

struct CertReport {
  int order = 0;  // 0 for Latinons and synthetic vectors
  std::string method;  // "exact", "mc" or "latinon"
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  // Exact densities, or hits/N for Monte Carlo; indexed by PatternId.
  std::vector<Rational> densities;
  std::vector<McEstimate> estimates;  // Monte Carlo only
  Rational max_dev;
  Rational l1_dev;
  Rational tie_fraction;
  Rational corner;
  Rational threshold;
  bool pass = false;
};

CertReport certify(const std::vector<Rational>& densities, const Rational& threshold);
CertReport certify(const DensityProfile& profile, const Rational& threshold);
CertReport certify(const McProfile& profile, const Rational& threshold);

struct EliminabilityResult {
  bool eliminable = false;
  // Non-hole entry values in elimination order; empty unless eliminable.
  std::vector<int> witness;
  // 'R' (first in its row) or 'C' (first in its column) for entry value
  // v at index v - 1; empty unless eliminable.
  std::vector<char> labels;
};

// Label search: each entry is tagged R or C with at most one R per row and
// one C per column; an R entry precedes the rest of its row, a C entry the
// rest of its column. Eliminable iff some tagging is acyclic.
EliminabilityResult is_eliminable(const GeneralizedPattern& pattern);

// Direct check that `order` (entry values) lists every non-hole entry once
// and each entry is first in its row or first in its column.
bool is_valid_elimination_order(const GeneralizedPattern& pattern, const std::vector<int>& order);

// 72 generalized 2x3 patterns: 5 above a hole in column 3, 2 or 1, the other
// four cells filled with every ordering of 1..4.
std::vector<GeneralizedPattern> suite_72();

// Exact density of an eliminable pattern on a Latinon; throws NotEliminable.
Rational eliminable_density_check(const StepLatinon& latinon, const GeneralizedPattern& pattern);

// Every generalized pattern of at most max_side x max_side with 1..max_entries
// non-hole entries and no all-hole row or column.
std::vector<GeneralizedPattern> small_generalized_patterns(int max_side, int max_entries);

}  // namespace latinpat
