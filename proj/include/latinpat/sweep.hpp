#pragma once

#include "latinpat/pattern.hpp"
#include "latinpat/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latinpat {

inline constexpr const char* kSweepCsvHeader = "kind,order,seed,stat,pattern_id,value_num,value_den,value_float";

struct SweepConfig {
  std::vector<std::string> kinds;
  std::vector<int> orders;
  std::vector<std::uint64_t> seeds;
  std::vector<PatternId> targets;  // 2x3 pattern densities to report
  std::string method = "exact";    // "exact" or "mc"
  std::uint64_t samples = 1'000'000;
  unsigned threads = 0;
};

// One value per (kind, order, seed, stat). Monte Carlo values are the exact
// hit ratios.
struct SweepRow {
  std::string kind;
  int order = 0;
  std::uint64_t seed = 0;
  std::string stat;  // max_dev, l1_dev, corner, tie_fraction or density
  std::optional<PatternId> pattern;
  Rational value;
};

std::vector<SweepRow> sweep(const SweepConfig& config);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace latinpat
