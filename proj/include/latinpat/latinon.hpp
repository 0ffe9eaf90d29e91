#pragma once

#include "latinpat/density.hpp"
#include "latinpat/pattern.hpp"
#include "latinpat/random.hpp"
#include "latinpat/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace latinpat {

// Enumeration bounds of the exact Latinon engine.
inline constexpr int kLatinonMaxSide = 4;
inline constexpr int kLatinonMaxParts = 4;
inline constexpr int kLatinonMaxClasses = 4;
inline constexpr int kLatinonMaxIntervals = 16;

using ClassWeights = std::map<std::string, Rational>;

// Position axis: intervals [u_i, u_{i+1}) of [0, 1], each carrying a
// distribution over class labels. A sampled row (column) position falls into
// an interval and draws its class independently from that distribution.
struct AxisModel {
  std::vector<Rational> breakpoints;  // 0 = u_0 < ... < u_p = 1
  std::vector<ClassWeights> classes;  // one per interval
};

// Ordered value parts I_1 < ... < I_r of [0, 1].
struct ValuePartition {
  std::vector<Rational> breakpoints;  // 0 = v_0 < ... < v_r = 1
};

// row class -> column class -> part index -> weight. The value of a cell is
// uniform on the chosen part.
using MixtureTable = std::map<std::string, std::map<std::string, std::map<int, Rational>>>;

// Piecewise-constant Latinon. Construction checks the shape (breakpoints,
// labels, non-negative weights, table coverage); whether weights are
// normalised and the marginals are uniform is reported by check_axioms.
class StepLatinon {
 public:
  StepLatinon(AxisModel row_axis, AxisModel col_axis, ValuePartition values, MixtureTable table,
              std::string name = {});

  static StepLatinon uniform();
  // Doubling position map: one interval, classes {A: 1/2, B: 1/2}; values
  // in the lower half when the classes agree, else in the upper half.
  static StepLatinon prop41();
  // Identity position map with classes P Q P on [0,1/4], (1/4,3/4], (3/4,1].
  static StepLatinon prop42();
  // Built-in by name ("uniform", "prop41", "prop42"); throws InvalidArgument.
  static StepLatinon builtin(const std::string& name);

  const std::string& name() const noexcept { return name_; }
  const AxisModel& row_axis() const noexcept { return row_axis_; }
  const AxisModel& col_axis() const noexcept { return col_axis_; }
  const ValuePartition& values() const noexcept { return values_; }
  const MixtureTable& table() const noexcept { return table_; }
  int parts() const noexcept { return static_cast<int>(values_.breakpoints.size()) - 1; }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
  // Mixture over parts for (row class index, column class index).
  const std::vector<Rational>& mixture(int row_class, int col_class) const {
    return mixtures_[static_cast<std::size_t>(row_class)][static_cast<std::size_t>(col_class)];
  }
  // Class distribution of a row (column) interval, indexed like the labels.
  const std::vector<Rational>& row_interval_classes(int interval) const {
    return row_dist_[static_cast<std::size_t>(interval)];
  }
  const std::vector<Rational>& col_interval_classes(int interval) const {
    return col_dist_[static_cast<std::size_t>(interval)];
  }

  // Swaps the axes and transposes the table.
  StepLatinon transposed() const;

  // Returns a copy with one table weight replaced.
  StepLatinon with_weight(const std::string& row_class, const std::string& col_class, int part,
                          const Rational& weight) const;

 private:
  std::string name_;
  AxisModel row_axis_;
  AxisModel col_axis_;
  ValuePartition values_;
  MixtureTable table_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<std::vector<Rational>> row_dist_;
  std::vector<std::vector<Rational>> col_dist_;
  std::vector<std::vector<std::vector<Rational>>> mixtures_;
};

struct AxiomViolation {
  enum class Kind { IntervalClassSum, MixtureSum, RowMarginal, ColumnMarginal };
  Kind kind;
  std::string description;
  Rational lhs;
  Rational rhs;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool pass() const noexcept { return violations.empty(); }
};

const char* axiom_kind_name(AxiomViolation::Kind kind);

// Exact check of normalisation and of both marginal identities: for every
// class that occurs and every value part j, the mass the other axis sends
// into part j equals the length of part j.
AxiomReport check_axioms(const StepLatinon& latinon);

// Distribution of the interval indices of k sorted uniform positions
// (multinomial over non-decreasing sequences).
std::map<std::vector<int>, Rational> sorted_interval_distribution(const AxisModel& axis, int k);
// Distribution of the classes of k sorted positions on the row or column axis.
std::map<std::vector<int>, Rational> sorted_class_distribution(const StepLatinon& latinon, bool rows, int k);

// Interval indices of k sorted uniform positions.
std::vector<int> sample_sorted_intervals(const AxisModel& axis, int k, Rng& rng);

// Probability, given the row and column classes of the sampled points, that
// the constrained cells of `pattern` come out in the prescribed order.
Rational conditional_pattern_probability(const StepLatinon& latinon, const GeneralizedPattern& pattern,
                                         const std::vector<int>& row_classes, const std::vector<int>& col_classes);

// Exact density; holes are unconstrained. Throws EnumerationBoundExceeded
// beyond the desk-scale bounds, InvalidLatinon if weights are not normalised.
Rational exact_density(const StepLatinon& latinon, const GeneralizedPattern& pattern);
Rational exact_density(const StepLatinon& latinon, const Pattern& pattern);

// All (k*l)! densities at once, indexed by PatternId (k*l <= 10). Shares one
// support-matrix distribution across patterns.
std::vector<Rational> exact_all_densities(const StepLatinon& latinon, int k, int l);

// Distribution of the k x l matrix of value-part indices (row-major).
std::map<std::vector<int>, Rational> block_matrix_distribution(const StepLatinon& latinon, int k, int l);

// Samples positions and classes and averages the exact conditional pattern
// probability. Reproducible per the block contract of mc_density.
McEstimate rb_mc_density(const StepLatinon& latinon, const GeneralizedPattern& pattern, std::uint64_t samples,
                         std::uint64_t seed, unsigned threads = 0);
McEstimate rb_mc_density(const StepLatinon& latinon, const Pattern& pattern, std::uint64_t samples,
                         std::uint64_t seed, unsigned threads = 0);

}  // namespace latinpat
