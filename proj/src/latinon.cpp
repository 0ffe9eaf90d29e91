#include "latinpat/latinon.hpp"

#include "latinpat/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace latinpat {

namespace {

void check_breakpoints(const std::vector<Rational>& bp, const std::string& what) {
  if (bp.size() < 2) throw Error(Errc::InvalidLatinon, what + " needs at least two breakpoints");
  if (!bp.front().is_zero() || bp.back() != Rational(1)) {
    throw Error(Errc::InvalidLatinon, what + " breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (bp[i] <= bp[i - 1]) throw Error(Errc::InvalidLatinon, what + " breakpoints must be strictly increasing");
  }
}

std::vector<std::string> axis_labels(const AxisModel& axis, const std::string& what) {
  check_breakpoints(axis.breakpoints, what);
  if (axis.classes.size() + 1 != axis.breakpoints.size()) {
    throw Error(Errc::InvalidLatinon, what + " needs one class distribution per interval");
  }
  std::set<std::string> labels;
  for (const auto& dist : axis.classes) {
    if (dist.empty()) throw Error(Errc::InvalidLatinon, what + " interval without classes");
    for (const auto& [label, w] : dist) {
      if (w.sign() < 0) throw Error(Errc::InvalidLatinon, what + " class weight for '" + label + "' is negative");
      labels.insert(label);
    }
  }
  return {labels.begin(), labels.end()};
}

std::vector<std::vector<Rational>> axis_distributions(const AxisModel& axis, const std::vector<std::string>& labels) {
  std::vector<std::vector<Rational>> out;
  for (const auto& dist : axis.classes) {
    std::vector<Rational> row(labels.size());
    for (std::size_t c = 0; c < labels.size(); ++c) {
      auto it = dist.find(labels[c]);
      if (it != dist.end()) row[c] = it->second;
    }
    out.push_back(std::move(row));
  }
  return out;
}

Rational interval_length(const std::vector<Rational>& bp, int i) {
  return bp[static_cast<std::size_t>(i) + 1] - bp[static_cast<std::size_t>(i)];
}

Rational sum(const std::vector<Rational>& xs) {
  Rational s;
  for (const auto& x : xs) s += x;
  return s;
}

Rational inverse_factorial(int n) { return Rational(BigInt(1), factorial(static_cast<unsigned>(n))); }

std::string side_name(int k, int l) { return std::to_string(k) + "x" + std::to_string(l); }

void require_enumerable(const StepLatinon& s, int k, int l) {
  if (k < 1 || l < 1) throw Error(Errc::InvalidArgument, "pattern dimensions must be positive");
  if (k > kLatinonMaxSide || l > kLatinonMaxSide) {
    throw Error(Errc::EnumerationBoundExceeded, side_name(k, l) + " exceeds the Latinon bound of " +
                                                    std::to_string(kLatinonMaxSide) + " per side");
  }
  if (s.parts() > kLatinonMaxParts) throw Error(Errc::EnumerationBoundExceeded, "too many value parts");
  if (static_cast<int>(s.row_labels().size()) > kLatinonMaxClasses ||
      static_cast<int>(s.col_labels().size()) > kLatinonMaxClasses) {
    throw Error(Errc::EnumerationBoundExceeded, "too many classes on an axis");
  }
  if (static_cast<int>(s.row_axis().classes.size()) > kLatinonMaxIntervals ||
      static_cast<int>(s.col_axis().classes.size()) > kLatinonMaxIntervals) {
    throw Error(Errc::EnumerationBoundExceeded, "too many position intervals on an axis");
  }
}

void require_normalized(const StepLatinon& s) {
  for (const auto& v : check_axioms(s).violations) {
    if (v.kind == AxiomViolation::Kind::IntervalClassSum || v.kind == AxiomViolation::Kind::MixtureSum) {
      throw Error(Errc::InvalidLatinon, "weights are not normalised: " + v.description);
    }
  }
}

// Calls visit(parts, weight) for every assignment of value parts to `cells`
// (row-major indices into a k x l grid) with non-zero mixture weight, given
// the row and column classes of the sampled points.
void for_each_assignment(const StepLatinon& s, int l, std::span<const int> cells, const std::vector<int>& row_classes,
                         const std::vector<int>& col_classes,
                         const std::function<void(const std::vector<int>&, const Rational&)>& visit) {
  std::vector<int> parts(cells.size());
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& weight) {
    if (i == cells.size()) {
      visit(parts, weight);
      return;
    }
    const int cell = cells[i];
    const auto& mix = s.mixture(row_classes[static_cast<std::size_t>(cell / l)],
                                col_classes[static_cast<std::size_t>(cell % l)]);
    for (int j = 0; j < s.parts(); ++j) {
      if (mix[static_cast<std::size_t>(j)].is_zero()) continue;
      parts[i] = j;
      rec(i + 1, weight * mix[static_cast<std::size_t>(j)]);
    }
  };
  rec(0, Rational(1));
}

std::uint64_t assignment_count(const StepLatinon& s, int l, std::span<const int> cells,
                               const std::vector<int>& row_classes, const std::vector<int>& col_classes) {
  std::uint64_t count = 1;
  for (int cell : cells) {
    const auto& mix = s.mixture(row_classes[static_cast<std::size_t>(cell / l)],
                                col_classes[static_cast<std::size_t>(cell % l)]);
    std::uint64_t support = 0;
    for (const auto& w : mix) support += !w.is_zero();
    count *= support;
    if (count > (1u << 20)) return count;
  }
  return count;
}

}  // namespace

StepLatinon::StepLatinon(AxisModel row_axis, AxisModel col_axis, ValuePartition values, MixtureTable table,
                         std::string name)
    : name_(std::move(name)),
      row_axis_(std::move(row_axis)),
      col_axis_(std::move(col_axis)),
      values_(std::move(values)),
      table_(std::move(table)) {
  row_labels_ = axis_labels(row_axis_, "row axis");
  col_labels_ = axis_labels(col_axis_, "column axis");
  check_breakpoints(values_.breakpoints, "value partition");
  row_dist_ = axis_distributions(row_axis_, row_labels_);
  col_dist_ = axis_distributions(col_axis_, col_labels_);

  for (const auto& [rc, inner] : table_) {
    if (!std::binary_search(row_labels_.begin(), row_labels_.end(), rc)) {
      throw Error(Errc::InvalidLatinon, "table row class '" + rc + "' does not occur on the row axis");
    }
    for (const auto& [cc, mix] : inner) {
      if (!std::binary_search(col_labels_.begin(), col_labels_.end(), cc)) {
        throw Error(Errc::InvalidLatinon, "table column class '" + cc + "' does not occur on the column axis");
      }
    }
  }
  mixtures_.resize(row_labels_.size());
  for (std::size_t a = 0; a < row_labels_.size(); ++a) {
    for (std::size_t b = 0; b < col_labels_.size(); ++b) {
      auto rit = table_.find(row_labels_[a]);
      if (rit == table_.end() || !rit->second.contains(col_labels_[b])) {
        throw Error(Errc::InvalidLatinon,
                    "no mixture for classes (" + row_labels_[a] + ", " + col_labels_[b] + ")");
      }
      std::vector<Rational> mix(static_cast<std::size_t>(parts()));
      for (const auto& [part, w] : rit->second.at(col_labels_[b])) {
        if (part < 0 || part >= parts()) {
          throw Error(Errc::InvalidLatinon, "part index " + std::to_string(part) + " out of range");
        }
        if (w.sign() < 0) throw Error(Errc::InvalidLatinon, "negative mixture weight");
        mix[static_cast<std::size_t>(part)] = w;
      }
      mixtures_[a].push_back(std::move(mix));
    }
  }
}

StepLatinon StepLatinon::uniform() {
  AxisModel axis{{Rational(0), Rational(1)}, {{{"U", Rational(1)}}}};
  return StepLatinon(axis, axis, ValuePartition{{Rational(0), Rational(1)}},
                     MixtureTable{{"U", {{"U", {{0, Rational(1)}}}}}}, "uniform");
}

namespace {

MixtureTable agreement_table(const std::string& first, const std::string& second) {
  const std::map<int, Rational> lower{{0, Rational(1)}};
  const std::map<int, Rational> upper{{1, Rational(1)}};
  return {{first, {{first, lower}, {second, upper}}}, {second, {{first, upper}, {second, lower}}}};
}

}  // namespace

StepLatinon StepLatinon::prop41() {
  // A point at position u is x = u/2 or x = (u+1)/2 with equal probability;
  // the class records which half x lies in.
  AxisModel axis{{Rational(0), Rational(1)}, {{{"A", Rational(1, 2)}, {"B", Rational(1, 2)}}}};
  return StepLatinon(axis, axis, ValuePartition{{Rational(0), Rational(1, 2), Rational(1)}},
                     agreement_table("A", "B"), "prop41");
}

StepLatinon StepLatinon::prop42() {
  AxisModel axis{{Rational(0), Rational(1, 4), Rational(3, 4), Rational(1)},
                 {{{"P", Rational(1)}}, {{"Q", Rational(1)}}, {{"P", Rational(1)}}}};
  return StepLatinon(axis, axis, ValuePartition{{Rational(0), Rational(1, 2), Rational(1)}},
                     agreement_table("P", "Q"), "prop42");
}

StepLatinon StepLatinon::builtin(const std::string& name) {
  if (name == "uniform") return uniform();
  if (name == "prop41") return prop41();
  if (name == "prop42") return prop42();
  throw Error(Errc::InvalidArgument, "unknown built-in Latinon '" + name + "'");
}

StepLatinon StepLatinon::transposed() const {
  MixtureTable t;
  for (const auto& [rc, inner] : table_) {
    for (const auto& [cc, mix] : inner) t[cc][rc] = mix;
  }
  return StepLatinon(col_axis_, row_axis_, values_, std::move(t), name_.empty() ? name_ : name_ + "^T");
}

StepLatinon StepLatinon::with_weight(const std::string& row_class, const std::string& col_class, int part,
                                     const Rational& weight) const {
  MixtureTable t = table_;
  t[row_class][col_class][part] = weight;
  return StepLatinon(row_axis_, col_axis_, values_, std::move(t), name_);
}

const char* axiom_kind_name(AxiomViolation::Kind kind) {
  switch (kind) {
    case AxiomViolation::Kind::IntervalClassSum: return "interval-class-sum";
    case AxiomViolation::Kind::MixtureSum: return "mixture-sum";
    case AxiomViolation::Kind::RowMarginal: return "row-marginal";
    case AxiomViolation::Kind::ColumnMarginal: return "column-marginal";
  }
  return "unknown";
}

AxiomReport check_axioms(const StepLatinon& s) {
  AxiomReport report;
  auto add = [&](AxiomViolation::Kind kind, std::string description, Rational lhs, Rational rhs) {
    report.violations.push_back({kind, std::move(description) + ": " + lhs.str() + " != " + rhs.str(),
                                 std::move(lhs), std::move(rhs)});
  };

  const auto check_axis = [&](const AxisModel& axis, const char* which) {
    for (std::size_t i = 0; i < axis.classes.size(); ++i) {
      Rational total;
      for (const auto& [label, w] : axis.classes[i]) total += w;
      if (total != Rational(1)) {
        add(AxiomViolation::Kind::IntervalClassSum,
            std::string(which) + " interval " + std::to_string(i) + " class weights", total, Rational(1));
      }
    }
  };
  check_axis(s.row_axis(), "row");
  check_axis(s.col_axis(), "column");

  const auto& rl = s.row_labels();
  const auto& cl = s.col_labels();
  for (std::size_t a = 0; a < rl.size(); ++a) {
    for (std::size_t b = 0; b < cl.size(); ++b) {
      const Rational total = sum(s.mixture(static_cast<int>(a), static_cast<int>(b)));
      if (total != Rational(1)) {
        add(AxiomViolation::Kind::MixtureSum, "mixture (" + rl[a] + ", " + cl[b] + ")", total, Rational(1));
      }
    }
  }

  const auto& vb = s.values().breakpoints;
  // Classes that occur with positive probability somewhere on an axis.
  const auto occurring = [](const AxisModel& axis, const std::vector<std::string>& labels) {
    std::vector<bool> out(labels.size(), false);
    for (const auto& dist : axis.classes) {
      for (std::size_t c = 0; c < labels.size(); ++c) {
        auto it = dist.find(labels[c]);
        if (it != dist.end() && it->second.sign() > 0) out[c] = true;
      }
    }
    return out;
  };
  const auto row_occurs = occurring(s.row_axis(), rl);
  const auto col_occurs = occurring(s.col_axis(), cl);

  for (std::size_t a = 0; a < rl.size(); ++a) {
    if (!row_occurs[a]) continue;
    for (int j = 0; j < s.parts(); ++j) {
      Rational mass;
      for (std::size_t i = 0; i < s.col_axis().classes.size(); ++i) {
        const Rational len = interval_length(s.col_axis().breakpoints, static_cast<int>(i));
        const auto& dist = s.col_interval_classes(static_cast<int>(i));
        for (std::size_t b = 0; b < cl.size(); ++b) {
          mass += len * dist[b] * s.mixture(static_cast<int>(a), static_cast<int>(b))[static_cast<std::size_t>(j)];
        }
      }
      const Rational target = interval_length(vb, j);
      if (mass != target) {
        add(AxiomViolation::Kind::RowMarginal, "row class " + rl[a] + ", part " + std::to_string(j), mass, target);
      }
    }
  }
  for (std::size_t b = 0; b < cl.size(); ++b) {
    if (!col_occurs[b]) continue;
    for (int j = 0; j < s.parts(); ++j) {
      Rational mass;
      for (std::size_t i = 0; i < s.row_axis().classes.size(); ++i) {
        const Rational len = interval_length(s.row_axis().breakpoints, static_cast<int>(i));
        const auto& dist = s.row_interval_classes(static_cast<int>(i));
        for (std::size_t a = 0; a < rl.size(); ++a) {
          mass += len * dist[a] * s.mixture(static_cast<int>(a), static_cast<int>(b))[static_cast<std::size_t>(j)];
        }
      }
      const Rational target = interval_length(vb, j);
      if (mass != target) {
        add(AxiomViolation::Kind::ColumnMarginal, "column class " + cl[b] + ", part " + std::to_string(j), mass,
            target);
      }
    }
  }
  return report;
}

std::map<std::vector<int>, Rational> sorted_interval_distribution(const AxisModel& axis, int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "need at least one point");
  const int p = static_cast<int>(axis.classes.size());
  std::vector<Rational> lengths;
  for (int i = 0; i < p; ++i) lengths.push_back(interval_length(axis.breakpoints, i));

  std::map<std::vector<int>, Rational> out;
  std::vector<int> seq(static_cast<std::size_t>(k));
  // Non-decreasing sequences carry probability k!/prod(c_j!) * prod(len_j^c_j).
  std::function<void(int, int)> rec = [&](int pos, int first) {
    if (pos == k) {
      Rational prob(BigInt(factorial(static_cast<unsigned>(k))), BigInt(1));
      int run = 1;
      for (int i = 0; i < k; ++i) {
        prob *= lengths[static_cast<std::size_t>(seq[static_cast<std::size_t>(i)])];
        if (i > 0 && seq[static_cast<std::size_t>(i)] == seq[static_cast<std::size_t>(i - 1)]) {
          ++run;
          prob /= Rational(run);
        } else {
          run = 1;
        }
      }
      out.emplace(seq, prob);
      return;
    }
    for (int i = first; i < p; ++i) {
      seq[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1, i);
    }
  };
  rec(0, 0);
  return out;
}

std::map<std::vector<int>, Rational> sorted_class_distribution(const StepLatinon& s, bool rows, int k) {
  const auto& axis = rows ? s.row_axis() : s.col_axis();
  std::map<std::vector<int>, Rational> out;
  std::vector<int> classes(static_cast<std::size_t>(k));
  for (const auto& [intervals, prob] : sorted_interval_distribution(axis, k)) {
    std::function<void(int, const Rational&)> rec = [&](int pos, const Rational& weight) {
      if (pos == k) {
        out[classes] += weight;
        return;
      }
      const int interval = intervals[static_cast<std::size_t>(pos)];
      const auto& dist = rows ? s.row_interval_classes(interval) : s.col_interval_classes(interval);
      for (std::size_t c = 0; c < dist.size(); ++c) {
        if (dist[c].is_zero()) continue;
        classes[static_cast<std::size_t>(pos)] = static_cast<int>(c);
        rec(pos + 1, weight * dist[c]);
      }
    };
    rec(0, prob);
  }
  return out;
}

std::vector<int> sample_sorted_intervals(const AxisModel& axis, int k, Rng& rng) {
  std::vector<double> upper;
  for (std::size_t i = 1; i < axis.breakpoints.size(); ++i) upper.push_back(axis.breakpoints[i].to_double());
  std::vector<int> out(static_cast<std::size_t>(k));
  for (auto& v : out) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(upper.begin(), upper.end(), u);
    v = static_cast<int>(std::min<std::ptrdiff_t>(it - upper.begin(), static_cast<std::ptrdiff_t>(upper.size()) - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational conditional_pattern_probability(const StepLatinon& s, const GeneralizedPattern& pattern,
                                         const std::vector<int>& row_classes, const std::vector<int>& col_classes) {
  const auto chain = pattern.cells_by_rank();
  const int l = pattern.cols();
  const int r = s.parts();
  Rational total;
  std::vector<int> counts(static_cast<std::size_t>(r), 0);
  // Parts must be non-decreasing along the rank order; inside a part the
  // values are i.i.d. uniform, so the prescribed order has probability
  // 1/(count)!.
  std::function<void(std::size_t, int, const Rational&)> rec = [&](std::size_t i, int min_part,
                                                                  const Rational& weight) {
    if (i == chain.size()) {
      Rational p = weight;
      for (int c : counts) p *= inverse_factorial(c);
      total += p;
      return;
    }
    const int cell = chain[i];
    const auto& mix = s.mixture(row_classes[static_cast<std::size_t>(cell / l)],
                                col_classes[static_cast<std::size_t>(cell % l)]);
    for (int j = min_part; j < r; ++j) {
      if (mix[static_cast<std::size_t>(j)].is_zero()) continue;
      ++counts[static_cast<std::size_t>(j)];
      rec(i + 1, j, weight * mix[static_cast<std::size_t>(j)]);
      --counts[static_cast<std::size_t>(j)];
    }
  };
  rec(0, 0, Rational(1));
  return total;
}

Rational exact_density(const StepLatinon& s, const GeneralizedPattern& pattern) {
  require_enumerable(s, pattern.rows(), pattern.cols());
  require_normalized(s);
  const auto rows = sorted_class_distribution(s, true, pattern.rows());
  const auto cols = sorted_class_distribution(s, false, pattern.cols());
  Rational total;
  for (const auto& [rc, pr] : rows) {
    for (const auto& [cc, pc] : cols) {
      const Rational cond = conditional_pattern_probability(s, pattern, rc, cc);
      if (!cond.is_zero()) total += pr * pc * cond;
    }
  }
  return total;
}

Rational exact_density(const StepLatinon& s, const Pattern& pattern) {
  return exact_density(s, GeneralizedPattern::from_pattern(pattern));
}

std::map<std::vector<int>, Rational> block_matrix_distribution(const StepLatinon& s, int k, int l) {
  require_enumerable(s, k, l);
  require_normalized(s);
  const auto rows = sorted_class_distribution(s, true, k);
  const auto cols = sorted_class_distribution(s, false, l);
  std::vector<int> cells(static_cast<std::size_t>(k * l));
  for (int i = 0; i < k * l; ++i) cells[static_cast<std::size_t>(i)] = i;
  std::map<std::vector<int>, Rational> out;
  for (const auto& [rc, pr] : rows) {
    for (const auto& [cc, pc] : cols) {
      if (assignment_count(s, l, cells, rc, cc) > (1u << 20)) {
        throw Error(Errc::EnumerationBoundExceeded, "too many support matrices");
      }
      const Rational base = pr * pc;
      for_each_assignment(s, l, cells, rc, cc,
                          [&](const std::vector<int>& parts, const Rational& w) { out[parts] += base * w; });
    }
  }
  return out;
}

std::vector<Rational> exact_all_densities(const StepLatinon& s, int k, int l) {
  if (k * l > kMaxEnumerable) {
    throw Error(Errc::TooLarge, "bulk densities are limited to k*l <= " + std::to_string(kMaxEnumerable));
  }
  const auto blocks = block_matrix_distribution(s, k, l);
  const int cells = k * l;
  const int r = s.parts();

  // Given the support matrix, a pattern occurs with probability
  // prod_j 1/(count_j)! when the ranks respect the part order, else 0.
  struct Block {
    std::vector<int> parts;
    Rational weight;
  };
  std::vector<Block> weighted;
  for (const auto& [parts, prob] : blocks) {
    std::vector<int> counts(static_cast<std::size_t>(r), 0);
    for (int p : parts) ++counts[static_cast<std::size_t>(p)];
    Rational w = prob;
    for (int c : counts) w *= inverse_factorial(c);
    weighted.push_back({parts, std::move(w)});
  }

  std::vector<Rational> out;
  out.reserve(pattern_count(k, l));
  std::vector<int> entries(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) entries[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> lo(static_cast<std::size_t>(r));
  std::vector<int> hi(static_cast<std::size_t>(r));
  do {
    Rational density;
    for (const auto& block : weighted) {
      std::fill(lo.begin(), lo.end(), cells + 1);
      std::fill(hi.begin(), hi.end(), 0);
      for (int c = 0; c < cells; ++c) {
        const auto part = static_cast<std::size_t>(block.parts[static_cast<std::size_t>(c)]);
        lo[part] = std::min(lo[part], entries[static_cast<std::size_t>(c)]);
        hi[part] = std::max(hi[part], entries[static_cast<std::size_t>(c)]);
      }
      bool consistent = true;
      int below = 0;
      for (int j = 0; j < r && consistent; ++j) {
        if (hi[static_cast<std::size_t>(j)] == 0) continue;
        consistent = lo[static_cast<std::size_t>(j)] > below;
        below = hi[static_cast<std::size_t>(j)];
      }
      if (consistent) density += block.weight;
    }
    out.push_back(std::move(density));
  } while (std::next_permutation(entries.begin(), entries.end()));
  return out;
}

McEstimate rb_mc_density(const StepLatinon& s, const GeneralizedPattern& pattern, std::uint64_t samples,
                         std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw Error(Errc::ZeroSamples, "Monte Carlo needs at least one sample");
  require_enumerable(s, pattern.rows(), pattern.cols());
  require_normalized(s);
  const int k = pattern.rows();
  const int l = pattern.cols();

  const auto cumulative = [](const std::vector<Rational>& dist) {
    std::vector<double> out;
    Rational acc;
    for (const auto& w : dist) {
      acc += w;
      out.push_back(acc.to_double());
    }
    return out;
  };
  std::vector<std::vector<double>> row_cum;
  std::vector<std::vector<double>> col_cum;
  for (int i = 0; i < static_cast<int>(s.row_axis().classes.size()); ++i) row_cum.push_back(cumulative(s.row_interval_classes(i)));
  for (int i = 0; i < static_cast<int>(s.col_axis().classes.size()); ++i) col_cum.push_back(cumulative(s.col_interval_classes(i)));
  const auto draw_class = [](const std::vector<double>& cum, Rng& rng) {
    const double u = rng.uniform() * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1));
  };

  // Each sample contributes the exact conditional probability of its class
  // configuration, so the estimator is a finite mixture: count the
  // configurations per worker (integer merge) and combine them exactly.
  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  const unsigned workers = detail::resolve_threads(threads);
  std::vector<std::map<std::vector<int>, std::uint64_t>> tallies(workers);
  detail::parallel_workers(blocks, workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    std::vector<int> config(static_cast<std::size_t>(k + l));
    auto& tally = tallies[w];
    for (std::size_t b = begin; b < end; ++b) {
      Rng rng(block_key(seed, b));
      const std::uint64_t count = std::min<std::uint64_t>(kMcBlockSize, samples - b * kMcBlockSize);
      for (std::uint64_t i = 0; i < count; ++i) {
        const auto ri = sample_sorted_intervals(s.row_axis(), k, rng);
        const auto ci = sample_sorted_intervals(s.col_axis(), l, rng);
        for (int a = 0; a < k; ++a) {
          config[static_cast<std::size_t>(a)] =
              draw_class(row_cum[static_cast<std::size_t>(ri[static_cast<std::size_t>(a)])], rng);
        }
        for (int c = 0; c < l; ++c) {
          config[static_cast<std::size_t>(k + c)] =
              draw_class(col_cum[static_cast<std::size_t>(ci[static_cast<std::size_t>(c)])], rng);
        }
        ++tally[config];
      }
    }
  });
  std::map<std::vector<int>, std::uint64_t> merged;
  for (const auto& tally : tallies) {
    for (const auto& [config, count] : tally) merged[config] += count;
  }
  Rational mean;
  Rational second;
  const Rational n(BigInt(static_cast<unsigned long>(samples)), BigInt(1));
  for (const auto& [config, count] : merged) {
    const std::vector<int> rc(config.begin(), config.begin() + k);
    const std::vector<int> cc(config.begin() + k, config.end());
    const Rational cond = conditional_pattern_probability(s, pattern, rc, cc);
    const Rational weight = Rational(BigInt(static_cast<unsigned long>(count)), BigInt(1)) / n;
    mean += weight * cond;
    second += weight * cond * cond;
  }
  McEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.estimate = mean.to_double();
  if (samples > 1) {
    // Unbiased sample variance of the per-sample contributions.
    const Rational var = (second - mean * mean) * n / (n - Rational(1));
    e.std_error = std::sqrt(var.to_double() / static_cast<double>(samples));
  }
  return e;
}

McEstimate rb_mc_density(const StepLatinon& s, const Pattern& pattern, std::uint64_t samples, std::uint64_t seed,
                         unsigned threads) {
  return rb_mc_density(s, GeneralizedPattern::from_pattern(pattern), samples, seed, threads);
}

}  // namespace latinpat
