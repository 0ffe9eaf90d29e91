#pragma once

// Slow reference implementations used only by the tests. None of them call
// into the engines they check.

#include "latinpat/latin_square.hpp"
#include "latinpat/latinon.hpp"
#include "latinpat/pattern.hpp"
#include "latinpat/rational.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

using latinpat::GeneralizedPattern;
using latinpat::LatinSquare;
using latinpat::Rational;
using latinpat::StepLatinon;

// Calls f(indices) for every increasing k-subset of [0, n).
template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Pairwise comparison of every two constrained cells over all submatrices.
inline Rational square_density(const LatinSquare& square, const GeneralizedPattern& g) {
  const int n = square.order();
  const int k = g.rows();
  const int l = g.cols();
  long long hits = 0;
  long long total = 0;
  for_each_subset(n, k, [&](const std::vector<int>& rows) {
    for_each_subset(n, l, [&](const std::vector<int>& cols) {
      ++total;
      bool ok = true;
      for (int a = 0; a < k * l && ok; ++a) {
        for (int b = 0; b < k * l && ok; ++b) {
          const int pa = g.entries()[static_cast<std::size_t>(a)];
          const int pb = g.entries()[static_cast<std::size_t>(b)];
          if (pa == 0 || pb == 0 || pa >= pb) continue;
          const int va = square.at(rows[static_cast<std::size_t>(a / l)], cols[static_cast<std::size_t>(a % l)]);
          const int vb = square.at(rows[static_cast<std::size_t>(b / l)], cols[static_cast<std::size_t>(b % l)]);
          ok = va < vb;
        }
      }
      hits += ok;
    });
  });
  if (total == 0) return Rational(0);
  return Rational(hits, total);
}

// Calls f(tuple) for every tuple in [0, base)^len.
template <class F>
void for_each_tuple(int base, int len, F&& f) {
  std::vector<int> t(static_cast<std::size_t>(len), 0);
  while (true) {
    f(t);
    int i = len - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == base - 1) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
  }
}

// Probability that cells with the given parts come out in pattern order when
// each value is uniform on its part.
inline Rational ordered_given_parts(const GeneralizedPattern& g, const std::vector<int>& parts) {
  std::vector<std::pair<int, int>> ranked;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (g.entries()[i] != 0) ranked.emplace_back(g.entries()[i], parts[i]);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> per_part(8, 0);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i > 0 && ranked[i - 1].second > ranked[i].second) return Rational(0);
    ++per_part[static_cast<std::size_t>(ranked[i].second)];
  }
  Rational p(1);
  for (int c : per_part) p = p / Rational(latinpat::factorial(static_cast<unsigned>(c)), latinpat::BigInt(1));
  return p;
}

// Unsorted i.i.d. interval tuples, every class assignment and every part
// assignment per cell, weighted and summed.
inline Rational latinon_density(const StepLatinon& w, const GeneralizedPattern& g) {
  const int k = g.rows();
  const int l = g.cols();
  const auto lengths = [](const latinpat::AxisModel& axis) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < axis.breakpoints.size(); ++i) {
      out.push_back(axis.breakpoints[i + 1] - axis.breakpoints[i]);
    }
    return out;
  };
  // Distribution of the classes of sorted positions, as (classes, weight).
  const auto class_tuples = [&](bool rows, int count) {
    const auto& axis = rows ? w.row_axis() : w.col_axis();
    const auto len = lengths(axis);
    const int labels = static_cast<int>(rows ? w.row_labels().size() : w.col_labels().size());
    std::vector<std::pair<std::vector<int>, Rational>> out;
    for_each_tuple(static_cast<int>(len.size()), count, [&](const std::vector<int>& intervals) {
      Rational weight(1);
      for (int i : intervals) weight = weight * len[static_cast<std::size_t>(i)];
      std::vector<int> sorted = intervals;
      std::sort(sorted.begin(), sorted.end());
      for_each_tuple(labels, count, [&](const std::vector<int>& classes) {
        Rational cw = weight;
        for (int j = 0; j < count; ++j) {
          const auto& dist = rows ? w.row_interval_classes(sorted[static_cast<std::size_t>(j)])
                                  : w.col_interval_classes(sorted[static_cast<std::size_t>(j)]);
          cw = cw * dist[static_cast<std::size_t>(classes[static_cast<std::size_t>(j)])];
        }
        if (!cw.is_zero()) out.emplace_back(classes, cw);
      });
    });
    return out;
  };
  Rational total(0);
  for (const auto& [rc, rw] : class_tuples(true, k)) {
    for (const auto& [cc, cw] : class_tuples(false, l)) {
      for_each_tuple(w.parts(), k * l, [&](const std::vector<int>& parts) {
        Rational p = rw * cw;
        for (int a = 0; a < k && !p.is_zero(); ++a) {
          for (int b = 0; b < l && !p.is_zero(); ++b) {
            const auto& mix = w.mixture(rc[static_cast<std::size_t>(a)], cc[static_cast<std::size_t>(b)]);
            p = p * mix[static_cast<std::size_t>(parts[static_cast<std::size_t>(a * l + b)])];
          }
        }
        if (!p.is_zero()) total = total + p * ordered_given_parts(g, parts);
      });
    }
  }
  return total;
}

// Tries every ordering of the constrained entries.
inline bool eliminable_by_orderings(const GeneralizedPattern& g) {
  std::vector<int> order;
  for (int v : g.entries()) {
    if (v != 0) order.push_back(v);
  }
  std::sort(order.begin(), order.end());
  const int l = g.cols();
  do {
    std::vector<bool> gone(g.entries().size(), false);
    bool ok = true;
    for (int v : order) {
      std::size_t cell = 0;
      while (g.entries()[cell] != v) ++cell;
      const int r = static_cast<int>(cell) / l;
      const int c = static_cast<int>(cell) % l;
      bool row_first = true;
      bool col_first = true;
      for (int j = 0; j < l; ++j) {
        const auto other = static_cast<std::size_t>(r * l + j);
        if (other != cell && g.entries()[other] != 0 && !gone[other]) row_first = false;
      }
      for (int i = 0; i < g.rows(); ++i) {
        const auto other = static_cast<std::size_t>(i * l + c);
        if (other != cell && g.entries()[other] != 0 && !gone[other]) col_first = false;
      }
      if (!row_first && !col_first) {
        ok = false;
        break;
      }
      gone[cell] = true;
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace oracle
