#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latinpat {

// Largest k*l for which whole pattern lists are materialised.
inline constexpr int kMaxEnumerable = 10;
// Largest k*l a PatternId can address (20! < 2^64).
inline constexpr int kMaxPatternCells = 20;

// Lexicographic rank of the row-major entry sequence among all permutations
// of 1..k*l.
struct PatternId {
  std::uint64_t value = 0;
  friend auto operator<=>(const PatternId&, const PatternId&) = default;
};

// k x l grid holding each of 1..k*l exactly once, stored row-major.
class Pattern {
 public:
  // Throws Error(InvalidPattern) unless rows form a k x l grid of 1..k*l.
  static Pattern from_rows(const std::vector<std::vector<int>>& rows);
  static Pattern from_entries(int k, int l, std::vector<int> entries);

  int rows() const noexcept { return k_; }
  int cols() const noexcept { return l_; }
  int size() const noexcept { return k_ * l_; }
  int at(int r, int c) const noexcept { return entries_[static_cast<std::size_t>(r * l_ + c)]; }
  std::span<const int> entries() const noexcept { return entries_; }
  std::vector<std::vector<int>> grid() const;
  std::string str() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Pattern(int k, int l, std::vector<int> entries) : k_(k), l_(l), entries_(std::move(entries)) {}
  int k_ = 0;
  int l_ = 0;
  std::vector<int> entries_;
};

// Pattern with holes. Non-hole entries are exactly 1..m; no row or column is
// entirely holes.
class GeneralizedPattern {
 public:
  static constexpr int kHole = 0;

  // Throws Error(InvalidPattern) on any invariant violation.
  static GeneralizedPattern from_entries(int k, int l, std::vector<int> entries);
  static GeneralizedPattern from_rows(const std::vector<std::vector<int>>& rows);
  static GeneralizedPattern from_pattern(const Pattern& p);

  int rows() const noexcept { return k_; }
  int cols() const noexcept { return l_; }
  // Number of non-hole entries.
  int constrained() const noexcept { return static_cast<int>(by_rank_.size()); }
  int at(int r, int c) const noexcept { return entries_[static_cast<std::size_t>(r * l_ + c)]; }
  bool is_hole(int r, int c) const noexcept { return at(r, c) == kHole; }
  bool has_holes() const noexcept { return constrained() != k_ * l_; }
  std::span<const int> entries() const noexcept { return entries_; }
  // Row-major cell indices of the non-hole entries, ordered by rank 1..m.
  std::span<const int> cells_by_rank() const noexcept { return by_rank_; }
  std::string str() const;

  friend bool operator==(const GeneralizedPattern& a, const GeneralizedPattern& b) {
    return a.k_ == b.k_ && a.l_ == b.l_ && a.entries_ == b.entries_;
  }

 private:
  GeneralizedPattern(int k, int l, std::vector<int> entries, std::vector<int> by_rank)
      : k_(k), l_(l), entries_(std::move(entries)), by_rank_(std::move(by_rank)) {}
  int k_ = 0;
  int l_ = 0;
  std::vector<int> entries_;
  std::vector<int> by_rank_;
};

// (k*l)! as a 64-bit integer; throws TooLarge above kMaxPatternCells.
std::uint64_t pattern_count(int k, int l);

PatternId pattern_id(const Pattern& p);
// Throws IdOutOfRange for id >= (k*l)!.
Pattern pattern_from_id(int k, int l, PatternId id);

// All (k*l)! patterns in PatternId order; throws TooLarge if k*l > 10.
std::vector<Pattern> enumerate_patterns(int k, int l);

// Lexicographic rank of a permutation of 0..n-1 (or any distinct values,
// ranked by relative order) and its inverse.
std::uint64_t permutation_rank(std::span<const int> values);
std::vector<int> permutation_unrank(int n, std::uint64_t rank);

Pattern transpose(const Pattern& p);
// Reverses the row order.
Pattern vflip(const Pattern& p);
// Reverses the column order.
Pattern hflip(const Pattern& p);
// a -> k*l + 1 - a.
Pattern complement(const Pattern& p);

GeneralizedPattern transpose(const GeneralizedPattern& p);

}  // namespace latinpat
