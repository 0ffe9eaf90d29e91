#pragma once

#include <span>
#include <vector>

namespace latinpat {

// An n x n grid in which every row and column is a permutation of 1..n.
// Instances are only produced by validate_latin (or by transforms that
// preserve the property), so every LatinSquare is valid.
class LatinSquare {
 public:
  int order() const noexcept { return order_; }
  // 0-based indices, 1-based symbol.
  int at(int row, int col) const noexcept { return cells_[static_cast<std::size_t>(row * order_ + col)]; }
  std::span<const int> row(int r) const noexcept {
    return {cells_.data() + static_cast<std::size_t>(r * order_), static_cast<std::size_t>(order_)};
  }
  std::span<const int> cells() const noexcept { return cells_; }
  std::vector<std::vector<int>> rows() const;

  LatinSquare transposed() const;
  // Symbol s becomes n + 1 - s.
  LatinSquare complemented() const;
  LatinSquare rows_reversed() const;
  LatinSquare cols_reversed() const;

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  friend LatinSquare validate_latin(const std::vector<std::vector<int>>& grid);
  friend LatinSquare latin_from_cells_unchecked(int order, std::vector<int> cells);
  LatinSquare(int order, std::vector<int> cells) : order_(order), cells_(std::move(cells)) {}

  int order_ = 0;
  std::vector<int> cells_;
};

// Checks symbols first, then rows top to bottom, then columns left to right,
// and throws Error naming the first offence (1-based row/column).
LatinSquare validate_latin(const std::vector<std::vector<int>>& grid);

// For generators whose output is Latin by construction; still runs the full
// validation in debug builds.
LatinSquare latin_from_cells_unchecked(int order, std::vector<int> cells);

}  // namespace latinpat
