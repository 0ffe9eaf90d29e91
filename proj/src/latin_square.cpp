#include "latinpat/latin_square.hpp"

#include "latinpat/error.hpp"

#include <cassert>
#include <string>

namespace latinpat {

std::vector<std::vector<int>> LatinSquare::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(order_));
  for (int r = 0; r < order_; ++r) {
    auto span = row(r);
    out[static_cast<std::size_t>(r)].assign(span.begin(), span.end());
  }
  return out;
}

LatinSquare LatinSquare::transposed() const {
  std::vector<int> out(cells_.size());
  for (int r = 0; r < order_; ++r) {
    for (int c = 0; c < order_; ++c) out[static_cast<std::size_t>(c * order_ + r)] = at(r, c);
  }
  return {order_, std::move(out)};
}

LatinSquare LatinSquare::complemented() const {
  std::vector<int> out(cells_);
  for (int& s : out) s = order_ + 1 - s;
  return {order_, std::move(out)};
}

LatinSquare LatinSquare::rows_reversed() const {
  std::vector<int> out(cells_.size());
  for (int r = 0; r < order_; ++r) {
    for (int c = 0; c < order_; ++c) out[static_cast<std::size_t>((order_ - 1 - r) * order_ + c)] = at(r, c);
  }
  return {order_, std::move(out)};
}

LatinSquare LatinSquare::cols_reversed() const {
  std::vector<int> out(cells_.size());
  for (int r = 0; r < order_; ++r) {
    for (int c = 0; c < order_; ++c) out[static_cast<std::size_t>(r * order_ + (order_ - 1 - c))] = at(r, c);
  }
  return {order_, std::move(out)};
}

LatinSquare validate_latin(const std::vector<std::vector<int>>& grid) {
  const auto n = static_cast<int>(grid.size());
  if (n == 0) throw Error(Errc::NotSquare, "empty grid");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(grid[static_cast<std::size_t>(r)].size()) != n) {
      throw Error(Errc::NotSquare, "row " + std::to_string(r + 1) + " has " +
                                       std::to_string(grid[static_cast<std::size_t>(r)].size()) +
                                       " entries, expected " + std::to_string(n), r + 1);
    }
  }
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int s = grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (s < 1 || s > n) {
        throw Error(Errc::SymbolOutOfRange,
                    "symbol " + std::to_string(s) + " at (" + std::to_string(r + 1) + "," +
                        std::to_string(c + 1) + ") is outside 1.." + std::to_string(n),
                    r + 1, c + 1);
      }
      cells.push_back(s);
    }
  }
  std::vector<int> seen(static_cast<std::size_t>(n) + 1);
  int stamp = 0;
  for (int r = 0; r < n; ++r) {
    ++stamp;
    for (int c = 0; c < n; ++c) {
      int& mark = seen[static_cast<std::size_t>(cells[static_cast<std::size_t>(r * n + c)])];
      if (mark == stamp) {
        throw Error(Errc::DuplicateInRow, "row " + std::to_string(r + 1) + " repeats symbol " +
                                              std::to_string(cells[static_cast<std::size_t>(r * n + c)]),
                    r + 1, 0);
      }
      mark = stamp;
    }
  }
  for (int c = 0; c < n; ++c) {
    ++stamp;
    for (int r = 0; r < n; ++r) {
      int& mark = seen[static_cast<std::size_t>(cells[static_cast<std::size_t>(r * n + c)])];
      if (mark == stamp) {
        throw Error(Errc::DuplicateInColumn, "column " + std::to_string(c + 1) + " repeats symbol " +
                                                 std::to_string(cells[static_cast<std::size_t>(r * n + c)]),
                    0, c + 1);
      }
      mark = stamp;
    }
  }
  return {n, std::move(cells)};
}

LatinSquare latin_from_cells_unchecked(int order, std::vector<int> cells) {
  LatinSquare out(order, std::move(cells));
#ifndef NDEBUG
  (void)validate_latin(out.rows());
#endif
  return out;
}

}  // namespace latinpat
