#pragma once

#include "latinpat/latin_square.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latinpat {

// Two-class labelling of 2m positions with m zeros and m ones.
class ClassVector {
 public:
  // Throws UnbalancedClassVector unless labels are 0/1 with equal counts.
  explicit ClassVector(std::vector<int> classes);

  int size() const noexcept { return static_cast<int>(classes_.size()); }
  int operator[](int i) const noexcept { return classes_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const noexcept { return classes_; }

 private:
  std::vector<int> classes_;
};

// L[i][j] = ((i + j) mod n) + 1 with 0-based i, j.
LatinSquare gen_cyclic(int n);

inline std::uint64_t default_jm_steps(int n) {
  return 5ULL * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

// Jacobson-Matthews walk started from the cyclic square. Performs `steps`
// +-1 moves (default 5 n^3), then continues until the square is proper.
LatinSquare gen_jm(int n, std::uint64_t seed, std::optional<std::uint64_t> steps = std::nullopt);

// Order-2m square: L[p][q] = M[a][b] + m * [c_p != c_q], where a is the rank
// of p among positions of class c_p (b likewise for q).
LatinSquare blowup(const LatinSquare& inner, const ClassVector& classes);

// (0,1,0,1,...) of length 2m.
ClassVector parity_classes(int m);
// Length 2m = 4t: zeros on the first and last quarter, ones in the middle.
ClassVector quadrant_classes(int m);

}  // namespace latinpat

namespace latinpat {

// Square of the given kind: "cyclic", "jm", "parity-blowup" or
// "quadrant-blowup". Blow-ups use `inner` when given (order must be half of
// `order`), otherwise a jm square of order/2 seeded from derive_seed(seed,
// "inner"); order 2 blow-ups default to the order-1 square.
LatinSquare generate_square(const std::string& kind, int order, std::uint64_t seed,
                            std::optional<std::uint64_t> steps = std::nullopt, const LatinSquare* inner = nullptr);

}  // namespace latinpat
