#include "latinpat/generators.hpp"

#include "latinpat/error.hpp"
#include "latinpat/random.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace latinpat {

ClassVector::ClassVector(std::vector<int> classes) : classes_(std::move(classes)) {
  int zeros = 0;
  int ones = 0;
  for (int c : classes_) {
    if (c == 0) {
      ++zeros;
    } else if (c == 1) {
      ++ones;
    } else {
      throw Error(Errc::UnbalancedClassVector, "class labels must be 0 or 1");
    }
  }
  if (zeros != ones || classes_.empty()) {
    throw Error(Errc::UnbalancedClassVector,
                "class vector has " + std::to_string(zeros) + " zeros and " + std::to_string(ones) + " ones");
  }
}

LatinSquare gen_cyclic(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cells.push_back((i + j) % n + 1);
  }
  return latin_from_cells_unchecked(n, std::move(cells));
}

namespace {

// Incidence cube of a (possibly improper) Latin square. Every line holds
// entries summing to 1; an improper square has exactly one -1 cell.
class JacobsonMatthews {
 public:
  explicit JacobsonMatthews(int n)
      : n_(n),
        cube_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
        sym_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)),
        col_(sym_.size()),
        row_(sym_.size()) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) set_positive(r, c, (r + c) % n);
    }
  }

  bool proper() const noexcept { return !improper_; }

  void step(Rng& rng) {
    int r, c, s, s1, c1, r1;
    if (!improper_) {
      r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_)));
      c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_)));
      s1 = sym_[idx(r, c)];
      s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_ - 1)));
      if (s >= s1) ++s;
      c1 = col_[idx(r, s)];
      r1 = row_[idx(c, s)];
    } else {
      r = bad_[0];
      c = bad_[1];
      s = bad_[2];
      const auto syms = positives([&](int i) { return at(r, c, i); });
      const auto cols = positives([&](int i) { return at(r, i, s); });
      const auto rows = positives([&](int i) { return at(i, c, s); });
      const int pick_s = static_cast<int>(rng.below(2));
      const int pick_c = static_cast<int>(rng.below(2));
      const int pick_r = static_cast<int>(rng.below(2));
      s1 = syms[static_cast<std::size_t>(pick_s)];
      c1 = cols[static_cast<std::size_t>(pick_c)];
      r1 = rows[static_cast<std::size_t>(pick_r)];
      // The unchosen positive entries become the sole +1 of their lines.
      sym_[idx(r, c)] = syms[static_cast<std::size_t>(1 - pick_s)];
      col_[idx(r, s)] = cols[static_cast<std::size_t>(1 - pick_c)];
      row_[idx(c, s)] = rows[static_cast<std::size_t>(1 - pick_r)];
    }
    at(r, c, s) += 1;
    at(r, c1, s1) += 1;
    at(r1, c, s1) += 1;
    at(r1, c1, s) += 1;
    at(r, c, s1) -= 1;
    at(r, c1, s) -= 1;
    at(r1, c, s) -= 1;
    at(r1, c1, s1) -= 1;
    for (const auto& [pr, pc, ps] : {std::array{r, c, s}, std::array{r, c1, s1}, std::array{r1, c, s1},
                                     std::array{r1, c1, s}}) {
      if (at(pr, pc, ps) == 1) set_positive(pr, pc, ps);
    }
    improper_ = at(r1, c1, s1) == -1;
    if (improper_) bad_ = {r1, c1, s1};
  }

  std::vector<int> cells() const {
    std::vector<int> out(sym_.size());
    for (std::size_t i = 0; i < sym_.size(); ++i) out[i] = sym_[i] + 1;
    return out;
  }

 private:
  std::size_t idx(int a, int b) const noexcept { return static_cast<std::size_t>(a * n_ + b); }
  std::int8_t& at(int r, int c, int s) noexcept {
    return cube_[(static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c)) *
                     static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(s)];
  }
  void set_positive(int r, int c, int s) noexcept {
    at(r, c, s) = 1;
    sym_[idx(r, c)] = s;
    col_[idx(r, s)] = c;
    row_[idx(c, s)] = r;
  }
  template <class Entry>
  std::array<int, 2> positives(Entry entry) const {
    std::array<int, 2> out{-1, -1};
    int found = 0;
    for (int i = 0; i < n_ && found < 2; ++i) {
      if (entry(i) == 1) out[static_cast<std::size_t>(found++)] = i;
    }
    return out;
  }
  std::int8_t at(int r, int c, int s) const noexcept {
    return cube_[(static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c)) *
                     static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(s)];
  }

  int n_;
  std::vector<std::int8_t> cube_;
  // Positive entry of each (row, col), (row, symbol) and (col, symbol) line;
  // stale only for the three lines through the -1 cell.
  std::vector<int> sym_;
  std::vector<int> col_;
  std::vector<int> row_;
  bool improper_ = false;
  std::array<int, 3> bad_{};
};

}  // namespace

LatinSquare gen_jm(int n, std::uint64_t seed, std::optional<std::uint64_t> steps) {
  if (n < 2) throw Error(Errc::InvalidArgument, "Jacobson-Matthews walk needs order >= 2");
  const std::uint64_t moves = steps.value_or(default_jm_steps(n));
  if (moves < 1) throw Error(Errc::InvalidArgument, "steps must be >= 1");
  JacobsonMatthews walk(n);
  Rng rng(derive_seed(seed, "jm"));
  for (std::uint64_t i = 0; i < moves; ++i) walk.step(rng);
  while (!walk.proper()) walk.step(rng);
  return latin_from_cells_unchecked(n, walk.cells());
}

LatinSquare blowup(const LatinSquare& inner, const ClassVector& classes) {
  const int m = inner.order();
  if (classes.size() != 2 * m) {
    throw Error(Errc::UnbalancedClassVector, "class vector length must be twice the inner order");
  }
  const int n = 2 * m;
  std::vector<int> rank(static_cast<std::size_t>(n));
  std::array<int, 2> seen{0, 0};
  for (int p = 0; p < n; ++p) rank[static_cast<std::size_t>(p)] = seen[static_cast<std::size_t>(classes[p])]++;
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const int base = inner.at(rank[static_cast<std::size_t>(p)], rank[static_cast<std::size_t>(q)]);
      cells.push_back(base + (classes[p] != classes[q] ? m : 0));
    }
  }
  return latin_from_cells_unchecked(n, std::move(cells));
}

ClassVector parity_classes(int m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be positive");
  std::vector<int> out(static_cast<std::size_t>(2 * m));
  for (int i = 0; i < 2 * m; ++i) out[static_cast<std::size_t>(i)] = i % 2;
  return ClassVector(std::move(out));
}

ClassVector quadrant_classes(int m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be positive");
  if (m % 2 != 0) {
    throw Error(Errc::QuadrantLengthNotDivisibleBy4,
                "quadrant classes need length divisible by 4, got " + std::to_string(2 * m));
  }
  const int quarter = m / 2;
  std::vector<int> out(static_cast<std::size_t>(2 * m), 0);
  for (int i = quarter; i < 2 * m - quarter; ++i) out[static_cast<std::size_t>(i)] = 1;
  return ClassVector(std::move(out));
}

}  // namespace latinpat

namespace latinpat {

LatinSquare generate_square(const std::string& kind, int order, std::uint64_t seed,
                            std::optional<std::uint64_t> steps, const LatinSquare* inner) {
  if (order < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  if (kind == "cyclic") return gen_cyclic(order);
  if (kind == "jm") return gen_jm(order, seed, steps);
  const bool parity = kind == "parity-blowup";
  if (!parity && kind != "quadrant-blowup") throw Error(Errc::InvalidArgument, "unknown square kind '" + kind + "'");
  if (order % 2 != 0) throw Error(Errc::InvalidArgument, kind + " needs an even order");
  const int m = order / 2;
  const ClassVector classes = parity ? parity_classes(m) : quadrant_classes(m);
  if (inner) {
    if (inner->order() != m) {
      throw Error(Errc::InvalidArgument, "inner square must have order " + std::to_string(m));
    }
    return blowup(*inner, classes);
  }
  const LatinSquare base = m >= 2 ? gen_jm(m, derive_seed(seed, "inner"), steps) : gen_cyclic(1);
  return blowup(base, classes);
}

}  // namespace latinpat
