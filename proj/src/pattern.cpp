#include "latinpat/pattern.hpp"

#include "latinpat/error.hpp"

#include <algorithm>
#include <sstream>

namespace latinpat {

namespace {

void check_dims(int k, int l, std::size_t entries) {
  if (k < 1 || l < 1) throw Error(Errc::InvalidPattern, "pattern dimensions must be positive");
  if (static_cast<std::size_t>(k) * static_cast<std::size_t>(l) != entries) {
    throw Error(Errc::InvalidPattern, "entry count does not match dimensions");
  }
}

std::vector<int> flatten(const std::vector<std::vector<int>>& rows, int& k, int& l) {
  k = static_cast<int>(rows.size());
  l = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  std::vector<int> out;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != l) throw Error(Errc::InvalidPattern, "ragged pattern rows");
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

template <class Entry>
std::string render(int k, int l, Entry entry) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < k; ++r) {
    os << (r ? ",[" : "[");
    for (int c = 0; c < l; ++c) {
      if (c) os << ',';
      entry(os, r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

Pattern Pattern::from_entries(int k, int l, std::vector<int> entries) {
  check_dims(k, l, entries.size());
  const int n = k * l;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : entries) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw Error(Errc::InvalidPattern, "pattern entries must be each of 1.." + std::to_string(n) + " once");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return {k, l, std::move(entries)};
}

Pattern Pattern::from_rows(const std::vector<std::vector<int>>& rows) {
  int k = 0;
  int l = 0;
  auto entries = flatten(rows, k, l);
  return from_entries(k, l, std::move(entries));
}

std::vector<std::vector<int>> Pattern::grid() const {
  std::vector<std::vector<int>> out;
  for (int r = 0; r < k_; ++r) {
    out.emplace_back(entries_.begin() + r * l_, entries_.begin() + (r + 1) * l_);
  }
  return out;
}

std::string Pattern::str() const {
  return render(k_, l_, [this](std::ostream& os, int r, int c) { os << at(r, c); });
}

GeneralizedPattern GeneralizedPattern::from_entries(int k, int l, std::vector<int> entries) {
  check_dims(k, l, entries.size());
  int m = 0;
  for (int v : entries) m += v != kHole;
  std::vector<int> by_rank(static_cast<std::size_t>(m), -1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const int v = entries[i];
    if (v == kHole) continue;
    if (v < 1 || v > m || by_rank[static_cast<std::size_t>(v - 1)] != -1) {
      throw Error(Errc::InvalidPattern,
                  "non-hole entries must be each of 1.." + std::to_string(m) + " exactly once");
    }
    by_rank[static_cast<std::size_t>(v - 1)] = static_cast<int>(i);
  }
  for (int r = 0; r < k; ++r) {
    bool any = false;
    for (int c = 0; c < l; ++c) any = any || entries[static_cast<std::size_t>(r * l + c)] != kHole;
    if (!any) throw Error(Errc::InvalidPattern, "row " + std::to_string(r + 1) + " consists only of holes");
  }
  for (int c = 0; c < l; ++c) {
    bool any = false;
    for (int r = 0; r < k; ++r) any = any || entries[static_cast<std::size_t>(r * l + c)] != kHole;
    if (!any) throw Error(Errc::InvalidPattern, "column " + std::to_string(c + 1) + " consists only of holes");
  }
  return {k, l, std::move(entries), std::move(by_rank)};
}

GeneralizedPattern GeneralizedPattern::from_rows(const std::vector<std::vector<int>>& rows) {
  int k = 0;
  int l = 0;
  auto entries = flatten(rows, k, l);
  return from_entries(k, l, std::move(entries));
}

GeneralizedPattern GeneralizedPattern::from_pattern(const Pattern& p) {
  return from_entries(p.rows(), p.cols(), {p.entries().begin(), p.entries().end()});
}

std::string GeneralizedPattern::str() const {
  return render(k_, l_, [this](std::ostream& os, int r, int c) {
    if (is_hole(r, c)) {
      os << '*';
    } else {
      os << at(r, c);
    }
  });
}

std::uint64_t pattern_count(int k, int l) {
  if (k < 1 || l < 1) throw Error(Errc::InvalidArgument, "pattern dimensions must be positive");
  if (k * l > kMaxPatternCells) throw Error(Errc::TooLarge, "k*l exceeds " + std::to_string(kMaxPatternCells));
  std::uint64_t f = 1;
  for (int i = 2; i <= k * l; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t permutation_rank(std::span<const int> values) {
  const auto n = values.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller_later = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller_later += values[j] < values[i];
    rank = rank * (n - i) + smaller_later;
  }
  return rank;
}

std::vector<int> permutation_unrank(int n, std::uint64_t rank) {
  // Factorial-base digits, least significant last.
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto radix = static_cast<std::uint64_t>(n - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % radix);
    rank /= radix;
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int d : digits) {
    out.push_back(pool[static_cast<std::size_t>(d)]);
    pool.erase(pool.begin() + d);
  }
  return out;
}

PatternId pattern_id(const Pattern& p) {
  (void)pattern_count(p.rows(), p.cols());
  return {permutation_rank(p.entries())};
}

Pattern pattern_from_id(int k, int l, PatternId id) {
  const std::uint64_t count = pattern_count(k, l);
  if (id.value >= count) {
    throw Error(Errc::IdOutOfRange, "pattern id " + std::to_string(id.value) + " out of range for " +
                                        std::to_string(k) + "x" + std::to_string(l));
  }
  auto perm = permutation_unrank(k * l, id.value);
  for (int& v : perm) ++v;
  return Pattern::from_entries(k, l, std::move(perm));
}

std::vector<Pattern> enumerate_patterns(int k, int l) {
  if (k < 1 || l < 1) throw Error(Errc::InvalidArgument, "pattern dimensions must be positive");
  if (k * l > kMaxEnumerable) {
    throw Error(Errc::TooLarge, "cannot enumerate patterns with k*l > " + std::to_string(kMaxEnumerable));
  }
  std::vector<int> perm(static_cast<std::size_t>(k * l));
  for (int i = 0; i < k * l; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Pattern> out;
  out.reserve(pattern_count(k, l));
  do {
    out.push_back(Pattern::from_entries(k, l, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Pattern transpose(const Pattern& p) {
  std::vector<int> out(static_cast<std::size_t>(p.size()));
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) out[static_cast<std::size_t>(c * p.rows() + r)] = p.at(r, c);
  }
  return Pattern::from_entries(p.cols(), p.rows(), std::move(out));
}

Pattern vflip(const Pattern& p) {
  std::vector<int> out;
  for (int r = p.rows() - 1; r >= 0; --r) {
    for (int c = 0; c < p.cols(); ++c) out.push_back(p.at(r, c));
  }
  return Pattern::from_entries(p.rows(), p.cols(), std::move(out));
}

Pattern hflip(const Pattern& p) {
  std::vector<int> out;
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = p.cols() - 1; c >= 0; --c) out.push_back(p.at(r, c));
  }
  return Pattern::from_entries(p.rows(), p.cols(), std::move(out));
}

Pattern complement(const Pattern& p) {
  std::vector<int> out(p.entries().begin(), p.entries().end());
  for (int& v : out) v = p.size() + 1 - v;
  return Pattern::from_entries(p.rows(), p.cols(), std::move(out));
}

GeneralizedPattern transpose(const GeneralizedPattern& p) {
  std::vector<int> out(p.entries().size());
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) out[static_cast<std::size_t>(c * p.rows() + r)] = p.at(r, c);
  }
  return GeneralizedPattern::from_entries(p.cols(), p.rows(), std::move(out));
}

}  // namespace latinpat
