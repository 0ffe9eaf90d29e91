#include "latinpat/density.hpp"
#include "latinpat/error.hpp"
#include "latinpat/generators.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace latinpat;

namespace {

const LatinSquare& cyclic3() {
  static const LatinSquare s = gen_cyclic(3);
  return s;
}

}  // namespace

TEST_CASE("order_class") {
  const std::vector<int> tie{1, 2, 2, 3};
  CHECK_FALSE(order_class(2, 2, tie).has_value());
  const std::vector<int> sorted{10, 20, 30, 40};
  CHECK(order_class(2, 2, sorted) == pattern_id(Pattern::from_rows({{1, 2}, {3, 4}})));
  const std::vector<int> mixed{5, 1, 2, 9};
  CHECK(order_class(2, 2, mixed) == pattern_id(Pattern::from_rows({{3, 1}, {2, 4}})));
}

TEST_CASE("exact_density examples") {
  const auto order2 = gen_cyclic(2);
  for (const auto& p : enumerate_patterns(2, 3)) CHECK(exact_density(order2, p).is_zero());
  CHECK(exact_density(gen_jm(7, 3), Pattern::from_rows({{1}})) == Rational(1));
  CHECK(exact_density(cyclic3(), Pattern::from_rows({{1, 2}, {3, 4}})).is_zero());
  const auto g = GeneralizedPattern::from_rows({{1, 0}, {0, 2}});
  CHECK(generalized_exact_density(cyclic3(), g) == Rational(2, 9));
  CHECK(generalized_exact_density(cyclic3(), g) == oracle::square_density(cyclic3(), g));
}

TEST_CASE("exact_profile examples") {
  const auto p = exact_profile(cyclic3(), 2, 2);
  CHECK(p.total == 9);
  CHECK(p.ties == 9);
  for (auto c : p.counts) CHECK(c == 0);
  CHECK(p.tie_fraction() == Rational(1));

  const auto s = gen_jm(9, 11);
  const auto single = exact_profile(s, 1, 1);
  CHECK(single.total == 81);
  CHECK(single.ties == 0);
  CHECK(single.counts[0] == 81);

  CHECK(exact_profile(gen_jm(10, 1), 2, 3).total == 5400);
  CHECK_THROWS_AS(exact_profile(s, 3, 4), Error);
}

TEST_CASE("exact engine matches brute force") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = gen_jm(7, seed);
    for (auto [k, l] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{1, 4}}) {
      const auto prof = exact_profile(s, k, l);
      std::uint64_t sum = prof.ties;
      for (auto c : prof.counts) sum += c;
      CHECK(BigInt(static_cast<unsigned long>(sum)) == prof.total);
      Rng rng(seed);
      for (int trial = 0; trial < 10; ++trial) {
        const auto id = PatternId{rng.below(pattern_count(k, l))};
        const auto pat = pattern_from_id(k, l, id);
        CHECK(prof.density(id) == oracle::square_density(s, GeneralizedPattern::from_pattern(pat)));
      }
    }
    const auto g = GeneralizedPattern::from_rows({{2, 3, 0}, {0, 4, 1}});
    CHECK(generalized_exact_density(s, g) == oracle::square_density(s, g));
  }
}

TEST_CASE("full generalized pattern equals plain density") {
  const auto s = gen_jm(8, 5);
  const auto p = Pattern::from_rows({{3, 1, 6}, {2, 5, 4}});
  CHECK(generalized_exact_density(s, GeneralizedPattern::from_pattern(p)) == exact_density(s, p));
}

TEST_CASE("profile does not depend on worker count") {
  const auto s = gen_jm(16, 2);
  const auto one = exact_profile(s, 2, 3, 1);
  const auto four = exact_profile(s, 2, 3, 4);
  CHECK(one.counts == four.counts);
  CHECK(one.ties == four.ties);
}

TEST_CASE("mc_density") {
  const auto s = gen_jm(12, 4);
  const auto p = Pattern::from_rows({{1, 2, 3}, {4, 5, 6}});
  const auto a = mc_density(s, p, 50'000, 9, 1);
  const auto b = mc_density(s, p, 50'000, 9, 3);
  CHECK(a.hits == b.hits);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  const auto c = mc_density(s, p, 50'000, 10, 1);
  CHECK(c.hits != a.hits);

  const auto one = mc_density(s, Pattern::from_rows({{1}}), 1000, 1);
  CHECK(one.estimate == 1.0);
  CHECK(one.std_error == 0.0);

  CHECK_THROWS_AS(mc_density(s, p, 0, 1), Error);
}

TEST_CASE("mc_profile agrees with exact profile") {
  const auto s = gen_jm(10, 8);
  const auto exact = exact_profile(s, 2, 2);
  const auto mc = mc_profile(s, 2, 2, 400'000, 3);
  std::uint64_t sum = mc.ties;
  for (auto h : mc.hits) sum += h;
  CHECK(sum == mc.samples);
  int outside = 0;
  for (std::uint64_t id = 0; id < 24; ++id) {
    const auto est = mc.estimate(PatternId{id});
    if (std::abs(est.estimate - exact.density(PatternId{id}).to_double()) > 4 * est.std_error + 1e-12) ++outside;
  }
  CHECK(outside <= 2);
  CHECK(mc_profile(s, 2, 2, 100'000, 3, 1).hits == mc_profile(s, 2, 2, 100'000, 3, 2).hits);
}

TEST_CASE("sample_sorted_subset") {
  Rng rng(5);
  std::vector<int> out(4);
  for (int i = 0; i < 500; ++i) {
    sample_sorted_subset(9, 4, rng, out);
    for (int j = 0; j < 4; ++j) {
      CHECK(out[j] >= 0);
      CHECK(out[j] < 9);
      if (j > 0) CHECK(out[j - 1] < out[j]);
    }
  }
}

TEST_CASE("symmetry identities on squares") {
  const auto s = gen_jm(9, 21);
  const auto base = exact_profile(s, 2, 3);
  const auto tr = exact_profile(s.transposed(), 3, 2);
  const auto rows = exact_profile(s.rows_reversed(), 2, 3);
  const auto cols = exact_profile(s.cols_reversed(), 2, 3);
  const auto comp = exact_profile(s.complemented(), 2, 3);
  for (const auto& p : enumerate_patterns(2, 3)) {
    const auto d = base.density(pattern_id(p));
    CHECK(tr.density(pattern_id(transpose(p))) == d);
    CHECK(rows.density(pattern_id(vflip(p))) == d);
    CHECK(cols.density(pattern_id(hflip(p))) == d);
    CHECK(comp.density(pattern_id(complement(p))) == d);
  }
}
