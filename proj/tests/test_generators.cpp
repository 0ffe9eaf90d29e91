#include "latinpat/density.hpp"
#include "latinpat/error.hpp"
#include "latinpat/generators.hpp"
#include "latinpat/random.hpp"

#include <doctest.h>

#include <algorithm>

using namespace latinpat;

TEST_CASE("cyclic squares") {
  CHECK(gen_cyclic(1) == validate_latin({{1}}));
  CHECK(gen_cyclic(3) == validate_latin({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}));
  for (int n = 1; n <= 12; ++n) CHECK_NOTHROW(validate_latin(gen_cyclic(n).rows()));
}

TEST_CASE("Jacobson-Matthews walk") {
  for (int n : {2, 3, 5, 10, 17}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto s = gen_jm(n, seed);
      CHECK_NOTHROW(validate_latin(s.rows()));
      CHECK(gen_jm(n, seed) == s);
    }
  }
  CHECK(gen_jm(12, 1, 50) == gen_jm(12, 1, 50));
  CHECK(gen_jm(12, 1) != gen_jm(12, 2));
  CHECK(gen_jm(12, 1) != gen_cyclic(12));
  CHECK_THROWS_AS(gen_jm(1, 0), Error);
  CHECK_THROWS_AS(gen_jm(5, 0, 0), Error);
}

TEST_CASE("Jacobson-Matthews output looks uniform in small cases") {
  // Order 3 has 12 squares; the walk should visit all of them.
  std::vector<std::vector<int>> seen;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = gen_jm(3, seed);
    std::vector<int> cells(s.cells().begin(), s.cells().end());
    if (std::find(seen.begin(), seen.end(), cells) == seen.end()) seen.push_back(cells);
  }
  CHECK(seen.size() == 12);
}

TEST_CASE("class vectors") {
  CHECK(parity_classes(2).values() == std::vector<int>{0, 1, 0, 1});
  CHECK(quadrant_classes(2).values() == std::vector<int>{0, 1, 1, 0});
  CHECK(quadrant_classes(4).values() == std::vector<int>{0, 0, 1, 1, 1, 1, 0, 0});
  for (int m : {2, 4, 6}) {
    for (const auto& c : {parity_classes(m), quadrant_classes(m)}) {
      CHECK(std::count(c.values().begin(), c.values().end(), 0) == m);
    }
  }
  CHECK_THROWS_AS(quadrant_classes(3), Error);
  try {
    ClassVector({0, 0, 1});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnbalancedClassVector);
  }
  CHECK_THROWS_AS(ClassVector({0, 2}), Error);
}

TEST_CASE("blow-up examples") {
  CHECK(blowup(gen_cyclic(1), ClassVector({0, 1})) == validate_latin({{1, 2}, {2, 1}}));
  const auto m = validate_latin({{1, 2}, {2, 1}});
  CHECK(blowup(m, ClassVector({0, 1, 1, 0})) ==
        validate_latin({{1, 3, 4, 2}, {3, 1, 2, 4}, {4, 2, 1, 3}, {2, 4, 3, 1}}));
  CHECK_THROWS_AS(blowup(m, ClassVector({0, 1})), Error);
}

TEST_CASE("blow-up is Latin and follows the support rule") {
  Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(6));
    const auto inner = gen_jm(m, trial);
    std::vector<int> classes(static_cast<std::size_t>(2 * m), 0);
    std::fill(classes.begin() + m, classes.end(), 1);
    std::shuffle(classes.begin(), classes.end(), rng);
    const ClassVector c(classes);
    const auto s = blowup(inner, c);
    CHECK_NOTHROW(validate_latin(s.rows()));
    for (int p = 0; p < 2 * m; ++p) {
      for (int q = 0; q < 2 * m; ++q) CHECK((s.at(p, q) <= m) == (c[p] == c[q]));
    }
  }
}

TEST_CASE("generate_square dispatch") {
  CHECK(generate_square("cyclic", 5, 0) == gen_cyclic(5));
  CHECK(generate_square("jm", 9, 4) == gen_jm(9, 4));
  CHECK(generate_square("parity-blowup", 2, 0) == validate_latin({{1, 2}, {2, 1}}));
  const auto inner = gen_jm(4, 1);
  CHECK(generate_square("quadrant-blowup", 8, 0, std::nullopt, &inner) == blowup(inner, quadrant_classes(4)));
  CHECK(generate_square("parity-blowup", 20, 3) == generate_square("parity-blowup", 20, 3));
  CHECK_THROWS_AS(generate_square("parity-blowup", 7, 0), Error);
  CHECK_THROWS_AS(generate_square("quadrant-blowup", 6, 0), Error);
  CHECK_THROWS_AS(generate_square("bogus", 6, 0), Error);
  CHECK_THROWS_AS(generate_square("parity-blowup", 10, 0, std::nullopt, &inner), Error);
}

TEST_CASE("parity blow-up pushes 2x2 densities toward the Latinon values") {
  const auto s = generate_square("parity-blowup", 40, 1);
  const auto prof = exact_profile(s, 2, 2);
  for (std::uint64_t id = 0; id < 24; ++id) {
    CHECK(std::abs(prof.density(PatternId{id}).to_double() - 1.0 / 24) < 0.02);
  }
}
