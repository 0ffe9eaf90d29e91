#include "latinpat/error.hpp"
#include "latinpat/latinon.hpp"
#include "latinpat/latinon_io.hpp"
#include "latinpat/random.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace latinpat;

namespace {

Rational inv_factorial(int n) { return Rational(BigInt(1), factorial(static_cast<unsigned>(n))); }

// Normalised step Latinon with random small-denominator weights; the marginal
// identities generally fail, which the density engines do not require.
StepLatinon random_latinon(std::uint64_t seed) {
  Rng rng(seed);
  const auto simplex = [&](int size) {
    std::vector<Rational> w;
    std::int64_t total = 0;
    for (int i = 0; i < size; ++i) {
      w.emplace_back(static_cast<std::int64_t>(rng.below(4)));
      total += static_cast<std::int64_t>(w.back().to_double());
    }
    if (total == 0) {
      w[0] = Rational(1);
      total = 1;
    }
    for (auto& x : w) x = x / Rational(total);
    return w;
  };
  const std::vector<std::string> labels{"x", "y"};
  const auto axis = [&] {
    AxisModel a;
    const Rational cut(1 + static_cast<std::int64_t>(rng.below(4)), 5);
    a.breakpoints = {Rational(0), cut, Rational(1)};
    for (int i = 0; i < 2; ++i) {
      const auto w = simplex(2);
      a.classes.push_back({{labels[0], w[0]}, {labels[1], w[1]}});
    }
    return a;
  };
  AxisModel rows = axis();
  AxisModel cols = axis();
  ValuePartition values{{Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}};
  MixtureTable table;
  for (const auto& rc : labels) {
    for (const auto& cc : labels) {
      const auto w = simplex(3);
      for (int j = 0; j < 3; ++j) table[rc][cc][j] = w[static_cast<std::size_t>(j)];
    }
  }
  return StepLatinon(rows, cols, values, table, "random");
}

}  // namespace

TEST_CASE("built-ins satisfy the axioms") {
  for (const char* name : {"uniform", "prop41", "prop42"}) {
    CHECK(check_axioms(StepLatinon::builtin(name)).pass());
  }
  CHECK_THROWS_AS(StepLatinon::builtin("nope"), Error);
}

TEST_CASE("perturbed mixture fails with a named violation") {
  const auto bad = StepLatinon::prop41().with_weight("A", "A", 0, Rational(9, 10)).with_weight("A", "A", 1,
                                                                                               Rational(1, 10));
  const auto report = check_axioms(bad);
  REQUIRE_FALSE(report.pass());
  bool marginal = false;
  for (const auto& v : report.violations) {
    marginal |= v.kind == AxiomViolation::Kind::RowMarginal || v.kind == AxiomViolation::Kind::ColumnMarginal;
    CHECK(v.lhs != v.rhs);
    CHECK_FALSE(v.description.empty());
  }
  CHECK(marginal);

  const auto unnormalised = StepLatinon::uniform().with_weight("U", "U", 0, Rational(11, 10));
  const auto r2 = check_axioms(unnormalised);
  REQUIRE_FALSE(r2.pass());
  CHECK(r2.violations.front().kind == AxiomViolation::Kind::MixtureSum);
  CHECK_THROWS_AS(exact_density(unnormalised, Pattern::from_rows({{1, 2}})), Error);
}

TEST_CASE("exact values of the built-ins") {
  const auto u = StepLatinon::uniform();
  CHECK(exact_density(u, Pattern::from_rows({{1, 2}, {3, 4}})) == Rational(1, 24));
  CHECK(exact_density(u, Pattern::from_rows({{2, 6, 1}, {3, 5, 4}})) == Rational(1, 720));

  const auto p41 = StepLatinon::prop41();
  for (int n = 1; n <= 4; ++n) {
    for (const auto& p : enumerate_patterns(1, n)) CHECK(exact_density(p41, p) == inv_factorial(n));
  }
  for (const auto& p : enumerate_patterns(2, 2)) CHECK(exact_density(p41, p) == Rational(1, 24));
  CHECK(exact_density(p41, Pattern::from_rows({{1, 2, 3}, {4, 5, 6}})) == Rational(11, 5760));

  const auto p42 = StepLatinon::prop42();
  for (const auto& p : enumerate_patterns(2, 2)) CHECK(exact_density(p42, p) == Rational(1, 24));
  // Value from an independent enumeration (identity pattern only).
  CHECK(exact_density(p42, Pattern::from_rows({{1, 2, 3}, {4, 5, 6}})) ==
        oracle::latinon_density(p42, GeneralizedPattern::from_rows({{1, 2, 3}, {4, 5, 6}})));
}

TEST_CASE("bulk route equals per-pattern route") {
  for (const char* name : {"prop41", "prop42"}) {
    const auto w = StepLatinon::builtin(name);
    const auto all = exact_all_densities(w, 2, 3);
    REQUIRE(all.size() == 720);
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
      const auto id = rng.below(720);
      CHECK(all[id] == exact_density(w, pattern_from_id(2, 3, PatternId{id})));
    }
  }
  const auto r = random_latinon(5);
  const auto all = exact_all_densities(r, 2, 2);
  for (std::uint64_t id = 0; id < 24; ++id) CHECK(all[id] == exact_density(r, pattern_from_id(2, 2, PatternId{id})));
  CHECK_THROWS_AS(exact_all_densities(r, 3, 4), Error);
}

TEST_CASE("engine agrees with the unsorted-tuple oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto w = random_latinon(seed);
    for (const auto& rows : std::vector<std::vector<std::vector<int>>>{
             {{1, 2}, {3, 4}}, {{4, 1}, {2, 3}}, {{2, 3, 1}}, {{1, 0}, {0, 2}}, {{2, 3, 0}, {0, 4, 1}}}) {
      const auto g = GeneralizedPattern::from_rows(rows);
      CHECK(exact_density(w, g) == oracle::latinon_density(w, g));
    }
  }
  for (const char* name : {"prop41", "prop42"}) {
    const auto w = StepLatinon::builtin(name);
    for (const auto& rows : std::vector<std::vector<std::vector<int>>>{
             {{1, 2, 3}, {4, 5, 6}}, {{6, 1, 4}, {2, 5, 3}}, {{1, 2, 5}, {3, 4, 0}}}) {
      const auto g = GeneralizedPattern::from_rows(rows);
      CHECK(exact_density(w, g) == oracle::latinon_density(w, g));
    }
  }
}

TEST_CASE("densities sum to one") {
  for (const char* name : {"uniform", "prop41", "prop42"}) {
    const auto w = StepLatinon::builtin(name);
    for (int k = 1; k <= 3; ++k) {
      for (int l = 1; l <= 3; ++l) {
        if (k * l > 6) continue;
        Rational sum(0);
        for (const auto& d : exact_all_densities(w, k, l)) sum += d;
        CHECK(sum == Rational(1));
      }
    }
  }
  Rational sum(0);
  for (const auto& d : exact_all_densities(random_latinon(2), 2, 2)) sum += d;
  CHECK(sum == Rational(1));
}

TEST_CASE("transpose symmetry") {
  for (const auto& w : {StepLatinon::prop41(), StepLatinon::prop42(), random_latinon(9)}) {
    const auto t = w.transposed();
    for (const auto& p : enumerate_patterns(2, 2)) CHECK(exact_density(t, transpose(p)) == exact_density(w, p));
    const auto a = Pattern::from_rows({{3, 1, 6}, {2, 5, 4}});
    CHECK(exact_density(t, transpose(a)) == exact_density(w, a));
  }
}

TEST_CASE("block matrices") {
  for (const char* name : {"prop41", "prop42"}) {
    const auto dist = block_matrix_distribution(StepLatinon::builtin(name), 2, 2);
    CHECK(dist.size() == 8);
    for (const auto& [m, p] : dist) CHECK(p == Rational(1, 8));
  }
  CHECK(block_matrix_distribution(StepLatinon::prop41(), 2, 2) ==
        block_matrix_distribution(StepLatinon::prop42(), 2, 2));
  const auto u = block_matrix_distribution(StepLatinon::uniform(), 2, 3);
  REQUIRE(u.size() == 1);
  CHECK(u.begin()->second == Rational(1));
}

TEST_CASE("sorted interval distribution") {
  const auto p42 = StepLatinon::prop42();
  const auto& axis = p42.row_axis();
  const auto dist = sorted_interval_distribution(axis, 2);
  CHECK(dist.at({1, 2}) == Rational(1, 4));
  Rational sum(0);
  for (const auto& [t, p] : dist) sum += p;
  CHECK(sum == Rational(1));
  for (const auto& [classes, p] : sorted_class_distribution(StepLatinon::prop42(), true, 2)) {
    CHECK(p == Rational(1, 4));
  }

  Rng rng(12);
  int hits = 0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const auto s = sample_sorted_intervals(axis, 2, rng);
    hits += s == std::vector<int>{1, 2};
  }
  const double f = static_cast<double>(hits) / n;
  CHECK(std::abs(f - 0.25) < 4 * std::sqrt(0.25 * 0.75 / n));
}

TEST_CASE("Rao-Blackwellised Monte Carlo") {
  const auto u = rb_mc_density(StepLatinon::uniform(), Pattern::from_rows({{1, 2}, {3, 4}}), 10'000, 1);
  CHECK(u.estimate == 1.0 / 24);
  CHECK(u.std_error == 0.0);
  CHECK_FALSE(u.hits.has_value());

  const auto p41 = StepLatinon::prop41();
  int outside = 0;
  for (const auto& p : enumerate_patterns(2, 2)) {
    const auto e = rb_mc_density(p41, p, 100'000, 4);
    outside += std::abs(e.estimate - 1.0 / 24) > 4 * e.std_error;
  }
  CHECK(outside <= 1);
  const auto a = rb_mc_density(p41, Pattern::from_rows({{1, 2, 3}, {4, 5, 6}}), 60'000, 8, 1);
  const auto b = rb_mc_density(p41, Pattern::from_rows({{1, 2, 3}, {4, 5, 6}}), 60'000, 8, 3);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  CHECK_THROWS_AS(rb_mc_density(p41, Pattern::from_rows({{1}}), 0, 1), Error);
}

TEST_CASE("enumeration bounds") {
  try {
    exact_density(StepLatinon::uniform(), Pattern::from_rows({{1, 2, 3, 4, 5}}));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EnumerationBoundExceeded);
  }
}

TEST_CASE("Latinon JSON") {
  for (const char* name : {"uniform", "prop41", "prop42"}) {
    const auto w = StepLatinon::builtin(name);
    const auto back = latinon_from_json(nlohmann::json::parse(latinon_to_json(w).dump()));
    CHECK(latinon_to_json(back) == latinon_to_json(w));
    CHECK(exact_density(back, Pattern::from_rows({{1, 2, 3}, {4, 5, 6}})) ==
          exact_density(w, Pattern::from_rows({{1, 2, 3}, {4, 5, 6}})));
  }
  auto doc = latinon_to_json(StepLatinon::prop41());
  doc["value_breakpoints"] = "oops";
  CHECK_THROWS_AS(latinon_from_json(doc), Error);
  auto doc2 = latinon_to_json(StepLatinon::prop41());
  doc2["row_axis"]["breakpoints"] = {"0", "1/2"};
  try {
    latinon_from_json(doc2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK((e.code() == Errc::InvalidLatinon || e.code() == Errc::Parse));
  }
  CHECK_THROWS_AS(load_latinon("/nonexistent/latinon.json"), Error);
}
