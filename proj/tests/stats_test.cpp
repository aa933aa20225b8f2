// Copyright 2026 The genderterms Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "oracles.hpp"
#include "stats.hpp"

using namespace gterms;
using namespace gterms::stats;

TEST_CASE("chi_square reference values") {
  CHECK(std::abs(chi_square({10, 90, 2, 98}) - 5.6738) < 1e-3);
  CHECK(chi_square({5, 5, 5, 5}) == 0.0);
}

TEST_CASE("chi_square degenerate margins are zero") {
  CHECK(chi_square({0, 0, 3, 4}) == 0.0);
  CHECK(chi_square({0, 10, 0, 7}) == 0.0);
  CHECK(chi_square({0, 0, 0, 0}) == 0.0);
}

TEST_CASE("chi_square is symmetric under gender swap and transposition") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> cell(0, 500);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t a = cell(rng), b = cell(rng), c = cell(rng), d = cell(rng);
    const double x = chi_square({a, b, c, d});
    CHECK(chi_square({c, d, a, b}) == doctest::Approx(x).epsilon(1e-12));
    CHECK(chi_square({a, c, b, d}) == doctest::Approx(x).epsilon(1e-12));
    CHECK(x >= 0.0);
  }
}

TEST_CASE("chi_square matches the cell-sum oracle on large counts") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> cell(0, 3'000'000'000ULL);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t a = cell(rng), b = cell(rng), c = cell(rng), d = cell(rng);
    const long double want = oracle::chi_square(a, b, c, d);
    const double got = chi_square({a, b, c, d});
    if (want == 0) {
      CHECK(got == 0.0);
    } else {
      CHECK(std::abs(got - want) / want <= 1e-9L);
    }
  }
}

TEST_CASE("chi2_sf") {
  CHECK(std::abs(chi2_sf(3.841) - 0.05) < 5e-4);
  CHECK(std::abs(chi2_sf(10.828) - 0.001) < 5e-5);
  CHECK(chi2_sf(0.0) == 1.0);
  for (double x = 0.1; x < 30; x *= 1.7) {
    CHECK(chi2_sf(x) == doctest::Approx(oracle::chi2_sf(x)).epsilon(1e-6));
  }
  double prev = 1.0;
  for (double x = 0.0; x < 50; x += 0.25) {
    const double s = chi2_sf(x);
    CHECK(s <= prev);
    CHECK(s >= 0.0);
    prev = s;
  }
  CHECK_THROWS_AS(chi2_sf(-1.0), Error);
  CHECK_THROWS_AS(chi2_sf(std::nan("")), Error);
}

TEST_CASE("max_possible_chi2") {
  CHECK(max_possible_chi2(1, 10000, 10000) == doctest::Approx(1.00005).epsilon(1e-6));
  CHECK(max_possible_chi2(0, 10, 10) == 0.0);
  CHECK(max_possible_chi2(20, 10, 10) == 0.0);
  CHECK_FALSE(passes_prefilter(1, 10000, 10000));
  CHECK(passes_prefilter(100, 10000, 10000));
}

TEST_CASE("max_possible_chi2 bounds every allocation") {
  for (std::uint64_t nf = 1; nf <= 12; ++nf) {
    for (std::uint64_t nm = 1; nm <= 12; ++nm) {
      for (std::uint64_t t = 0; t <= nf + nm; ++t) {
        const double bound = max_possible_chi2(t, nf, nm);
        double best = 0.0;
        for (std::uint64_t a = 0; a <= std::min(t, nf); ++a) {
          if (t - a > nm) continue;
          best = std::max(best, static_cast<double>(oracle::chi_square(a, nf - a, t - a, nm - (t - a))));
        }
        CHECK(bound == doctest::Approx(best).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bh_select worked example") {
  const std::vector<std::pair<std::string, double>> p = {
      {"a", 0.001}, {"b", 0.02}, {"c", 0.03}, {"d", 0.9}};
  CHECK(bh_select(p, 0.05) == std::set<std::string>{"a", "b", "c"});
  CHECK(bh_select({}, 0.05).empty());
}

TEST_CASE("bh_select matches the naive scan") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> len(0, 300);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int run = 0; run < 200; ++run) {
    std::vector<std::pair<std::string, double>> p;
    const int m = len(rng);
    for (int i = 0; i < m; ++i) {
      double v = u(rng);
      if (run % 3 == 0) v = std::pow(v, 6.0);
      if (run % 5 == 0) v = std::round(v * 40) / 40;  // ties
      p.emplace_back("t" + std::to_string(i), v);
    }
    for (double alpha : {0.05, 0.01, 0.001}) {
      CHECK(bh_select(p, alpha) == oracle::bh_naive(p, alpha));
    }
  }
}

TEST_CASE("bh_levels nest and count stars") {
  const std::vector<double> p = {1e-6, 0.004, 0.03, 0.5};
  const std::vector<double> alphas = {0.05, 0.01, 0.001};
  const auto levels = bh_levels(p, alphas);
  REQUIRE(levels.size() == 4);
  CHECK(levels[0] == Level::kP001);
  CHECK(levels[1] == Level::kP01);
  CHECK(levels[2] == Level::kP05);
  CHECK(levels[3] == Level::kNone);
  CHECK(stars(levels[0]) == 3);
  CHECK(stars(levels[3]) == 0);
}

TEST_CASE("validate_alphas") {
  const std::vector<double> ok = {0.05, 0.01};
  CHECK_NOTHROW(validate_alphas(ok));
  const std::vector<double> bad1 = {0.01, 0.05};
  const std::vector<double> bad2 = {1.5};
  const std::vector<double> none;
  const std::vector<double> many = {0.1, 0.05, 0.01, 0.001};
  CHECK_THROWS_AS(validate_alphas(bad1), Error);
  CHECK_THROWS_AS(validate_alphas(bad2), Error);
  CHECK_THROWS_AS(validate_alphas(none), Error);
  CHECK_THROWS_AS(validate_alphas(many), Error);
}
