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

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gterms::stats {

// [[a, b], [c, d]] = [[female with, female without], [male with, male without]].
struct ContingencyCounts {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;

  std::uint64_t n() const { return a + b + c + d; }
  static ContingencyCounts from_df(std::uint64_t df_female, std::uint64_t df_male,
                                   std::uint64_t n_female, std::uint64_t n_male) {
    return {df_female, n_female - df_female, df_male, n_male - df_male};
  }
};

// Critical value of chi-square with one degree of freedom at p = 0.05.
inline constexpr double kCritical05 = 3.841;

// Significance levels carry their star weight.
enum class Level : std::uint8_t { kNone = 0, kP05 = 1, kP01 = 2, kP001 = 3 };

inline int stars(Level l) { return static_cast<int>(l); }

// Pearson statistic without continuity correction; 0 when any margin is 0.
// Cross product taken in 128-bit integers; long double for the rest.
double chi_square(const ContingencyCounts& t);

// P(chi2_1 >= x). Throws Error(kInvalidArgument) for negative or NaN x.
double chi2_sf(double x);

// Largest statistic reachable by placing all `t` occurrences in one gender.
double max_possible_chi2(std::uint64_t t, std::uint64_t n_female, std::uint64_t n_male);

inline bool passes_prefilter(std::uint64_t t, std::uint64_t n_female, std::uint64_t n_male,
                             double critical = kCritical05) {
  return max_possible_chi2(t, n_female, n_male) >= critical;
}

// Benjamini-Hochberg step-up: number of rejections k for p-values already
// sorted ascending.
std::size_t bh_count_sorted(std::span<const double> sorted_p, double alpha);

// Indices (ascending) of the rejected hypotheses.
std::vector<std::size_t> bh_reject(std::span<const double> p, double alpha);

std::set<std::string> bh_select(const std::vector<std::pair<std::string, double>>& pvalues,
                                double alpha);

// Runs BH once per alpha (alphas strictly decreasing, at most three) and
// returns for each hypothesis the strictest level it passes.
std::vector<Level> bh_levels(std::span<const double> p, std::span<const double> alphas);

void validate_alphas(std::span<const double> alphas);

}  // namespace gterms::stats
