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

#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace gterms::stats {

double chi_square(const ContingencyCounts& t) {
  const std::uint64_t row1 = t.a + t.b;
  const std::uint64_t row2 = t.c + t.d;
  const std::uint64_t col1 = t.a + t.c;
  const std::uint64_t col2 = t.b + t.d;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return 0.0;
  const __int128 cross = static_cast<__int128>(t.a) * t.d - static_cast<__int128>(t.b) * t.c;
  if (cross == 0) return 0.0;
  const long double diff = static_cast<long double>(cross);
  const long double num = static_cast<long double>(t.n()) * diff * diff;
  const long double den = static_cast<long double>(row1) * row2 *
                          static_cast<long double>(col1) * col2;
  return static_cast<double>(num / den);
}

double chi2_sf(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "chi2_sf requires x >= 0");
  }
  return std::erfc(std::sqrt(x / 2.0));
}

double max_possible_chi2(std::uint64_t t, std::uint64_t n_female, std::uint64_t n_male) {
  const std::uint64_t n = n_female + n_male;
  if (t == 0 || t >= n) return 0.0;
  // All female (as far as possible), then all male.
  const std::uint64_t af = std::min(t, n_female);
  const ContingencyCounts female_heavy{af, n_female - af, t - af, n_male - (t - af)};
  const std::uint64_t cm = std::min(t, n_male);
  const ContingencyCounts male_heavy{t - cm, n_female - (t - cm), cm, n_male - cm};
  return std::max(chi_square(female_heavy), chi_square(male_heavy));
}

void validate_alphas(std::span<const double> alphas) {
  if (alphas.empty() || alphas.size() > 3) {
    throw Error(ErrorCode::kInvalidArgument, "between one and three alpha levels are required");
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "alpha must be in (0, 1)");
    }
    if (i > 0 && !(alphas[i] < alphas[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "alphas must be strictly decreasing");
    }
  }
}

std::size_t bh_count_sorted(std::span<const double> sorted_p, double alpha) {
  const std::size_t m = sorted_p.size();
  for (std::size_t k = m; k > 0; --k) {
    if (sorted_p[k - 1] <= static_cast<double>(k) * alpha / static_cast<double>(m)) return k;
  }
  return 0;
}

namespace {

std::vector<std::size_t> order_by_p(std::span<const double> p) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return p[x] < p[y]; });
  return order;
}

}  // namespace

std::vector<std::size_t> bh_reject(std::span<const double> p, double alpha) {
  const auto order = order_by_p(p);
  std::vector<double> sorted(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = p[order[i]];
  const std::size_t k = bh_count_sorted(sorted, alpha);
  std::vector<std::size_t> out;
  if (k == 0) return out;
  const double cutoff = sorted[k - 1];
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= cutoff) out.push_back(i);
  }
  return out;
}

std::set<std::string> bh_select(const std::vector<std::pair<std::string, double>>& pvalues,
                                double alpha) {
  std::vector<double> p;
  p.reserve(pvalues.size());
  for (const auto& [term, value] : pvalues) p.push_back(value);
  std::set<std::string> out;
  for (std::size_t i : bh_reject(p, alpha)) out.insert(pvalues[i].first);
  return out;
}

std::vector<Level> bh_levels(std::span<const double> p, std::span<const double> alphas) {
  validate_alphas(alphas);
  const auto order = order_by_p(p);
  std::vector<double> sorted(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = p[order[i]];
  std::vector<Level> levels(p.size(), Level::kNone);
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const std::size_t k = bh_count_sorted(sorted, alphas[a]);
    if (k == 0) continue;
    const double cutoff = sorted[k - 1];
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= cutoff) levels[i] = static_cast<Level>(a + 1);
    }
  }
  return levels;
}

}  // namespace gterms::stats
