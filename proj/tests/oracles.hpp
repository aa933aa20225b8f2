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

// Independent reference implementations used as test oracles. Written
// from the textbook definitions; deliberately share no code with src/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Sum over cells of (O - E)^2 / E with E = R*C/N, rewritten as
// (O*N - R*C)^2 / (N*R*C) so each numerator is an exact integer.
inline long double chi_square(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                              std::uint64_t d) {
  const __int128 n = static_cast<__int128>(a) + b + c + d;
  const __int128 obs[2][2] = {{a, b}, {c, d}};
  const __int128 row[2] = {obs[0][0] + obs[0][1], obs[1][0] + obs[1][1]};
  const __int128 col[2] = {obs[0][0] + obs[1][0], obs[0][1] + obs[1][1]};
  if (row[0] == 0 || row[1] == 0 || col[0] == 0 || col[1] == 0) return 0.0L;
  long double sum = 0.0L;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const __int128 diff = obs[i][j] * n - row[i] * col[j];
      const long double dd = static_cast<long double>(diff);
      sum += dd * dd / (static_cast<long double>(n) * static_cast<long double>(row[i]) *
                        static_cast<long double>(col[j]));
    }
  }
  return sum;
}

// Upper tail of chi-square with one degree of freedom:
// 1 - sqrt(2/pi) * integral_0^sqrt(x) exp(-u^2/2) du, composite Simpson.
inline double chi2_sf(double x, int intervals = 20000) {
  const long double z = std::sqrt(static_cast<long double>(x));
  const long double h = z / intervals;
  auto f = [](long double u) { return std::exp(-u * u / 2.0L); };
  long double s = f(0) + f(z);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(i * h);
  const long double integral = s * h / 3.0L;
  const long double pi = 3.141592653589793238462643383279502884L;
  return static_cast<double>(1.0L - std::sqrt(2.0L / pi) * integral);
}

// Step-up BH by trying every k: largest k with p_(k) <= k*alpha/m, then the
// k smallest are rejected.
inline std::set<std::string> bh_naive(std::vector<std::pair<std::string, double>> p,
                                      double alpha) {
  std::sort(p.begin(), p.end(),
            [](const auto& x, const auto& y) { return x.second < y.second; });
  const std::size_t m = p.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    if (p[k - 1].second <= static_cast<double>(k) * alpha / static_cast<double>(m)) best = k;
  }
  std::set<std::string> out;
  for (std::size_t i = 0; i < best; ++i) out.insert(p[i].first);
  return out;
}

// Standard error of a binomial proportion.
inline double binomial_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace oracle
