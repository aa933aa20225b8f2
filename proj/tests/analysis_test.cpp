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

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "gender.hpp"
#include "oracles.hpp"

using namespace gterms;

namespace {

std::string at(int day, int second) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "2020-03-%02dT%02d:%02d:%02dZ", 10 + day, second / 3600 % 24,
                second / 60 % 60, second % 60);
  return buf;
}

// Adds `n` posts by a female or male author on `day`, the first `with`
// of them carrying `term`.
void add_posts(std::vector<Post>& posts, int day, bool female, int n, int with,
               const std::string& term) {
  for (int i = 0; i < n; ++i) {
    const int k = static_cast<int>(posts.size());
    std::string text = "u" + std::to_string(k);
    if (i < with) text += " " + term;
    posts.push_back(fixture::post("p" + std::to_string(k), at(day, k), female ? "Mary" : "John", text));
  }
}

std::shared_ptr<CorpusView> view_of(std::vector<Post> posts, unsigned jobs = 1) {
  Corpus c = fixture::corpus(std::move(posts));
  assign_genders(c, NameLexicon::builtin(), jobs);
  return std::make_shared<CorpusView>(std::move(c), jobs);
}

}  // namespace

TEST_CASE("make_term_stats direction and ratios") {
  const auto s = make_term_stats("x", {10, 90, 2, 98});
  CHECK(s.direction == Direction::kFemale);
  CHECK(s.prop_female == doctest::Approx(0.10));
  CHECK(s.prop_male == doctest::Approx(0.02));
  REQUIRE(s.prop_ratio);
  CHECK(*s.prop_ratio == doctest::Approx(5.0));
  REQUIRE(s.odds_ratio);
  CHECK(*s.odds_ratio == doctest::Approx(10.0 * 98 / (90.0 * 2)));
  CHECK(make_term_stats("y", {5, 5, 5, 5}).direction == Direction::kNone);
  const auto z = make_term_stats("z", {0, 10, 4, 6});
  CHECK(z.direction == Direction::kMale);
  CHECK(z.odds_ratio == 0.0);
  CHECK_FALSE(make_term_stats("w", {3, 10, 0, 6}).odds_ratio);
}

TEST_CASE("planted term at 10% vs 2% over 50,000 posts per gender reaches P001") {
  const std::uint64_t n = 50000;
  DocFrequencyTable t;
  t.n_female = n;
  t.n_male = n;
  t.df_female = {n / 10, 300};
  t.df_male = {n / 50, 310};
  const Vocabulary v({"planted", "plain"});
  const AnalysisConfig cfg;
  std::size_t m = 0;
  const auto out = analyze_overall(t, v, cfg, &m);
  CHECK(m == 2);
  REQUIRE(out.size() == 2);
  const auto& planted = out[1].term == "planted" ? out[1] : out[0];
  const long double want = oracle::chi_square(n / 10, n - n / 10, n / 50, n - n / 50);
  CHECK(planted.chi2 == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
  CHECK(planted.chi2 > 2000);
  CHECK(planted.level == stats::Level::kP001);
  CHECK(planted.direction == Direction::kFemale);
  const auto& plain = out[1].term == "plain" ? out[1] : out[0];
  CHECK(plain.level == stats::Level::kNone);
}

TEST_CASE("analyze_overall prefilters rare terms out of the family") {
  DocFrequencyTable t;
  t.n_female = 1000;
  t.n_male = 1000;
  t.df_female = {1, 0, 60};
  t.df_male = {0, 1, 10};
  const Vocabulary v({"a", "b", "c"});
  std::size_t m = 0;
  const auto out = analyze_overall(t, v, AnalysisConfig{}, &m);
  CHECK(m == 1);
  CHECK_FALSE(out[0].tested);
  CHECK_FALSE(out[1].tested);
  CHECK(out[2].tested);
  CHECK(out[0].level == stats::Level::kNone);
}

TEST_CASE("analyze refuses a one-gender corpus") {
  std::vector<Post> posts;
  add_posts(posts, 0, true, 20, 5, "flu");
  const auto view = view_of(std::move(posts));
  CHECK_THROWS_AS(analyze(*view, AnalysisConfig{}), Error);
}

TEST_CASE("star arithmetic 3+3+2 includes a term that is not significant overall") {
  std::vector<Post> posts;
  add_posts(posts, 0, true, 30, 20, "flu");   // (20,10,0,30): 3 stars
  add_posts(posts, 0, false, 30, 0, "flu");
  add_posts(posts, 1, true, 30, 0, "flu");    // mirror: 3 stars
  add_posts(posts, 1, false, 30, 20, "flu");
  add_posts(posts, 2, true, 30, 9, "flu");    // (9,21,1,29): 2 stars
  add_posts(posts, 2, false, 30, 1, "flu");
  const auto view = view_of(std::move(posts));
  const AnalysisResult r = analyze(*view, AnalysisConfig{});
  const TermRecord* rec = r.find("flu");
  REQUIRE(rec);
  CHECK(rec->daily.stars_by_day == std::vector<int>{3, 3, 2});
  CHECK(rec->daily.star_total == 8);
  CHECK(rec->daily.days == 3);
  CHECK_FALSE(rec->significant_overall);
  CHECK(rec->daily_included);
  CHECK(rec->included);
  CHECK(r.included_terms == std::vector<std::string>{"flu"});
  for (const auto& d : r.days) CHECK(d.m == 1);

  AnalysisConfig strict;
  strict.star_threshold = 9;
  CHECK_FALSE(analyze(*view, strict).find("flu")->included);
}

TEST_CASE("days without both genders are untestable and score nothing") {
  std::vector<Post> posts;
  add_posts(posts, 0, true, 30, 20, "flu");
  add_posts(posts, 0, false, 30, 0, "flu");
  add_posts(posts, 1, true, 30, 25, "flu");
  Post last = fixture::post("late", "2020-03-14T00:00:00Z", "John", "flu late");
  posts.push_back(last);
  const auto view = view_of(std::move(posts));
  const AnalysisResult r = analyze(*view, AnalysisConfig{});
  REQUIRE(r.days.size() == 5);
  CHECK(r.days[0].testable);
  CHECK_FALSE(r.days[1].testable);
  CHECK_FALSE(r.days[2].testable);
  CHECK(r.days[2].m == 0);
  CHECK(r.find("flu")->daily.stars_by_day == std::vector<int>{3, 0, 0, 0, 0});
}

TEST_CASE("result JSON echoes configuration and round-trips") {
  std::vector<Post> posts;
  add_posts(posts, 0, true, 40, 20, "flu");
  add_posts(posts, 0, false, 40, 2, "flu");
  add_posts(posts, 1, true, 40, 3, "cold");
  add_posts(posts, 1, false, 40, 19, "cold");
  const auto view = view_of(std::move(posts));
  const AnalysisResult r = analyze(*view, AnalysisConfig{});
  const auto j = result_to_json(r);
  CHECK(j["config"]["lexicon_threshold"] == 0.9);
  CHECK(j["config"]["alphas"] == nlohmann::json::array({0.05, 0.01, 0.001}));
  CHECK(j["config"]["star_threshold"] == 7);
  CHECK(j["content_hash"] == r.content_hash);

  const std::string text = serialize_result(r);
  const AnalysisResult back = result_from_json(nlohmann::json::parse(text));
  CHECK(serialize_result(back) == text);
  CHECK(back.find("cold")->stats.direction == Direction::kMale);

  auto tampered = nlohmann::json::parse(text);
  tampered["included_terms"] = nlohmann::json::array();
  CHECK_THROWS_AS(result_from_json(tampered), Error);
}

TEST_CASE("analysis output does not depend on the job count") {
  std::mt19937_64 rng(8);
  std::vector<Post> posts;
  std::uniform_int_distribution<int> word(0, 80), len(1, 10), day(0, 4);
  for (int i = 0; i < 3000; ++i) {
    const bool female = i % 2 == 0;
    std::string text = "q" + std::to_string(i);
    for (int k = len(rng); k > 0; --k) text += " w" + std::to_string(word(rng) + (female ? 0 : 5));
    posts.push_back(fixture::post("p" + std::to_string(i), at(day(rng), i), female ? "Emma" : "Mark", text));
  }
  std::string first;
  for (unsigned jobs : {1u, 2u, 5u}) {
    const auto view = view_of(posts, jobs);
    AnalysisConfig cfg;
    cfg.jobs = jobs;
    const std::string s = serialize_result(analyze(*view, cfg));
    if (first.empty()) first = s;
    CHECK(s == first);
  }
}

TEST_CASE("csv exports") {
  std::vector<Post> posts;
  add_posts(posts, 0, true, 40, 20, "flu");
  add_posts(posts, 0, false, 40, 2, "flu");
  const auto view = view_of(std::move(posts));
  const AnalysisResult r = analyze(*view, AnalysisConfig{});
  std::ostringstream terms;
  write_terms_csv(r, terms);
  CHECK(terms.str().rfind("term,direction,chi2,level,stars_total,prop_female,prop_male,odds_ratio\n", 0) == 0);
  CHECK(terms.str().find("\nflu,female,") != std::string::npos);
  std::ostringstream daily;
  write_daily_csv(r, daily);
  CHECK(daily.str().find("flu") != std::string::npos);
}

TEST_CASE("time_series proportions and missing values") {
  std::vector<Post> posts;
  add_posts(posts, 0, true, 1000, 50, "mask");
  add_posts(posts, 0, false, 100, 0, "mask");
  add_posts(posts, 1, true, 10, 1, "mask");
  const auto view = view_of(std::move(posts));
  const auto s = time_series(*view, "mask");
  REQUIRE(s.size() == static_cast<std::size_t>(view->day_count()));
  REQUIRE(s.size() == 2);
  REQUIRE(s[0].prop_female);
  CHECK(*s[0].prop_female == doctest::Approx(0.05));
  CHECK(*s[0].prop_male == 0.0);
  CHECK(s[1].prop_female);
  CHECK_FALSE(s[1].prop_male);
  const auto j = series_to_json("mask", s);
  CHECK(j["series"][1]["prop_male"].is_null());
  std::ostringstream csv;
  write_series_csv(s, csv);
  CHECK(csv.str().find("2020-03-11") != std::string::npos);
  const auto none = time_series(*view, "absent");
  CHECK(none.size() == 2);
}

TEST_CASE("associations: perfectly co-occurring word ranks first") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> word(0, 30);
  std::vector<Post> posts;
  for (int i = 0; i < 300; ++i) {
    std::string text = "u" + std::to_string(i) + " everywhere";
    if (i % 5 == 0) text += " mask wear";
    for (int k = 0; k < 4; ++k) text += " r" + std::to_string(word(rng));
    posts.push_back(fixture::post("p" + std::to_string(i), at(0, i), i % 2 ? "Mary" : "John", text));
  }
  const auto view = view_of(std::move(posts));
  const auto top = top_associations(*view, "mask", 10);
  REQUIRE_FALSE(top.empty());
  CHECK(top[0].word == "wear");
  CHECK(top[0].co_occurrences == 60);
  for (const auto& a : top) CHECK(a.word != "everywhere");
  CHECK(top_associations(*view, "nothing", 10).empty());
}

TEST_CASE("associations match a brute-force ranking") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> word(0, 7), len(1, 5);
  std::bernoulli_distribution has(0.4);
  std::vector<Post> posts;
  for (int i = 0; i < 20; ++i) {
    std::string text = "x" + std::to_string(i);
    if (has(rng)) text += " term";
    for (int k = len(rng); k > 0; --k) text += " w" + std::to_string(word(rng));
    posts.push_back(fixture::post("p" + std::to_string(i), at(0, i), "Sam", text));
  }
  const auto view = view_of(posts);
  const auto& c = view->corpus();

  std::vector<std::set<std::string>> sets;
  for (const auto& p : c.posts) {
    const auto t = tokenize(p.text);
    sets.emplace_back(t.begin(), t.end());
  }
  std::set<std::string> words;
  for (const auto& s : sets) words.insert(s.begin(), s.end());
  std::vector<std::pair<long double, std::string>> want;
  for (const auto& w : words) {
    if (w == "term") continue;
    std::uint64_t a = 0, b = 0, cc = 0, d = 0;
    for (const auto& s : sets) {
      const bool t = s.count("term"), x = s.count(w);
      (t ? (x ? a : b) : (x ? cc : d))++;
    }
    if (a < 1 || a + b == 0) continue;
    if (static_cast<long double>(a) / (a + b) <= static_cast<long double>(cc) / std::max<std::uint64_t>(cc + d, 1) && cc + d > 0) continue;
    const long double x2 = oracle::chi_square(a, b, cc, d);
    if (x2 <= 0) continue;
    want.emplace_back(-x2, w);
  }
  std::sort(want.begin(), want.end());
  const auto got = top_associations(*view, "term", 100, 1);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].word == want[i].second);
    CHECK(got[i].chi2 == doctest::Approx(static_cast<double>(-want[i].first)).epsilon(1e-9));
  }
}
