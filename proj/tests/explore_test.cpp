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
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "fixtures.hpp"
#include "gender.hpp"
#include "oracles.hpp"

using namespace gterms;

namespace {

std::shared_ptr<CorpusView> sport_view() {
  std::vector<Post> posts;
  const char* words[] = {"league", "game", "nba", "vote", "mask"};
  for (int i = 0; i < 400; ++i) {
    const bool female = i % 2 == 0;
    std::string text = "Post " + std::to_string(i);
    for (int w = 0; w < 5; ++w) {
      const int rate = (w < 3) == female ? 10 : 3;
      if ((i / 2 + w) % rate == 0) text += std::string(" ") + words[w];
    }
    char when[32];
    std::snprintf(when, sizeof when, "2020-03-%02dT12:%02d:%02dZ", 10 + i % 3, i / 60 % 60, i % 60);
    posts.push_back(fixture::post("p" + std::to_string(i), when, female ? "Mary" : "John", text));
  }
  Corpus c = fixture::corpus(std::move(posts));
  assign_genders(c, NameLexicon::builtin(), 1);
  return std::make_shared<CorpusView>(std::move(c), 1);
}

const Timestamp kNow = *parse_timestamp("2020-04-01T00:00:00Z");

}  // namespace

TEST_CASE("kwic default size and small populations") {
  const auto view = sport_view();
  const auto s = kwic(*view, "league");
  CHECK(s.n_requested == kDefaultKwicSize);
  CHECK(s.n_returned == 10);
  CHECK(s.entries.size() == 10);
  for (const auto& e : s.entries) {
    REQUIRE_FALSE(e.matches.empty());
    const auto [b, end] = e.matches[0];
    CHECK(e.text.substr(b, end - b) == "league");
    CHECK(bracketed(e).find("[league]") != std::string::npos);
  }

  std::vector<Post> posts = {fixture::post("1", "2020-03-10T10:00:00Z", "Mary", "A rare Word"),
                             fixture::post("2", "2020-03-10T11:00:00Z", "John", "word again, WORD"),
                             fixture::post("3", "2020-03-10T12:00:00Z", "Sam", "the word"),
                             fixture::post("4", "2020-03-10T13:00:00Z", "Sam", "nothing")};
  Corpus c = fixture::corpus(posts);
  assign_genders(c, NameLexicon::builtin(), 1);
  const CorpusView small(std::move(c), 1);
  const auto k = kwic(small, "Word", 10, 5);
  CHECK(k.n_returned == 3);
  CHECK(k.n_matching == 3);
  CHECK(k.entries[1].matches.size() == 2);
  CHECK(bracketed(k.entries[1]) == "[word] again, [WORD]");
  const auto missing = kwic(small, "absent", 10, 5);
  CHECK(missing.n_returned == 0);
  CHECK_FALSE(missing.notice.empty());
}

TEST_CASE("kwic is reproducible per seed") {
  const auto view = sport_view();
  auto ids = [&](std::uint64_t seed) {
    std::vector<std::string> out;
    for (const auto& e : kwic(*view, "game", 10, seed).entries) out.push_back(e.post_id);
    return out;
  };
  CHECK(ids(7) == ids(7));
  CHECK(ids(7) != ids(8));
  std::ostringstream a, b;
  write_kwic_text(kwic(*view, "game", 10, 3), a);
  write_kwic_text(kwic(*view, "game", 10, 3), b);
  CHECK(a.str() == b.str());
  CHECK(kwic_to_json(kwic(*view, "game", 10, 3))["entries"].size() == 10);
}

TEST_CASE("kwic inclusion is uniform") {
  const auto view = sport_view();
  const std::size_t n = 10;
  const int runs = 4000;
  std::map<std::string, int> hits;
  std::size_t population = 0;
  for (int s = 0; s < runs; ++s) {
    const auto k = kwic(*view, "nba", n, static_cast<std::uint64_t>(s));
    population = k.n_matching;
    for (const auto& e : k.entries) ++hits[e.post_id];
  }
  REQUIRE(population > n);
  const double p = static_cast<double>(n) / population;
  const double tol = 3 * oracle::binomial_se(p, runs);
  int outside = 0;
  for (const auto& [id, h] : hits) {
    if (std::abs(static_cast<double>(h) / runs - p) > tol) ++outside;
  }
  // 3 SE is a 99.7% band per post; allow the expected handful of misses.
  CHECK(outside <= std::max<int>(2, static_cast<int>(population) / 50));
  CHECK(hits.size() == population);
}

TEST_CASE("theme lifecycle") {
  const auto view = sport_view();
  const AnalysisResult r = analyze(*view, AnalysisConfig{});
  ThemeStore store(r.content_hash);
  const std::string sport = store.create("Sport", Tendency::kFemale, "", kNow).id;
  const std::string politics = store.create("Politics", Tendency::kMale, "", kNow).id;
  CHECK(sport == "theme-1");
  CHECK(politics == "theme-2");
  CHECK_THROWS_AS(store.create("Sport", Tendency::kMixed, "", kNow), Error);
  CHECK_THROWS_AS(store.create("", Tendency::kMixed, "", kNow), Error);

  store.assign(sport, {"league", "game", "nba"}, r, kNow);
  const auto report = store.export_json(r);
  REQUIRE(report["themes"].size() == 2);
  CHECK(report["themes"][0]["name"] == "Sport");
  CHECK(report["themes"][0]["terms"].size() == 3);
  CHECK(report["themes"][0]["terms"][0]["term"] == "game");
  CHECK(report["analysis_hash"] == r.content_hash);
  std::ostringstream csv;
  store.export_csv(r, csv);
  CHECK(csv.str().find("theme-1,Sport,female,league,") != std::string::npos);

  store.assign(politics, {"league"}, r, kNow);
  CHECK(store.theme_of("league") == politics);
  CHECK(store.find(sport)->terms.count("league") == 0);
  CHECK(store.find(politics)->terms.count("league") == 1);

  CHECK_THROWS_AS(store.assign(sport, {"not-a-term"}, r, kNow), Error);
  CHECK_THROWS_AS(store.assign("theme-99", {"game"}, r, kNow), Error);

  store.unassign(sport, "game", kNow);
  CHECK_FALSE(store.theme_of("game"));
  CHECK_THROWS_AS(store.unassign(sport, "game", kNow), Error);

  store.remove(politics);
  CHECK_FALSE(store.theme_of("league"));
  CHECK_FALSE(store.find(politics));
  CHECK(store.create("Later", Tendency::kMixed, "", kNow).id == "theme-3");

  store.update(sport, std::string("Sports"), Tendency::kMixed, std::string("ball games"), kNow);
  CHECK(store.find(sport)->name == "Sports");
  CHECK(store.find(sport)->notes == "ball games");
}

TEST_CASE("theme store save, load, save is byte-identical") {
  const auto view = sport_view();
  const AnalysisResult r = analyze(*view, AnalysisConfig{});
  ThemeStore store(r.content_hash);
  const auto id = store.create("Sport \"ball\"", Tendency::kFemale, "notes,\nmore", kNow).id;
  store.assign(id, {"nba", "league"}, r, kNow);
  store.create("Empty", Tendency::kMixed, "", kNow);
  const auto dir = std::filesystem::temp_directory_path() / "gterms_theme_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "themes.json";
  store.save(path);
  const std::string first = store.serialize();
  const ThemeStore back = ThemeStore::load(path);
  CHECK(back.serialize() == first);
  back.save(path);
  CHECK(ThemeStore::load(path).serialize() == first);
  CHECK(back.analysis_hash() == r.content_hash);
  std::filesystem::remove_all(dir);
}

TEST_CASE("theme file validation") {
  CHECK_THROWS_AS(ThemeStore::from_json(nlohmann::json::parse(R"({"format":"x"})")), Error);
  const auto dup = nlohmann::json::parse(R"({"format":"gterms-themes","version":1,"analysis_hash":"h",
    "next_id":3,"themes":[
      {"id":"theme-1","name":"A","gender_tendency":"mixed","terms":["x"],"notes":"","created":"","modified":""},
      {"id":"theme-2","name":"B","gender_tendency":"mixed","terms":["x"],"notes":"","created":"","modified":""}]})");
  CHECK_THROWS_AS(ThemeStore::from_json(dup), Error);
}
