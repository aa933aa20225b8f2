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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"

namespace gterms {

// ---------------------------------------------------------------------------
// KWIC sampling

struct KwicEntry {
  std::string post_id;
  Timestamp timestamp;
  Gender gender = Gender::kUnknown;
  std::string text;
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // byte [begin, end)
};

struct KwicSample {
  std::string term;
  std::uint64_t seed = 0;
  std::size_t n_requested = 0;
  std::size_t n_returned = 0;
  std::size_t n_matching = 0;  // posts containing the term
  std::vector<KwicEntry> entries;
  std::string notice;  // set when the term does not occur
};

inline constexpr std::size_t kDefaultKwicSize = 10;

// Uniform sample without replacement among posts containing `term`,
// reproducible for a seed. Entries are in corpus (time) order.
KwicSample kwic(const CorpusView& view, std::string_view term,
                std::size_t n = kDefaultKwicSize, std::uint64_t seed = 0);

// Post text with each match wrapped in brackets.
std::string bracketed(const KwicEntry& e);
// One line per entry: id, timestamp, gender, bracketed text (newlines folded).
void write_kwic_text(const KwicSample& s, std::ostream& out);
nlohmann::ordered_json kwic_to_json(const KwicSample& s);

// ---------------------------------------------------------------------------
// Theme store

enum class Tendency : std::uint8_t { kFemale, kMale, kMixed };

std::string_view tendency_name(Tendency t);
std::optional<Tendency> parse_tendency(std::string_view s);

struct Theme {
  std::string id;
  std::string name;
  Tendency tendency = Tendency::kMixed;
  std::set<std::string> terms;
  std::string notes;
  std::string created;
  std::string modified;
};

// Analyst groupings of terms, bound to one analysis by its content hash.
// A term belongs to at most one theme; names are unique. Not thread-safe:
// callers serialize mutations.
class ThemeStore {
 public:
  explicit ThemeStore(std::string analysis_hash = {});

  static ThemeStore from_json(const nlohmann::json& j);
  static ThemeStore load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string serialize() const;
  nlohmann::ordered_json to_json() const;

  const std::string& analysis_hash() const { return analysis_hash_; }
  const std::vector<Theme>& themes() const { return themes_; }
  const Theme* find(std::string_view id) const;
  std::optional<std::string> theme_of(std::string_view term) const;

  const Theme& create(std::string name, Tendency tendency, std::string notes = {},
                      Timestamp now = current_time());
  const Theme& update(std::string_view id, std::optional<std::string> name,
                      std::optional<Tendency> tendency, std::optional<std::string> notes,
                      Timestamp now = current_time());
  void remove(std::string_view id);
  // Every term must exist in `result`; terms already in another theme move.
  const Theme& assign(std::string_view id, const std::vector<std::string>& terms,
                      const AnalysisResult& result, Timestamp now = current_time());
  const Theme& unassign(std::string_view id, std::string_view term,
                        Timestamp now = current_time());

  // Grouped report: theme -> terms -> statistics.
  nlohmann::ordered_json export_json(const AnalysisResult& result) const;
  void export_csv(const AnalysisResult& result, std::ostream& out) const;

  static Timestamp current_time();

 private:
  Theme& mutable_theme(std::string_view id);
  void check_name(std::string_view name, std::string_view except_id) const;

  std::string analysis_hash_;
  std::uint64_t next_id_ = 1;
  std::vector<Theme> themes_;  // creation order
};

nlohmann::ordered_json theme_to_json(const Theme& t);

inline constexpr int kThemeFormatVersion = 1;

}  // namespace gterms
