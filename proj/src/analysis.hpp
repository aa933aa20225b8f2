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
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "stats.hpp"
#include "text.hpp"

namespace gterms {

enum class Direction : std::uint8_t { kNone = 0, kFemale, kMale };

std::string_view direction_name(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

struct AnalysisConfig {
  std::vector<double> alphas{0.05, 0.01, 0.001};
  int star_threshold = 7;
  double prefilter_critical = stats::kCritical05;
  double lexicon_threshold = 0.90;  // echoed only; applied by the lexicon
  std::string lexicon_source = "builtin";
  unsigned jobs = 0;  // never echoed: results do not depend on it

  void validate() const;
};

struct TermStats {
  std::string term;
  stats::ContingencyCounts counts;
  bool tested = false;  // survived the prefilter
  double chi2 = 0.0;
  double p = 1.0;
  stats::Level level = stats::Level::kNone;
  Direction direction = Direction::kNone;
  double prop_female = 0.0;
  double prop_male = 0.0;
  std::optional<double> prop_ratio;  // major / minor proportion
  std::optional<double> odds_ratio;  // ad / bc
};

TermStats make_term_stats(std::string term, const stats::ContingencyCounts& counts);

struct DailyStarRecord {
  std::string term;
  std::vector<int> stars_by_day;
  int star_total = 0;
  int days = 0;  // days with at least one star
};

struct DaySummary {
  Day day;
  std::uint64_t n_female = 0;
  std::uint64_t n_male = 0;
  std::uint64_t n_unknown = 0;
  std::size_t m = 0;  // tests run that day
  bool testable = false;
};

// Immutable per-corpus state shared by analysis, KWIC, associations, series.
class CorpusView {
 public:
  explicit CorpusView(Corpus corpus, unsigned jobs = 0);

  const Corpus& corpus() const { return corpus_; }
  const CorpusIndex& index() const { return index_; }
  const Vocabulary& vocab() const { return index_.vocab; }
  std::span<const Gender> genders() const { return genders_; }
  const DocFrequencyTable& table() const { return table_; }
  int day_count() const { return corpus_.date_range ? corpus_.date_range->days() : 0; }
  int day_of(std::size_t post) const { return post_day_[post]; }
  // Post positions containing a term, ascending.
  std::span<const std::uint32_t> postings(TermId id) const;
  std::uint64_t document_frequency(TermId id) const { return postings(id).size(); }
  std::span<const std::uint32_t> posts_on_day(int day) const { return day_posts_[day]; }

 private:
  Corpus corpus_;
  CorpusIndex index_;
  std::vector<Gender> genders_;
  DocFrequencyTable table_;
  std::vector<int> post_day_;
  std::vector<std::vector<std::uint32_t>> day_posts_;
  std::vector<std::uint32_t> posting_offsets_;
  std::vector<std::uint32_t> postings_;
};

// Prefilter + chi-square + BH at each alpha over one table. Returns one entry
// per term present in a gendered post, in vocabulary order; `m_out` receives
// the number of tests (prefilter survivors).
std::vector<TermStats> analyze_overall(const DocFrequencyTable& table, const Vocabulary& vocab,
                                       const AnalysisConfig& config,
                                       std::size_t* m_out = nullptr);

struct DailyResult {
  std::map<std::string, DailyStarRecord> records;  // terms with any stars
  std::vector<DaySummary> days;
};

// The overall procedure once per UTC day, each day its own test family.
DailyResult analyze_daily(const CorpusView& view, const AnalysisConfig& config);

struct TermRecord {
  TermStats stats;
  DailyStarRecord daily;
  bool significant_overall = false;
  bool daily_included = false;
  bool included = false;
};

struct AnalysisResult {
  AnalysisConfig config;
  std::string source;
  std::string generator;
  std::optional<DateRange> date_range;
  std::uint64_t posts = 0;
  std::uint64_t n_female = 0;
  std::uint64_t n_male = 0;
  std::uint64_t n_unknown = 0;
  std::size_t m_overall = 0;
  std::size_t prefiltered = 0;
  std::vector<DaySummary> days;
  std::vector<TermRecord> terms;  // tested overall or starred on a day; by term
  std::vector<std::string> included_terms;
  std::string content_hash;

  const TermRecord* find(std::string_view term) const;
};

// Requires both genders present; throws Error(kUntestable) otherwise.
AnalysisResult analyze(const CorpusView& view, const AnalysisConfig& config);

nlohmann::ordered_json term_record_json(const TermRecord& rec, const AnalysisConfig& config);
nlohmann::ordered_json result_to_json(const AnalysisResult& r);
AnalysisResult result_from_json(const nlohmann::json& j);
std::string serialize_result(const AnalysisResult& r);
void save_result(const AnalysisResult& r, const std::filesystem::path& path);
AnalysisResult load_result(const std::filesystem::path& path);

std::string level_label(stats::Level level, const std::vector<double>& alphas);

// term,direction,chi2,level,stars_total,prop_female,prop_male,odds_ratio
void write_terms_csv(const AnalysisResult& r, std::ostream& out);
void write_daily_csv(const AnalysisResult& r, std::ostream& out);

struct Association {
  std::string word;
  double chi2 = 0.0;
  Direction direction = Direction::kNone;  // gender leaning of the word overall
  std::uint64_t co_occurrences = 0;
  std::uint64_t document_frequency = 0;
};

inline constexpr std::uint64_t kAssociationMinDf = 5;

// Words over-represented in posts containing `term`, ranked by chi-square
// (ties by word). Empty when the term does not occur.
std::vector<Association> top_associations(const CorpusView& view, std::string_view term,
                                          std::size_t k,
                                          std::uint64_t min_df = kAssociationMinDf);

struct SeriesPoint {
  Day day;
  std::uint64_t n_female = 0;
  std::uint64_t n_male = 0;
  std::uint64_t df_female = 0;
  std::uint64_t df_male = 0;
  std::optional<double> prop_female;  // missing when no posts of that gender
  std::optional<double> prop_male;
};

std::vector<SeriesPoint> time_series(const CorpusView& view, std::string_view term);
void write_series_csv(const std::vector<SeriesPoint>& series, std::ostream& out);
nlohmann::ordered_json series_to_json(std::string_view term,
                                      const std::vector<SeriesPoint>& series);

std::string fnv1a_hex(std::string_view data);

inline constexpr int kResultFormatVersion = 1;

}  // namespace gterms
