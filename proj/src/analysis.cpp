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

#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "csv.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace gterms {

using nlohmann::json;
using nlohmann::ordered_json;
using stats::ContingencyCounts;
using stats::Level;

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::kFemale: return "female";
    case Direction::kMale: return "male";
    case Direction::kNone: break;
  }
  return "none";
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "female") return Direction::kFemale;
  if (s == "male") return Direction::kMale;
  if (s == "none") return Direction::kNone;
  return std::nullopt;
}

void AnalysisConfig::validate() const {
  stats::validate_alphas(alphas);
  if (star_threshold < 0) {
    throw Error(ErrorCode::kInvalidArgument, "star threshold must be non-negative");
  }
  if (!(prefilter_critical >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "prefilter critical value must be >= 0");
  }
}

TermStats make_term_stats(std::string term, const ContingencyCounts& t) {
  TermStats s;
  s.term = std::move(term);
  s.counts = t;
  s.chi2 = stats::chi_square(t);
  s.p = stats::chi2_sf(s.chi2);
  const std::uint64_t nf = t.a + t.b;
  const std::uint64_t nm = t.c + t.d;
  s.prop_female = nf ? static_cast<double>(t.a) / static_cast<double>(nf) : 0.0;
  s.prop_male = nm ? static_cast<double>(t.c) / static_cast<double>(nm) : 0.0;
  // Exact comparison a/nf vs c/nm via cross-multiplication.
  const __int128 lhs = static_cast<__int128>(t.a) * nm;
  const __int128 rhs = static_cast<__int128>(t.c) * nf;
  if (nf && nm && lhs != rhs) {
    s.direction = lhs > rhs ? Direction::kFemale : Direction::kMale;
  }
  const double major = std::max(s.prop_female, s.prop_male);
  const double minor = std::min(s.prop_female, s.prop_male);
  if (minor > 0.0) s.prop_ratio = major / minor;
  if (t.b > 0 && t.c > 0) {
    s.odds_ratio = (static_cast<double>(t.a) * static_cast<double>(t.d)) /
                   (static_cast<double>(t.b) * static_cast<double>(t.c));
  }
  return s;
}

CorpusView::CorpusView(Corpus corpus, unsigned jobs) : corpus_(std::move(corpus)) {
  index_ = index_corpus(corpus_, jobs);
  genders_ = genders_of(corpus_);
  table_ = count_table(index_, genders_, jobs);

  const std::size_t n = corpus_.posts.size();
  if (n > 0 && !corpus_.date_range) {
    throw Error(ErrorCode::kInvalidArgument, "corpus has posts but no date range");
  }
  post_day_.resize(n);
  day_posts_.resize(static_cast<std::size_t>(day_count()));
  for (std::size_t i = 0; i < n; ++i) {
    const Day d = utc_day(corpus_.posts[i].timestamp);
    if (!corpus_.date_range->contains(d)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "post " + corpus_.posts[i].id + " lies outside the corpus date range");
    }
    post_day_[i] = corpus_.date_range->index_of(d);
    day_posts_[post_day_[i]].push_back(static_cast<std::uint32_t>(i));
  }

  const std::size_t v = index_.vocab.size();
  posting_offsets_.assign(v + 1, 0);
  for (const auto& ids : index_.post_terms) {
    for (TermId id : ids) ++posting_offsets_[id + 1];
  }
  for (std::size_t i = 0; i < v; ++i) posting_offsets_[i + 1] += posting_offsets_[i];
  postings_.resize(posting_offsets_[v]);
  std::vector<std::uint32_t> cursor(posting_offsets_.begin(), posting_offsets_.end() - 1);
  for (std::size_t p = 0; p < n; ++p) {
    for (TermId id : index_.post_terms[p]) postings_[cursor[id]++] = static_cast<std::uint32_t>(p);
  }
}

std::span<const std::uint32_t> CorpusView::postings(TermId id) const {
  if (id >= index_.vocab.size()) return {};
  return std::span<const std::uint32_t>(postings_).subspan(
      posting_offsets_[id], posting_offsets_[id + 1] - posting_offsets_[id]);
}

std::vector<TermStats> analyze_overall(const DocFrequencyTable& table, const Vocabulary& vocab,
                                       const AnalysisConfig& config, std::size_t* m_out) {
  config.validate();
  if (!table.testable()) {
    throw Error(ErrorCode::kUntestable,
                "analysis needs both female and male posts (female=" +
                    std::to_string(table.n_female) + ", male=" + std::to_string(table.n_male) + ")");
  }
  std::vector<TermStats> out;
  std::vector<std::size_t> tested;
  std::vector<double> pvalues;
  for (TermId id = 0; id < vocab.size(); ++id) {
    const std::uint64_t f = table.df_female[id];
    const std::uint64_t m = table.df_male[id];
    if (f + m == 0) continue;
    TermStats s = make_term_stats(
        vocab.term(id), ContingencyCounts::from_df(f, m, table.n_female, table.n_male));
    s.tested = stats::passes_prefilter(f + m, table.n_female, table.n_male,
                                       config.prefilter_critical);
    if (s.tested) {
      tested.push_back(out.size());
      pvalues.push_back(s.p);
    }
    out.push_back(std::move(s));
  }
  const auto levels = stats::bh_levels(pvalues, config.alphas);
  for (std::size_t i = 0; i < tested.size(); ++i) out[tested[i]].level = levels[i];
  if (m_out) *m_out = tested.size();
  return out;
}

DailyResult analyze_daily(const CorpusView& view, const AnalysisConfig& config) {
  config.validate();
  DailyResult result;
  const int days = view.day_count();
  const DateRange range = view.corpus().date_range.value_or(DateRange{});
  std::unordered_map<TermId, std::vector<int>> stars;
  for (int d = 0; d < days; ++d) {
    DaySummary summary;
    summary.day = range.first + std::chrono::days{d};
    const auto posts = view.posts_on_day(d);
    for (auto p : posts) {
      switch (view.genders()[p]) {
        case Gender::kFemale: ++summary.n_female; break;
        case Gender::kMale: ++summary.n_male; break;
        case Gender::kUnknown: ++summary.n_unknown; break;
      }
    }
    summary.testable = summary.n_female > 0 && summary.n_male > 0;
    if (summary.testable) {
      const DocFrequencyTable table =
          count_table(view.index(), view.genders(), posts, config.jobs);
      std::vector<TermId> tested;
      std::vector<double> pvalues;
      for (TermId id = 0; id < view.vocab().size(); ++id) {
        const std::uint64_t f = table.df_female[id];
        const std::uint64_t m = table.df_male[id];
        if (f + m == 0 ||
            !stats::passes_prefilter(f + m, table.n_female, table.n_male,
                                     config.prefilter_critical)) {
          continue;
        }
        tested.push_back(id);
        pvalues.push_back(stats::chi2_sf(stats::chi_square(
            ContingencyCounts::from_df(f, m, table.n_female, table.n_male))));
      }
      summary.m = tested.size();
      const auto levels = stats::bh_levels(pvalues, config.alphas);
      for (std::size_t i = 0; i < tested.size(); ++i) {
        if (levels[i] == Level::kNone) continue;
        auto& row = stars[tested[i]];
        if (row.empty()) row.assign(static_cast<std::size_t>(days), 0);
        row[d] = stats::stars(levels[i]);
      }
    }
    result.days.push_back(summary);
  }
  for (auto& [id, row] : stars) {
    DailyStarRecord rec;
    rec.term = view.vocab().term(id);
    rec.stars_by_day = std::move(row);
    for (int s : rec.stars_by_day) {
      rec.star_total += s;
      rec.days += s > 0 ? 1 : 0;
    }
    result.records.emplace(rec.term, std::move(rec));
  }
  return result;
}

const TermRecord* AnalysisResult::find(std::string_view term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term,
                             [](const TermRecord& r, std::string_view t) { return r.stats.term < t; });
  return it != terms.end() && it->stats.term == term ? &*it : nullptr;
}

AnalysisResult analyze(const CorpusView& view, const AnalysisConfig& config) {
  config.validate();
  AnalysisResult r;
  r.config = config;
  const Corpus& corpus = view.corpus();
  r.source = corpus.provenance.source;
  r.generator = corpus.provenance.generator;
  r.date_range = corpus.date_range;
  r.posts = corpus.posts.size();
  r.n_female = view.table().n_female;
  r.n_male = view.table().n_male;
  r.n_unknown = r.posts - r.n_female - r.n_male;

  auto overall = analyze_overall(view.table(), view.vocab(), config, &r.m_overall);
  DailyResult daily = analyze_daily(view, config);
  r.days = std::move(daily.days);
  const std::size_t ndays = r.days.size();

  // Both lists are in term order; merge them.
  for (auto& s : overall) {
    auto it = daily.records.find(s.term);
    const bool starred = it != daily.records.end();
    if (!s.tested) ++r.prefiltered;
    if (!s.tested && !starred) continue;
    TermRecord rec;
    rec.daily = starred ? std::move(it->second) : DailyStarRecord{s.term, std::vector<int>(ndays, 0), 0, 0};
    rec.stats = std::move(s);
    rec.significant_overall = rec.stats.level != Level::kNone;
    rec.daily_included = rec.daily.star_total >= config.star_threshold;
    rec.included = rec.significant_overall || rec.daily_included;
    if (rec.included) r.included_terms.push_back(rec.stats.term);
    r.terms.push_back(std::move(rec));
  }
  r.content_hash = fnv1a_hex(serialize_result(r));
  return r;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string level_label(Level level, const std::vector<double>& alphas) {
  const int idx = stats::stars(level);
  if (idx == 0 || idx > static_cast<int>(alphas.size())) return "none";
  std::ostringstream os;
  os << alphas[idx - 1];
  return os.str();
}

namespace {

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

ordered_json config_json(const AnalysisConfig& c) {
  return ordered_json{{"alphas", c.alphas},
                      {"star_threshold", c.star_threshold},
                      {"prefilter_critical", c.prefilter_critical},
                      {"lexicon_threshold", c.lexicon_threshold},
                      {"lexicon", c.lexicon_source},
                      {"correction", "benjamini-hochberg"},
                      {"daily_family", "per-day"},
                      {"day_boundary", "UTC"}};
}

}  // namespace

ordered_json term_record_json(const TermRecord& rec, const AnalysisConfig& config) {
  const TermStats& s = rec.stats;
  ordered_json j{{"term", s.term},
                 {"a", s.counts.a},
                 {"b", s.counts.b},
                 {"c", s.counts.c},
                 {"d", s.counts.d},
                 {"tested", s.tested},
                 {"chi2", s.chi2},
                 {"p", s.p},
                 {"level", stats::stars(s.level)},
                 {"level_label", level_label(s.level, config.alphas)},
                 {"direction", direction_name(s.direction)},
                 {"prop_female", s.prop_female},
                 {"prop_male", s.prop_male},
                 {"prop_ratio", optional_number(s.prop_ratio)},
                 {"odds_ratio", optional_number(s.odds_ratio)},
                 {"stars_by_day", rec.daily.stars_by_day},
                 {"stars_total", rec.daily.star_total},
                 {"star_days", rec.daily.days},
                 {"significant_overall", rec.significant_overall},
                 {"daily_included", rec.daily_included},
                 {"included", rec.included}};
  return j;
}

ordered_json result_to_json(const AnalysisResult& r) {
  ordered_json j;
  j["format"] = "gterms-analysis";
  j["version"] = kResultFormatVersion;
  j["content_hash"] = r.content_hash;
  j["config"] = config_json(r.config);
  ordered_json corpus{{"source", r.source}, {"generator", r.generator}};
  if (r.date_range) {
    corpus["date_range"] = {format_day(r.date_range->first), format_day(r.date_range->last)};
    corpus["days"] = r.date_range->days();
  } else {
    corpus["date_range"] = nullptr;
    corpus["days"] = 0;
  }
  corpus["posts"] = r.posts;
  corpus["female"] = r.n_female;
  corpus["male"] = r.n_male;
  corpus["unknown"] = r.n_unknown;
  j["corpus"] = corpus;
  j["overall"] = {{"m", r.m_overall},
                  {"prefiltered", r.prefiltered},
                  {"significant", std::count_if(r.terms.begin(), r.terms.end(), [](const TermRecord& t) {
                     return t.significant_overall;
                   })}};
  ordered_json days = ordered_json::array();
  for (const auto& d : r.days) {
    days.push_back({{"date", format_day(d.day)},
                    {"female", d.n_female},
                    {"male", d.n_male},
                    {"unknown", d.n_unknown},
                    {"m", d.m},
                    {"testable", d.testable}});
  }
  j["days"] = days;
  j["included_terms"] = r.included_terms;
  ordered_json terms = ordered_json::array();
  for (const auto& t : r.terms) terms.push_back(term_record_json(t, r.config));
  j["terms"] = std::move(terms);
  return j;
}

std::string serialize_result(const AnalysisResult& r) {
  return result_to_json(r).dump(1) + "\n";
}

namespace {

Level level_from_int(int v) {
  if (v < 0 || v > 3) throw Error(ErrorCode::kParse, "bad significance level " + std::to_string(v));
  return static_cast<Level>(v);
}

}  // namespace

AnalysisResult result_from_json(const json& j) {
  if (!j.is_object() || j.value("format", "") != "gterms-analysis") {
    throw Error(ErrorCode::kParse, "not a gterms analysis result");
  }
  if (j.value("version", 0) != kResultFormatVersion) {
    throw Error(ErrorCode::kParse, "unsupported analysis result version");
  }
  try {
    AnalysisResult r;
    const auto& c = j.at("config");
    r.config.alphas = c.at("alphas").get<std::vector<double>>();
    r.config.star_threshold = c.at("star_threshold").get<int>();
    r.config.prefilter_critical = c.at("prefilter_critical").get<double>();
    r.config.lexicon_threshold = c.at("lexicon_threshold").get<double>();
    r.config.lexicon_source = c.at("lexicon").get<std::string>();
    const auto& corpus = j.at("corpus");
    r.source = corpus.at("source").get<std::string>();
    r.generator = corpus.at("generator").get<std::string>();
    if (corpus.at("date_range").is_array()) {
      auto first = parse_day(corpus["date_range"][0].get<std::string>());
      auto last = parse_day(corpus["date_range"][1].get<std::string>());
      if (!first || !last) throw Error(ErrorCode::kParse, "bad date_range");
      r.date_range = DateRange{*first, *last};
    }
    r.posts = corpus.at("posts").get<std::uint64_t>();
    r.n_female = corpus.at("female").get<std::uint64_t>();
    r.n_male = corpus.at("male").get<std::uint64_t>();
    r.n_unknown = corpus.at("unknown").get<std::uint64_t>();
    r.m_overall = j.at("overall").at("m").get<std::size_t>();
    r.prefiltered = j.at("overall").at("prefiltered").get<std::size_t>();
    for (const auto& d : j.at("days")) {
      DaySummary s;
      auto day = parse_day(d.at("date").get<std::string>());
      if (!day) throw Error(ErrorCode::kParse, "bad day");
      s.day = *day;
      s.n_female = d.at("female").get<std::uint64_t>();
      s.n_male = d.at("male").get<std::uint64_t>();
      s.n_unknown = d.at("unknown").get<std::uint64_t>();
      s.m = d.at("m").get<std::size_t>();
      s.testable = d.at("testable").get<bool>();
      r.days.push_back(s);
    }
    r.included_terms = j.at("included_terms").get<std::vector<std::string>>();
    for (const auto& t : j.at("terms")) {
      TermRecord rec;
      TermStats& s = rec.stats;
      s.term = t.at("term").get<std::string>();
      s.counts = {t.at("a").get<std::uint64_t>(), t.at("b").get<std::uint64_t>(),
                  t.at("c").get<std::uint64_t>(), t.at("d").get<std::uint64_t>()};
      s.tested = t.at("tested").get<bool>();
      s.chi2 = t.at("chi2").get<double>();
      s.p = t.at("p").get<double>();
      s.level = level_from_int(t.at("level").get<int>());
      s.direction = parse_direction(t.at("direction").get<std::string>()).value_or(Direction::kNone);
      s.prop_female = t.at("prop_female").get<double>();
      s.prop_male = t.at("prop_male").get<double>();
      s.prop_ratio = read_optional(t, "prop_ratio");
      s.odds_ratio = read_optional(t, "odds_ratio");
      rec.daily.term = s.term;
      rec.daily.stars_by_day = t.at("stars_by_day").get<std::vector<int>>();
      rec.daily.star_total = t.at("stars_total").get<int>();
      rec.daily.days = t.at("star_days").get<int>();
      rec.significant_overall = t.at("significant_overall").get<bool>();
      rec.daily_included = t.at("daily_included").get<bool>();
      rec.included = t.at("included").get<bool>();
      r.terms.push_back(std::move(rec));
    }
    if (!std::is_sorted(r.terms.begin(), r.terms.end(), [](const TermRecord& x, const TermRecord& y) {
          return x.stats.term < y.stats.term;
        })) {
      throw Error(ErrorCode::kParse, "analysis terms are not sorted");
    }
    r.content_hash = j.at("content_hash").get<std::string>();
    const std::string expected = fnv1a_hex([&] {
      AnalysisResult unhashed = r;
      unhashed.content_hash.clear();
      return serialize_result(unhashed);
    }());
    if (expected != r.content_hash) {
      throw Error(ErrorCode::kParse, "analysis content hash mismatch (file edited or corrupt)");
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed analysis result: ") + e.what());
  }
}

void save_result(const AnalysisResult& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write result " + path.string());
  out << serialize_result(r);
  if (!out) throw Error(ErrorCode::kIo, "failed writing result " + path.string());
}

AnalysisResult load_result(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open result " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kParse, "result file is not valid JSON");
  return result_from_json(j);
}

namespace {

std::string number_field(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void write_terms_csv(const AnalysisResult& r, std::ostream& out) {
  out << "term,direction,chi2,level,stars_total,prop_female,prop_male,odds_ratio\n";
  for (const auto& t : r.terms) {
    if (!t.included) continue;
    const TermStats& s = t.stats;
    out << csv::join_row({s.term, std::string(direction_name(s.direction)), number_field(s.chi2),
                          level_label(s.level, r.config.alphas), std::to_string(t.daily.star_total),
                          number_field(s.prop_female), number_field(s.prop_male),
                          s.odds_ratio ? number_field(*s.odds_ratio) : std::string()})
        << '\n';
  }
}

void write_daily_csv(const AnalysisResult& r, std::ostream& out) {
  out << "term,stars_total,star_days,daily_included";
  for (const auto& d : r.days) out << ',' << format_day(d.day);
  out << '\n';
  for (const auto& t : r.terms) {
    if (t.daily.star_total == 0) continue;
    out << csv::escape(t.stats.term) << ',' << t.daily.star_total << ',' << t.daily.days << ','
        << (t.daily_included ? "true" : "false");
    for (int s : t.daily.stars_by_day) out << ',' << s;
    out << '\n';
  }
}

std::vector<Association> top_associations(const CorpusView& view, std::string_view term,
                                          std::size_t k, std::uint64_t min_df) {
  std::vector<Association> out;
  const TermId tid = view.vocab().find(term);
  const auto with_term = view.postings(tid);
  if (with_term.empty() || k == 0) return out;
  const std::uint64_t n = view.corpus().posts.size();
  const std::uint64_t t = with_term.size();

  std::unordered_map<TermId, std::uint64_t> co;
  for (auto p : with_term) {
    for (TermId w : view.index().post_terms[p]) {
      if (w != tid) ++co[w];
    }
  }
  const auto& table = view.table();
  for (const auto& [w, a] : co) {
    if (a < min_df) continue;
    const std::uint64_t df = view.document_frequency(w);
    // a/t > (df-a)/(n-t), compared exactly.
    if (static_cast<__int128>(a) * (n - t) <= static_cast<__int128>(df - a) * t) continue;
    const ContingencyCounts c{a, t - a, df - a, (n - t) - (df - a)};
    const double chi2 = stats::chi_square(c);
    if (chi2 <= 0.0) continue;
    Association as;
    as.word = view.vocab().term(w);
    as.chi2 = chi2;
    as.co_occurrences = a;
    as.document_frequency = df;
    if (table.testable()) {
      const __int128 lhs = static_cast<__int128>(table.df_female[w]) * table.n_male;
      const __int128 rhs = static_cast<__int128>(table.df_male[w]) * table.n_female;
      if (lhs != rhs) as.direction = lhs > rhs ? Direction::kFemale : Direction::kMale;
    }
    out.push_back(std::move(as));
  }
  std::sort(out.begin(), out.end(), [](const Association& x, const Association& y) {
    if (x.chi2 != y.chi2) return x.chi2 > y.chi2;
    return x.word < y.word;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

std::vector<SeriesPoint> time_series(const CorpusView& view, std::string_view term) {
  const int days = view.day_count();
  std::vector<SeriesPoint> series(static_cast<std::size_t>(days));
  const Day first = view.corpus().date_range.value_or(DateRange{}).first;
  for (int d = 0; d < days; ++d) {
    series[d].day = first + std::chrono::days{d};
    for (auto p : view.posts_on_day(d)) {
      const Gender g = view.genders()[p];
      if (g == Gender::kFemale) ++series[d].n_female;
      else if (g == Gender::kMale) ++series[d].n_male;
    }
  }
  const TermId tid = view.vocab().find(term);
  for (auto p : view.postings(tid)) {
    auto& pt = series[view.day_of(p)];
    const Gender g = view.genders()[p];
    if (g == Gender::kFemale) ++pt.df_female;
    else if (g == Gender::kMale) ++pt.df_male;
  }
  for (auto& pt : series) {
    if (pt.n_female) pt.prop_female = static_cast<double>(pt.df_female) / static_cast<double>(pt.n_female);
    if (pt.n_male) pt.prop_male = static_cast<double>(pt.df_male) / static_cast<double>(pt.n_male);
  }
  return series;
}

void write_series_csv(const std::vector<SeriesPoint>& series, std::ostream& out) {
  out << "date,n_female,n_male,df_female,df_male,prop_female,prop_male\n";
  for (const auto& pt : series) {
    out << format_day(pt.day) << ',' << pt.n_female << ',' << pt.n_male << ',' << pt.df_female
        << ',' << pt.df_male << ',' << (pt.prop_female ? number_field(*pt.prop_female) : "")
        << ',' << (pt.prop_male ? number_field(*pt.prop_male) : "") << '\n';
  }
}

ordered_json series_to_json(std::string_view term, const std::vector<SeriesPoint>& series) {
  ordered_json points = ordered_json::array();
  for (const auto& pt : series) {
    points.push_back({{"date", format_day(pt.day)},
                      {"n_female", pt.n_female},
                      {"n_male", pt.n_male},
                      {"df_female", pt.df_female},
                      {"df_male", pt.df_male},
                      {"prop_female", optional_number(pt.prop_female)},
                      {"prop_male", optional_number(pt.prop_male)}});
  }
  return ordered_json{{"term", term}, {"series", points}};
}

}  // namespace gterms
