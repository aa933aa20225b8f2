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

#include "explore.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "csv.hpp"
#include "error.hpp"

namespace gterms {

using nlohmann::json;
using nlohmann::ordered_json;

KwicSample kwic(const CorpusView& view, std::string_view term, std::size_t n,
                std::uint64_t seed) {
  KwicSample s;
  s.term = unicode::lower(term);
  s.seed = seed;
  s.n_requested = n;
  const auto posts = view.postings(view.vocab().find(s.term));
  s.n_matching = posts.size();
  if (posts.empty()) {
    s.notice = "term '" + s.term + "' does not occur in the corpus";
    return s;
  }
  std::vector<std::uint32_t> chosen;
  chosen.reserve(std::min(n, posts.size()));
  std::mt19937_64 rng(seed);
  std::sample(posts.begin(), posts.end(), std::back_inserter(chosen), n, rng);
  for (auto p : chosen) {
    const Post& post = view.corpus().posts[p];
    KwicEntry e{post.id, post.timestamp, post.gender, post.text, {}};
    for (const auto& span : tokenize_spans(post.text)) {
      if (span.token == s.term) e.matches.emplace_back(span.begin, span.end);
    }
    s.entries.push_back(std::move(e));
  }
  s.n_returned = s.entries.size();
  return s;
}

std::string bracketed(const KwicEntry& e) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& [b, end] : e.matches) {
    out.append(e.text, pos, b - pos);
    out.push_back('[');
    out.append(e.text, b, end - b);
    out.push_back(']');
    pos = end;
  }
  out.append(e.text, pos, std::string::npos);
  return out;
}

void write_kwic_text(const KwicSample& s, std::ostream& out) {
  if (!s.notice.empty()) {
    out << "# " << s.notice << '\n';
    return;
  }
  for (const auto& e : s.entries) {
    std::string line = bracketed(e);
    std::replace(line.begin(), line.end(), '\n', ' ');
    std::replace(line.begin(), line.end(), '\r', ' ');
    out << e.post_id << '\t' << format_timestamp(e.timestamp) << '\t' << gender_name(e.gender)
        << '\t' << line << '\n';
  }
}

ordered_json kwic_to_json(const KwicSample& s) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : s.entries) {
    ordered_json matches = ordered_json::array();
    for (const auto& [b, end] : e.matches) matches.push_back({b, end});
    entries.push_back({{"id", e.post_id},
                       {"created_at", format_timestamp(e.timestamp)},
                       {"gender", gender_name(e.gender)},
                       {"text", e.text},
                       {"matches", matches},
                       {"bracketed", bracketed(e)}});
  }
  ordered_json j{{"term", s.term},
                 {"seed", s.seed},
                 {"n_requested", s.n_requested},
                 {"n_returned", s.n_returned},
                 {"n_matching", s.n_matching},
                 {"entries", entries}};
  if (!s.notice.empty()) j["notice"] = s.notice;
  return j;
}

std::string_view tendency_name(Tendency t) {
  switch (t) {
    case Tendency::kFemale: return "female";
    case Tendency::kMale: return "male";
    case Tendency::kMixed: break;
  }
  return "mixed";
}

std::optional<Tendency> parse_tendency(std::string_view s) {
  if (s == "female") return Tendency::kFemale;
  if (s == "male") return Tendency::kMale;
  if (s == "mixed") return Tendency::kMixed;
  return std::nullopt;
}

ThemeStore::ThemeStore(std::string analysis_hash) : analysis_hash_(std::move(analysis_hash)) {}

Timestamp ThemeStore::current_time() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

ordered_json theme_to_json(const Theme& t) {
  return ordered_json{{"id", t.id},
                      {"name", t.name},
                      {"gender_tendency", tendency_name(t.tendency)},
                      {"terms", std::vector<std::string>(t.terms.begin(), t.terms.end())},
                      {"notes", t.notes},
                      {"created", t.created},
                      {"modified", t.modified}};
}

ordered_json ThemeStore::to_json() const {
  ordered_json themes = ordered_json::array();
  for (const auto& t : themes_) themes.push_back(theme_to_json(t));
  return ordered_json{{"format", "gterms-themes"},
                      {"version", kThemeFormatVersion},
                      {"analysis_hash", analysis_hash_},
                      {"next_id", next_id_},
                      {"themes", themes}};
}

std::string ThemeStore::serialize() const { return to_json().dump(1) + "\n"; }

ThemeStore ThemeStore::from_json(const json& j) {
  if (!j.is_object() || j.value("format", "") != "gterms-themes") {
    throw Error(ErrorCode::kParse, "not a gterms theme file");
  }
  if (j.value("version", 0) != kThemeFormatVersion) {
    throw Error(ErrorCode::kParse, "unsupported theme file version");
  }
  try {
    ThemeStore store(j.at("analysis_hash").get<std::string>());
    store.next_id_ = j.at("next_id").get<std::uint64_t>();
    std::set<std::string> seen_terms, seen_names, seen_ids;
    for (const auto& tj : j.at("themes")) {
      Theme t;
      t.id = tj.at("id").get<std::string>();
      t.name = tj.at("name").get<std::string>();
      auto tendency = parse_tendency(tj.at("gender_tendency").get<std::string>());
      if (!tendency) throw Error(ErrorCode::kParse, "bad gender_tendency in theme " + t.id);
      t.tendency = *tendency;
      for (const auto& term : tj.at("terms")) {
        auto s = term.get<std::string>();
        if (!seen_terms.insert(s).second) {
          throw Error(ErrorCode::kParse, "term '" + s + "' appears in more than one theme");
        }
        t.terms.insert(std::move(s));
      }
      t.notes = tj.at("notes").get<std::string>();
      t.created = tj.at("created").get<std::string>();
      t.modified = tj.at("modified").get<std::string>();
      if (!seen_ids.insert(t.id).second) throw Error(ErrorCode::kParse, "duplicate theme id " + t.id);
      if (!seen_names.insert(t.name).second) {
        throw Error(ErrorCode::kParse, "duplicate theme name " + t.name);
      }
      store.themes_.push_back(std::move(t));
    }
    return store;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed theme file: ") + e.what());
  }
}

ThemeStore ThemeStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open theme file " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kParse, "theme file is not valid JSON");
  return from_json(j);
}

void ThemeStore::save(const std::filesystem::path& path) const {
  // Write-then-rename so a crash never leaves a truncated file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write theme file " + tmp.string());
    out << serialize();
    if (!out) throw Error(ErrorCode::kIo, "failed writing theme file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot replace theme file " + path.string());
}

const Theme* ThemeStore::find(std::string_view id) const {
  for (const auto& t : themes_) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

Theme& ThemeStore::mutable_theme(std::string_view id) {
  for (auto& t : themes_) {
    if (t.id == id) return t;
  }
  throw Error(ErrorCode::kNotFound, "unknown theme '" + std::string(id) + "'");
}

std::optional<std::string> ThemeStore::theme_of(std::string_view term) const {
  for (const auto& t : themes_) {
    if (t.terms.find(std::string(term)) != t.terms.end()) return t.id;
  }
  return std::nullopt;
}

void ThemeStore::check_name(std::string_view name, std::string_view except_id) const {
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, "theme name must not be empty");
  for (const auto& t : themes_) {
    if (t.name == name && t.id != except_id) {
      throw Error(ErrorCode::kInvalidArgument, "a theme named '" + std::string(name) + "' exists");
    }
  }
}

const Theme& ThemeStore::create(std::string name, Tendency tendency, std::string notes,
                                Timestamp now) {
  check_name(name, {});
  Theme t;
  t.id = "theme-" + std::to_string(next_id_++);
  t.name = std::move(name);
  t.tendency = tendency;
  t.notes = std::move(notes);
  t.created = t.modified = format_timestamp(now);
  themes_.push_back(std::move(t));
  return themes_.back();
}

const Theme& ThemeStore::update(std::string_view id, std::optional<std::string> name,
                                std::optional<Tendency> tendency,
                                std::optional<std::string> notes, Timestamp now) {
  Theme& t = mutable_theme(id);
  if (name) {
    check_name(*name, id);
    t.name = std::move(*name);
  }
  if (tendency) t.tendency = *tendency;
  if (notes) t.notes = std::move(*notes);
  t.modified = format_timestamp(now);
  return t;
}

void ThemeStore::remove(std::string_view id) {
  auto it = std::find_if(themes_.begin(), themes_.end(), [&](const Theme& t) { return t.id == id; });
  if (it == themes_.end()) throw Error(ErrorCode::kNotFound, "unknown theme '" + std::string(id) + "'");
  themes_.erase(it);
}

const Theme& ThemeStore::assign(std::string_view id, const std::vector<std::string>& terms,
                                const AnalysisResult& result, Timestamp now) {
  Theme& target = mutable_theme(id);
  for (const auto& term : terms) {
    if (!result.find(term)) {
      throw Error(ErrorCode::kNotFound, "unknown term '" + term + "'");
    }
  }
  const std::string stamp = format_timestamp(now);
  for (const auto& term : terms) {
    for (auto& t : themes_) {
      if (&t != &target && t.terms.erase(term)) t.modified = stamp;
    }
    target.terms.insert(term);
  }
  target.modified = stamp;
  return target;
}

const Theme& ThemeStore::unassign(std::string_view id, std::string_view term, Timestamp now) {
  Theme& t = mutable_theme(id);
  if (t.terms.erase(std::string(term)) == 0) {
    throw Error(ErrorCode::kNotFound,
                "term '" + std::string(term) + "' is not in theme '" + std::string(id) + "'");
  }
  t.modified = format_timestamp(now);
  return t;
}

ordered_json ThemeStore::export_json(const AnalysisResult& result) const {
  ordered_json themes = ordered_json::array();
  for (const auto& t : themes_) {
    ordered_json terms = ordered_json::array();
    for (const auto& term : t.terms) {
      if (const TermRecord* rec = result.find(term)) {
        terms.push_back(term_record_json(*rec, result.config));
      }
    }
    themes.push_back({{"id", t.id},
                      {"name", t.name},
                      {"gender_tendency", tendency_name(t.tendency)},
                      {"notes", t.notes},
                      {"terms", terms}});
  }
  return ordered_json{{"format", "gterms-theme-report"},
                      {"version", kThemeFormatVersion},
                      {"analysis_hash", result.content_hash},
                      {"themes", themes}};
}

void ThemeStore::export_csv(const AnalysisResult& result, std::ostream& out) const {
  out << "theme_id,theme,gender_tendency,term,direction,chi2,level,stars_total,prop_female,"
         "prop_male,odds_ratio\n";
  for (const auto& t : themes_) {
    for (const auto& term : t.terms) {
      const TermRecord* rec = result.find(term);
      if (!rec) continue;
      const TermStats& s = rec->stats;
      std::ostringstream chi2, pf, pm, orr;
      chi2.precision(10);
      pf.precision(10);
      pm.precision(10);
      orr.precision(10);
      chi2 << s.chi2;
      pf << s.prop_female;
      pm << s.prop_male;
      if (s.odds_ratio) orr << *s.odds_ratio;
      out << csv::join_row({t.id, t.name, std::string(tendency_name(t.tendency)), term,
                            std::string(direction_name(s.direction)), chi2.str(),
                            level_label(s.level, result.config.alphas),
                            std::to_string(rec->daily.star_total), pf.str(), pm.str(), orr.str()})
          << '\n';
    }
  }
}

}  // namespace gterms
