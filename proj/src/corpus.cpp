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

#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "csv.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace gterms {

using nlohmann::json;

std::string_view gender_name(Gender g) {
  switch (g) {
    case Gender::kFemale: return "female";
    case Gender::kMale: return "male";
    case Gender::kUnknown: break;
  }
  return "unknown";
}

std::optional<Gender> parse_gender(std::string_view name) {
  if (name == "female") return Gender::kFemale;
  if (name == "male") return Gender::kMale;
  if (name == "unknown") return Gender::kUnknown;
  return std::nullopt;
}

QuerySet QuerySet::parse(std::string_view spec) {
  QuerySet qs;
  auto add = [&](std::string_view raw) {
    std::size_t b = raw.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return;
    std::size_t e = raw.find_last_not_of(" \t\r\n");
    raw = raw.substr(b, e - b + 1);
    if (raw.size() >= 2 && (raw.front() == '"' || raw.front() == '\'') &&
        raw.back() == raw.front()) {
      raw = raw.substr(1, raw.size() - 2);
    }
    QueryEntry entry{std::string(raw), tokenize(raw)};
    if (entry.tokens.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "query entry has no tokens: '" + std::string(raw) + "'");
    }
    qs.entries_.push_back(std::move(entry));
  };
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const char c = spec[i];
    if (c == '"') quoted = !quoted;
    if (!quoted && (c == ';' || c == '\n')) {
      add(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  add(spec.substr(start));
  if (qs.entries_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "query set is empty");
  }
  return qs;
}

QuerySet QuerySet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open query file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool QuerySet::matches(const std::vector<std::string>& tokens) const {
  for (const auto& entry : entries_) {
    const auto& q = entry.tokens;
    if (q.size() > tokens.size()) continue;
    auto it = std::search(tokens.begin(), tokens.end(), q.begin(), q.end());
    if (it != tokens.end()) return true;
  }
  return false;
}

std::string dedup_key(std::string_view text) {
  const std::string lowered = unicode::lower(text);
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  std::size_t word_start = std::string::npos;
  const std::string_view s = lowered;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const std::int32_t cp = unicode::next(s, pos);
    const bool space = cp < 0x80 ? (cp == ' ' || (cp >= '\t' && cp <= '\r'))
                                 : unicode::is_space(cp);
    if (space) {
      if (word_start != std::string::npos) {
        words.push_back(s.substr(word_start, start - word_start));
        word_start = std::string::npos;
      }
    } else if (word_start == std::string::npos) {
      word_start = start;
    }
  }
  if (word_start != std::string::npos) words.push_back(s.substr(word_start));

  std::string key;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto w = words[i];
    if (i == 0 && w == "rt") continue;
    if (w.front() == '@' || w.front() == '#') continue;
    if (!key.empty()) key.push_back(' ');
    key.append(w);
  }
  return key;
}

namespace {

std::optional<Post> make_post(const std::string* id, const std::string* created,
                              const std::string* name, const std::string* text) {
  if (!id || !created || !name || !text || id->empty()) return std::nullopt;
  auto ts = parse_timestamp(*created);
  if (!ts) return std::nullopt;
  return Post{*id, *ts, *name, *text, Gender::kUnknown};
}

const std::string* string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return nullptr;
  return it->is_string() ? it->get_ptr<const std::string*>() : nullptr;
}

}  // namespace

RecordStream read_jsonl(std::istream& in, std::string source) {
  RecordStream rs;
  rs.source = std::move(source);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!obj.is_object()) {
      ++rs.malformed;
      continue;
    }
    // Accept numeric ids as well as strings.
    std::string numeric_id;
    const std::string* id = string_field(obj, "id");
    if (!id) {
      auto it = obj.find("id");
      if (it != obj.end() && it->is_number_integer()) {
        numeric_id = it->dump();
        id = &numeric_id;
      }
    }
    auto post = make_post(id, string_field(obj, "created_at"),
                          string_field(obj, "display_name"), string_field(obj, "text"));
    if (!post) {
      ++rs.malformed;
      continue;
    }
    rs.records.push_back(std::move(*post));
  }
  return rs;
}

RecordStream read_csv(std::istream& in, std::string source) {
  RecordStream rs;
  rs.source = std::move(source);
  csv::Reader reader(in);
  auto header = reader.next_row();
  if (!header) return rs;
  if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
    header->front().erase(0, 3);
  }
  int col_id = -1, col_created = -1, col_name = -1, col_text = -1;
  for (int i = 0; i < static_cast<int>(header->size()); ++i) {
    const auto& h = (*header)[i];
    if (h == "id") col_id = i;
    else if (h == "created_at") col_created = i;
    else if (h == "display_name") col_name = i;
    else if (h == "text") col_text = i;
  }
  if (col_id < 0 || col_created < 0 || col_name < 0 || col_text < 0) {
    throw Error(ErrorCode::kParse,
                rs.source + ": CSV header must contain id, created_at, display_name, text");
  }
  while (auto row = reader.next_row()) {
    if (row->size() == 1 && row->front().empty()) continue;
    auto field = [&](int col) -> const std::string* {
      return col < static_cast<int>(row->size()) ? &(*row)[col] : nullptr;
    };
    auto post = make_post(field(col_id), field(col_created), field(col_name),
                          field(col_text));
    if (!post) {
      ++rs.malformed;
      continue;
    }
    rs.records.push_back(std::move(*post));
  }
  return rs;
}

RecordStream read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open input " + path.string());
  if (path.extension() == ".csv") return read_csv(in, path.string());
  return read_jsonl(in, path.string());
}

void finalize_corpus(Corpus& corpus) {
  auto& posts = corpus.posts;
  std::stable_sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    return a.timestamp < b.timestamp;
  });
  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, std::string_view> keys;  // key -> raw text
  std::vector<Post> kept;
  kept.reserve(posts.size());
  ids.reserve(posts.size());
  keys.reserve(posts.size());
  for (auto& post : posts) {
    if (!ids.insert(post.id).second) {
      ++corpus.provenance.duplicate_ids;
      continue;
    }
    auto [it, inserted] = keys.try_emplace(dedup_key(post.text), std::string_view{});
    if (!inserted) {
      if (it->second == post.text) {
        ++corpus.provenance.exact_duplicates;
      } else {
        ++corpus.provenance.near_duplicates;
      }
      continue;
    }
    kept.push_back(std::move(post));
    it->second = kept.back().text;  // kept never reallocates (reserved above)
  }
  posts = std::move(kept);
  if (!corpus.date_range && !posts.empty()) {
    corpus.date_range = DateRange{utc_day(posts.front().timestamp),
                                  utc_day(posts.back().timestamp)};
  }
}

Corpus ingest(RecordStream stream, const QuerySet& queries, unsigned jobs) {
  Corpus corpus;
  corpus.provenance.source = stream.source;
  for (const auto& e : queries.entries()) corpus.provenance.queries.push_back(e.source);
  corpus.provenance.records_read = stream.records.size() + stream.malformed;
  corpus.provenance.malformed = stream.malformed;

  auto& records = stream.records;
  std::vector<char> keep(records.size(), 0);
  parallel_chunks(records.size(), jobs, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      keep[i] = queries.matches(tokenize(records[i].text)) ? 1 : 0;
    }
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (keep[i]) {
      records[i].gender = Gender::kUnknown;
      corpus.posts.push_back(std::move(records[i]));
    } else {
      ++corpus.provenance.unmatched;
    }
  }
  finalize_corpus(corpus);
  return corpus;
}

namespace {

json provenance_json(const Provenance& p) {
  return json{{"source", p.source},
              {"queries", p.queries},
              {"records_read", p.records_read},
              {"malformed", p.malformed},
              {"unmatched", p.unmatched},
              {"duplicate_ids", p.duplicate_ids},
              {"exact_duplicates", p.exact_duplicates},
              {"near_duplicates", p.near_duplicates},
              {"generator", p.generator}};
}

Provenance provenance_from(const json& j) {
  Provenance p;
  p.source = j.value("source", "");
  p.queries = j.value("queries", std::vector<std::string>{});
  p.records_read = j.value("records_read", std::uint64_t{0});
  p.malformed = j.value("malformed", std::uint64_t{0});
  p.unmatched = j.value("unmatched", std::uint64_t{0});
  p.duplicate_ids = j.value("duplicate_ids", std::uint64_t{0});
  p.exact_duplicates = j.value("exact_duplicates", std::uint64_t{0});
  p.near_duplicates = j.value("near_duplicates", std::uint64_t{0});
  p.generator = j.value("generator", "");
  return p;
}

}  // namespace

void write_corpus(const Corpus& corpus, std::ostream& out) {
  json header{{"format", "gterms-corpus"},
              {"version", kCorpusFormatVersion},
              {"posts", corpus.posts.size()},
              {"provenance", provenance_json(corpus.provenance)}};
  if (corpus.date_range) {
    header["date_range"] = {format_day(corpus.date_range->first),
                            format_day(corpus.date_range->last)};
  } else {
    header["date_range"] = nullptr;
  }
  out << header.dump() << '\n';
  for (const auto& p : corpus.posts) {
    json line{{"id", p.id},
              {"created_at", format_timestamp(p.timestamp)},
              {"display_name", p.display_name},
              {"text", p.text}};
    if (p.gender != Gender::kUnknown) line["gender"] = gender_name(p.gender);
    out << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

Corpus read_corpus(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "corpus file is empty");
  json header = json::parse(line, nullptr, false);
  if (!header.is_object() || header.value("format", "") != "gterms-corpus") {
    throw Error(ErrorCode::kParse, "not a gterms corpus file");
  }
  if (header.value("version", 0) != kCorpusFormatVersion) {
    throw Error(ErrorCode::kParse, "unsupported corpus version " +
                                       std::to_string(header.value("version", 0)));
  }
  Corpus corpus;
  corpus.provenance = provenance_from(header.value("provenance", json::object()));
  if (header.contains("date_range") && header["date_range"].is_array() &&
      header["date_range"].size() == 2) {
    auto first = parse_day(header["date_range"][0].get<std::string>());
    auto last = parse_day(header["date_range"][1].get<std::string>());
    if (!first || !last || *last < *first) {
      throw Error(ErrorCode::kParse, "corpus header has an invalid date_range");
    }
    corpus.date_range = DateRange{*first, *last};
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json obj = json::parse(line, nullptr, false);
    std::optional<Post> post;
    if (obj.is_object()) {
      post = make_post(string_field(obj, "id"), string_field(obj, "created_at"),
                       string_field(obj, "display_name"), string_field(obj, "text"));
    }
    if (!post) {
      throw Error(ErrorCode::kParse, "corpus line " + std::to_string(lineno) + " is malformed");
    }
    if (auto g = string_field(obj, "gender")) {
      post->gender = parse_gender(*g).value_or(Gender::kUnknown);
    }
    corpus.posts.push_back(std::move(*post));
  }
  if (!std::is_sorted(corpus.posts.begin(), corpus.posts.end(),
                      [](const Post& a, const Post& b) { return a.timestamp < b.timestamp; })) {
    throw Error(ErrorCode::kParse, "corpus posts are not sorted by timestamp");
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus " + path.string());
  write_corpus(corpus, out);
  if (!out) throw Error(ErrorCode::kIo, "failed writing corpus " + path.string());
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus " + path.string());
  return read_corpus(in);
}

}  // namespace gterms
