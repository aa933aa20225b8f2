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
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "timeutil.hpp"

namespace gterms {

enum class Gender : std::uint8_t { kUnknown = 0, kFemale = 1, kMale = 2 };

std::string_view gender_name(Gender g);
std::optional<Gender> parse_gender(std::string_view name);

struct Post {
  std::string id;
  Timestamp timestamp;
  std::string display_name;
  std::string text;
  Gender gender = Gender::kUnknown;
};

// One query entry: a single token or a contiguous token sequence (phrase).
struct QueryEntry {
  std::string source;
  std::vector<std::string> tokens;

  bool is_phrase() const { return tokens.size() > 1; }
};

class QuerySet {
 public:
  // Entries separated by ';' or newlines; double-quoted entries are phrases.
  // Each entry goes through the post tokenizer, so "COVID-19" becomes the
  // sequence [covid, 19]. Throws Error(kInvalidArgument) when empty.
  static QuerySet parse(std::string_view spec);
  static QuerySet from_file(const std::filesystem::path& path);

  const std::vector<QueryEntry>& entries() const { return entries_; }

  // True when some entry occurs as a contiguous run of `tokens`.
  bool matches(const std::vector<std::string>& tokens) const;

 private:
  std::vector<QueryEntry> entries_;
};

struct DateRange {
  Day first;
  Day last;

  int days() const { return static_cast<int>((last - first).count()) + 1; }
  bool contains(Day d) const { return d >= first && d <= last; }
  int index_of(Day d) const { return static_cast<int>((d - first).count()); }
};

struct Provenance {
  std::string source;
  std::vector<std::string> queries;
  std::uint64_t records_read = 0;
  std::uint64_t malformed = 0;
  std::uint64_t unmatched = 0;
  std::uint64_t duplicate_ids = 0;
  std::uint64_t exact_duplicates = 0;
  std::uint64_t near_duplicates = 0;
  std::string generator;  // synthetic corpora: "synth seed=S n=N"
};

struct Corpus {
  std::vector<Post> posts;  // ascending timestamp
  std::optional<DateRange> date_range;
  Provenance provenance;
};

// Near-duplicate fingerprint: lowercased, leading "rt" token and every token
// starting with '@' or '#' removed, whitespace collapsed, trimmed.
std::string dedup_key(std::string_view text);

// Parsed input records before filtering. Malformed records are counted only.
struct RecordStream {
  std::string source;
  std::vector<Post> records;
  std::uint64_t malformed = 0;
};

RecordStream read_jsonl(std::istream& in, std::string source = "<stream>");
RecordStream read_csv(std::istream& in, std::string source = "<stream>");
// Picks CSV for a ".csv" extension, JSONL otherwise.
RecordStream read_records(const std::filesystem::path& path);

// Query filter, then timestamp sort, then dedup keeping the earliest post
// for each fingerprint.
Corpus ingest(RecordStream stream, const QuerySet& queries, unsigned jobs = 0);

// Sorts, removes repeated ids and fingerprint duplicates in place, recording
// the counts in provenance, and recomputes the date range when unset.
void finalize_corpus(Corpus& corpus);

// Versioned JSONL cache: a header object followed by one post per line.
void write_corpus(const Corpus& corpus, std::ostream& out);
Corpus read_corpus(std::istream& in);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

inline constexpr int kCorpusFormatVersion = 1;

}  // namespace gterms
