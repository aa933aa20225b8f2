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

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpus.hpp"

namespace gterms {

namespace unicode {

// Decodes the code point at byte offset `pos`, advancing it. Invalid UTF-8
// yields a negative value and advances by one byte.
std::int32_t next(std::string_view s, std::size_t& pos);
void append(std::string& out, std::int32_t cp);

bool is_letter(std::int32_t cp);
bool is_digit(std::int32_t cp);
bool is_upper(std::int32_t cp);
bool is_lower(std::int32_t cp);
bool is_space(std::int32_t cp);
std::int32_t to_lower(std::int32_t cp);

std::string lower(std::string_view s);

}  // namespace unicode

struct TokenSpan {
  std::string token;
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

// Tokens are maximal runs of letters, digits, '_' and apostrophes,
// lowercased. A '#' or '@' directly before a run (and not itself preceded by
// a token character) stays attached. Apostrophes at either end of a run are
// dropped and U+2019 is folded to '.
std::vector<std::string> tokenize(std::string_view text);
std::vector<TokenSpan> tokenize_spans(std::string_view text);

using TermId = std::uint32_t;

// Term strings in ascending byte order; ids are positions in that order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> sorted_terms);
  Vocabulary(const Vocabulary& other) : Vocabulary(other.terms_) {}
  Vocabulary& operator=(const Vocabulary& other) {
    if (this != &other) *this = Vocabulary(other.terms_);
    return *this;
  }
  Vocabulary(Vocabulary&&) noexcept = default;
  Vocabulary& operator=(Vocabulary&&) noexcept = default;

  std::size_t size() const { return terms_.size(); }
  const std::string& term(TermId id) const { return terms_[id]; }
  const std::vector<std::string>& terms() const { return terms_; }
  // Returns size() when absent.
  TermId find(std::string_view term) const;
  bool contains(std::string_view term) const { return find(term) != size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string_view, TermId> ids_;  // views into terms_
};

// Per-post sorted distinct term ids over a whole corpus.
struct CorpusIndex {
  Vocabulary vocab;
  std::vector<std::vector<TermId>> post_terms;

  bool post_has(std::size_t post, TermId term) const;
};

CorpusIndex index_corpus(const Corpus& corpus, unsigned jobs = 0);

// Per-gender document frequencies. Unknown-gender posts never contribute.
struct DocFrequencyTable {
  std::vector<std::uint64_t> df_female;  // indexed by TermId
  std::vector<std::uint64_t> df_male;
  std::uint64_t n_female = 0;
  std::uint64_t n_male = 0;

  bool testable() const { return n_female > 0 && n_male > 0; }
};

// Counts over the listed post positions, or over every post. Shards are
// merged in a fixed order.
DocFrequencyTable count_table(const CorpusIndex& index,
                              std::span<const Gender> genders,
                              std::span<const std::uint32_t> posts,
                              unsigned jobs = 0);
DocFrequencyTable count_table(const CorpusIndex& index,
                              std::span<const Gender> genders,
                              unsigned jobs = 0);

struct TermTable {
  CorpusIndex index;
  DocFrequencyTable table;
};

TermTable build_table(const Corpus& corpus, unsigned jobs = 0);

std::vector<Gender> genders_of(const Corpus& corpus);

// CSV dump "term,df_female,df_male" for terms seen in gendered posts.
void write_table_csv(const TermTable& t, std::ostream& out);

}  // namespace gterms
