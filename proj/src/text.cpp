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

#include "text.hpp"

#include <algorithm>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "csv.hpp"
#include "parallel.hpp"

namespace gterms {

namespace unicode {

std::int32_t next(std::string_view s, std::size_t& pos) {
  UChar32 c;
  std::int32_t i = static_cast<std::int32_t>(pos);
  U8_NEXT(s.data(), i, static_cast<std::int32_t>(s.size()), c);
  pos = static_cast<std::size_t>(i);
  return c;
}

void append(std::string& out, std::int32_t cp) {
  char buf[U8_MAX_LENGTH];
  std::int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, cp, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

bool is_letter(std::int32_t cp) { return cp >= 0 && u_isalpha(cp); }
bool is_digit(std::int32_t cp) { return cp >= 0 && u_isdigit(cp); }
bool is_upper(std::int32_t cp) { return cp >= 0 && u_isupper(cp); }
bool is_lower(std::int32_t cp) { return cp >= 0 && u_islower(cp); }
bool is_space(std::int32_t cp) { return cp >= 0 && u_isUWhiteSpace(cp); }
std::int32_t to_lower(std::int32_t cp) { return cp >= 0 ? u_tolower(cp) : cp; }

std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    const std::int32_t cp = next(s, pos);
    if (cp < 0) {
      out.append(s.substr(start, pos - start));
    } else if (cp < 0x80) {
      out.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp));
    } else {
      append(out, u_tolower(cp));
    }
  }
  return out;
}

}  // namespace unicode

namespace {

constexpr std::int32_t kRightSingleQuote = 0x2019;

bool is_apostrophe(std::int32_t cp) { return cp == '\'' || cp == kRightSingleQuote; }

bool is_token_char(std::int32_t cp) {
  if (cp < 0) return false;
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9') || cp == '_' || cp == '\'';
  }
  return unicode::is_letter(cp) || unicode::is_digit(cp) || cp == kRightSingleQuote;
}

struct CodePoint {
  std::int32_t cp;
  std::size_t begin;
  std::size_t end;
};

template <typename Emit>
void scan_tokens(std::string_view text, Emit&& emit) {
  std::vector<CodePoint> cps;
  cps.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t begin = pos;
    const std::int32_t cp = unicode::next(text, pos);
    cps.push_back({cp, begin, pos});
  }
  std::size_t i = 0;
  std::string token;
  while (i < cps.size()) {
    if (!is_token_char(cps[i].cp)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && is_token_char(cps[j].cp)) ++j;
    // [i, j) is the raw run; trim apostrophes at both ends.
    std::size_t first = i;
    std::size_t last = j;
    while (first < last && is_apostrophe(cps[first].cp)) ++first;
    while (last > first && is_apostrophe(cps[last - 1].cp)) --last;
    if (first < last) {
      token.clear();
      std::size_t begin = cps[first].begin;
      if (first == i && i > 0 && (cps[i - 1].cp == '#' || cps[i - 1].cp == '@') &&
          (i < 2 || !is_token_char(cps[i - 2].cp))) {
        token.push_back(static_cast<char>(cps[i - 1].cp));
        begin = cps[i - 1].begin;
      }
      for (std::size_t k = first; k < last; ++k) {
        const std::int32_t cp = cps[k].cp;
        if (cp == kRightSingleQuote) {
          token.push_back('\'');
        } else if (cp < 0x80) {
          token.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp));
        } else {
          unicode::append(token, unicode::to_lower(cp));
        }
      }
      emit(token, begin, cps[last - 1].end);
    }
    i = j;
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  scan_tokens(text, [&](const std::string& tok, std::size_t, std::size_t) {
    out.push_back(tok);
  });
  return out;
}

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  scan_tokens(text, [&](const std::string& tok, std::size_t b, std::size_t e) {
    out.push_back({tok, b, e});
  });
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> sorted_terms)
    : terms_(std::move(sorted_terms)) {
  ids_.reserve(terms_.size());
  for (TermId id = 0; id < terms_.size(); ++id) ids_.emplace(terms_[id], id);
}

TermId Vocabulary::find(std::string_view term) const {
  auto it = ids_.find(term);
  return it == ids_.end() ? static_cast<TermId>(terms_.size()) : it->second;
}

bool CorpusIndex::post_has(std::size_t post, TermId term) const {
  const auto& ids = post_terms[post];
  return std::binary_search(ids.begin(), ids.end(), term);
}

CorpusIndex index_corpus(const Corpus& corpus, unsigned jobs) {
  const std::size_t n = corpus.posts.size();
  const std::size_t shards = chunk_count(n, jobs);
  struct Shard {
    std::unordered_map<std::string, TermId> local;
    std::vector<std::string> local_terms;
  };
  std::vector<Shard> shard_data(shards);
  CorpusIndex index;
  index.post_terms.resize(n);

  parallel_chunks(n, jobs, [&](std::size_t s, std::size_t begin, std::size_t end) {
    Shard& shard = shard_data[s];
    for (std::size_t p = begin; p < end; ++p) {
      auto& ids = index.post_terms[p];
      scan_tokens(corpus.posts[p].text,
                  [&](const std::string& tok, std::size_t, std::size_t) {
                    auto [it, inserted] = shard.local.try_emplace(
                        tok, static_cast<TermId>(shard.local_terms.size()));
                    if (inserted) shard.local_terms.push_back(tok);
                    ids.push_back(it->second);
                  });
    }
  });

  std::vector<std::string> all;
  for (auto& shard : shard_data) {
    all.insert(all.end(), shard.local_terms.begin(), shard.local_terms.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  index.vocab = Vocabulary(std::move(all));

  parallel_chunks(n, jobs, [&](std::size_t s, std::size_t begin, std::size_t end) {
    const Shard& shard = shard_data[s];
    std::vector<TermId> remap(shard.local_terms.size());
    for (std::size_t i = 0; i < remap.size(); ++i) {
      remap[i] = index.vocab.find(shard.local_terms[i]);
    }
    for (std::size_t p = begin; p < end; ++p) {
      auto& ids = index.post_terms[p];
      for (auto& id : ids) id = remap[id];
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      ids.shrink_to_fit();
    }
  });
  return index;
}

namespace {

template <typename PostAt>
DocFrequencyTable count_impl(const CorpusIndex& index, std::span<const Gender> genders,
                             std::size_t n, PostAt post_at, unsigned jobs) {
  const std::size_t v = index.vocab.size();
  const std::size_t shards = chunk_count(n, jobs);
  std::vector<DocFrequencyTable> partial(shards);
  parallel_chunks(n, jobs, [&](std::size_t s, std::size_t begin, std::size_t end) {
    DocFrequencyTable& t = partial[s];
    t.df_female.assign(v, 0);
    t.df_male.assign(v, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t p = post_at(i);
      const Gender g = genders[p];
      if (g == Gender::kUnknown) continue;
      auto& df = g == Gender::kFemale ? t.df_female : t.df_male;
      (g == Gender::kFemale ? t.n_female : t.n_male) += 1;
      for (TermId id : index.post_terms[p]) ++df[id];
    }
  });
  DocFrequencyTable out = std::move(partial[0]);
  if (out.df_female.size() != v) {
    out.df_female.assign(v, 0);
    out.df_male.assign(v, 0);
  }
  for (std::size_t s = 1; s < shards; ++s) {
    for (std::size_t id = 0; id < v; ++id) {
      out.df_female[id] += partial[s].df_female[id];
      out.df_male[id] += partial[s].df_male[id];
    }
    out.n_female += partial[s].n_female;
    out.n_male += partial[s].n_male;
  }
  return out;
}

}  // namespace

DocFrequencyTable count_table(const CorpusIndex& index, std::span<const Gender> genders,
                              std::span<const std::uint32_t> posts, unsigned jobs) {
  return count_impl(index, genders, posts.size(),
                    [&](std::size_t i) { return static_cast<std::size_t>(posts[i]); },
                    jobs);
}

DocFrequencyTable count_table(const CorpusIndex& index, std::span<const Gender> genders,
                              unsigned jobs) {
  return count_impl(index, genders, index.post_terms.size(),
                    [](std::size_t i) { return i; }, jobs);
}

std::vector<Gender> genders_of(const Corpus& corpus) {
  std::vector<Gender> out;
  out.reserve(corpus.posts.size());
  for (const auto& p : corpus.posts) out.push_back(p.gender);
  return out;
}

TermTable build_table(const Corpus& corpus, unsigned jobs) {
  TermTable t;
  t.index = index_corpus(corpus, jobs);
  const auto genders = genders_of(corpus);
  t.table = count_table(t.index, genders, jobs);
  return t;
}

void write_table_csv(const TermTable& t, std::ostream& out) {
  out << "term,df_female,df_male\n";
  for (TermId id = 0; id < t.index.vocab.size(); ++id) {
    const auto f = t.table.df_female[id];
    const auto m = t.table.df_male[id];
    if (f == 0 && m == 0) continue;
    out << csv::escape(t.index.vocab.term(id)) << ',' << f << ',' << m << '\n';
  }
}

}  // namespace gterms
