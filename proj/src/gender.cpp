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

#include "gender.hpp"

#include <charconv>
#include <fstream>

#include "csv.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace gterms {
namespace {

struct FixtureEntry {
  std::string_view name;
  std::uint64_t female;
  std::uint64_t male;
};

// Invented counts; only the proportions matter for classification.
constexpr FixtureEntry kFixture[] = {
    {"mary", 40000, 120},      {"patricia", 15000, 60},  {"jennifer", 21000, 90},
    {"linda", 14000, 40},      {"elizabeth", 12000, 50}, {"barbara", 11000, 30},
    {"susan", 10000, 35},      {"jessica", 9000, 40},    {"sarah", 8700, 30},
    {"karen", 8500, 45},       {"nancy", 8000, 20},      {"lisa", 7800, 25},
    {"margaret", 7500, 30},    {"betty", 7000, 15},      {"sandra", 6900, 20},
    {"ashley", 6800, 400},     {"dorothy", 6500, 20},    {"kimberly", 6400, 25},
    {"emily", 6200, 20},       {"donna", 6000, 30},      {"michelle", 5900, 40},
    {"carol", 5800, 60},       {"amanda", 5600, 15},     {"melissa", 5500, 20},
    {"deborah", 5400, 10},     {"stephanie", 5300, 20},  {"rebecca", 5200, 15},
    {"laura", 5100, 20},       {"sharon", 5000, 40},     {"cynthia", 4900, 10},
    {"kathleen", 4800, 20},    {"amy", 4700, 15},        {"angela", 4600, 20},
    {"helen", 4500, 20},       {"anna", 4400, 25},       {"emma", 4300, 10},
    {"olivia", 4200, 10},      {"sophia", 4100, 10},     {"chloe", 4000, 10},
    {"zoë", 900, 5},
    {"james", 120, 45000},     {"john", 150, 44000},     {"robert", 110, 40000},
    {"michael", 200, 39000},   {"william", 90, 30000},   {"david", 120, 29000},
    {"richard", 80, 20000},    {"joseph", 70, 19000},    {"thomas", 60, 18000},
    {"charles", 60, 17000},    {"christopher", 50, 16000}, {"daniel", 80, 15000},
    {"matthew", 40, 14000},    {"anthony", 30, 13000},   {"mark", 20, 12000},
    {"donald", 20, 11000},     {"steven", 20, 10000},    {"paul", 30, 9800},
    {"andrew", 20, 9500},      {"joshua", 20, 9000},     {"kenneth", 15, 8800},
    {"kevin", 15, 8600},       {"brian", 15, 8400},      {"george", 20, 8200},
    {"edward", 15, 8000},      {"ronald", 10, 7800},     {"timothy", 10, 7600},
    {"jason", 20, 7400},       {"jeffrey", 10, 7200},    {"ryan", 60, 7000},
    {"jacob", 10, 6800},       {"gary", 10, 6600},       {"nicholas", 10, 6400},
    {"eric", 15, 6200},        {"jonathan", 10, 6000},   {"stephen", 10, 5800},
    {"larry", 10, 5600},       {"justin", 15, 5400},     {"scott", 10, 5200},
    {"mike", 10, 5000},        {"josé", 20, 3000},
    {"sam", 300, 700},         {"pat", 550, 450},        {"jordan", 400, 600},
    {"taylor", 600, 400},      {"casey", 450, 550},      {"alex", 250, 750},
    {"jamie", 560, 440},       {"morgan", 700, 300},
};

std::uint64_t parse_count(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::kParse,
                "lexicon line " + std::to_string(line) + ": bad count '" + s + "'");
  }
  return v;
}

}  // namespace

NameLexicon::NameLexicon(double threshold) : threshold_(threshold) {
  if (!(threshold > 0.5 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon threshold must be in (0.5, 1], got " + std::to_string(threshold));
  }
}

void NameLexicon::add(std::string_view name, NameCounts counts) {
  if (counts.female + counts.male == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon entry '" + std::string(name) + "' has zero total count");
  }
  auto& e = entries_[unicode::lower(name)];
  e.female += counts.female;
  e.male += counts.male;
}

NameLexicon NameLexicon::from_csv(std::istream& in, double threshold) {
  NameLexicon lex(threshold);
  csv::Reader reader(in);
  bool first = true;
  while (auto row = reader.next_row()) {
    const bool is_first = first;
    first = false;
    if (row->size() == 1 && row->front().empty()) continue;
    if (row->size() < 3) {
      throw Error(ErrorCode::kParse, "lexicon line " + std::to_string(reader.line()) +
                                         ": expected name,female_count,male_count");
    }
    if (is_first && (*row)[1] == "female_count") continue;
    lex.add((*row)[0], {parse_count((*row)[1], reader.line()),
                        parse_count((*row)[2], reader.line())});
  }
  return lex;
}

NameLexicon NameLexicon::from_file(const std::filesystem::path& path, double threshold) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  return from_csv(in, threshold);
}

NameLexicon NameLexicon::builtin(double threshold) {
  NameLexicon lex(threshold);
  for (const auto& e : kFixture) lex.add(e.name, {e.female, e.male});
  return lex;
}

const NameCounts* NameLexicon::find(std::string_view name) const {
  auto it = entries_.find(unicode::lower(name));
  return it == entries_.end() ? nullptr : &it->second;
}

Gender NameLexicon::decide(std::string_view first_name) const {
  if (first_name.empty()) return Gender::kUnknown;
  const NameCounts* c = find(first_name);
  if (!c) return Gender::kUnknown;
  // Correctly rounded quotients compare equal to the threshold literal at an
  // exact tie (e.g. 90/100 vs 0.90); ties count as confident.
  const double total = static_cast<double>(c->female + c->male);
  if (static_cast<double>(c->female) / total >= threshold_) return Gender::kFemale;
  if (static_cast<double>(c->male) / total >= threshold_) return Gender::kMale;
  return Gender::kUnknown;
}

std::string first_token(std::string_view name) {
  std::size_t pos = 0;
  std::size_t end = 0;
  bool prev_lower = false;
  while (pos < name.size()) {
    const std::int32_t cp = unicode::next(name, pos);
    if (!unicode::is_letter(cp)) break;
    if (prev_lower && unicode::is_upper(cp)) break;
    prev_lower = unicode::is_lower(cp);
    end = pos;
  }
  return std::string(name.substr(0, end));
}

Gender classify(std::string_view display_name, const NameLexicon& lexicon) {
  return lexicon.decide(first_token(display_name));
}

void assign_genders(Corpus& corpus, const NameLexicon& lexicon, unsigned jobs) {
  parallel_chunks(corpus.posts.size(), jobs, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      corpus.posts[i].gender = classify(corpus.posts[i].display_name, lexicon);
    }
  });
}

const FixtureNames& fixture_names() {
  static const FixtureNames names = [] {
    FixtureNames out;
    const NameLexicon lex = NameLexicon::builtin();
    for (const auto& e : kFixture) {
      switch (lex.decide(e.name)) {
        case Gender::kFemale: out.female.push_back(e.name); break;
        case Gender::kMale: out.male.push_back(e.name); break;
        case Gender::kUnknown: out.ambiguous.push_back(e.name); break;
      }
    }
    return out;
  }();
  return names;
}

}  // namespace gterms
