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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "error.hpp"
#include "gender.hpp"

namespace gterms {

using nlohmann::json;

namespace {

void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", p);
    throw Error(ErrorCode::kInvalidArgument,
                "synth spec: probability for " + what + " must be in [0,1], got " + buf);
  }
}

std::string numbered(const std::string& prefix, std::size_t i, std::size_t count) {
  const int width = static_cast<int>(std::to_string(count > 0 ? count - 1 : 0).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return prefix + buf;
}

constexpr const char* kSurnames[] = {"Jones", "Smith", "Brown", "Williams", "Wilson",
                                     "Evans", "Walker", "Wright", "Green", "Hall",
                                     "Patel", "Singh", "Khan", "Nguyen", "Okafor"};
constexpr const char* kHandles[] = {"CricketFan", "NewsDesk", "CityUpdates", "Gamer",
                                    "DailyHealth", "VirusWatch", "TheRealDeal", "Momentum"};

template <typename T, std::size_t N>
const T& pick(const T (&arr)[N], std::mt19937_64& rng) {
  return arr[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

std::string capitalized(std::string_view name) {
  // Fixture names are lowercase ASCII apart from a few accented letters that
  // stay lowercase, which first_token still accepts.
  std::string s(name);
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

std::string gendered_name(std::string_view first, std::mt19937_64& rng) {
  const std::string cap = capitalized(first);
  const std::string surname = pick(kSurnames, rng);
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return cap + " " + surname;
    case 1: return cap + surname;
    case 2: return std::string(first) + "_" + surname + std::to_string(rng() % 100);
    case 3: return cap + "-" + surname;
    default: return cap;
  }
}

std::string unknown_name(std::mt19937_64& rng) {
  const auto& ambiguous = fixture_names().ambiguous;
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: {
      const std::string first = capitalized(ambiguous[rng() % ambiguous.size()]);
      return first + " " + pick(kSurnames, rng);
    }
    case 1: {
      const std::string handle = pick(kHandles, rng);
      return handle + std::to_string(rng() % 1000000);
    }
    default:
      return std::to_string(rng() % 1000000) + "fan";
  }
}

}  // namespace

SynthSpec SynthSpec::from_json(const json& j) {
  SynthSpec spec;
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "synth spec must be an object");
  spec.start_date = j.value("start_date", spec.start_date);
  spec.days = j.value("days", spec.days);
  if (auto it = j.find("gender_mix"); it != j.end()) {
    spec.share_female = it->value("female", 0.0);
    spec.share_male = it->value("male", 0.0);
    spec.share_unknown = it->value("unknown", 0.0);
  }
  if (auto it = j.find("background"); it != j.end()) {
    const std::size_t count = it->value("count", std::size_t{0});
    const std::string prefix = it->value("prefix", "bg");
    const double lo = it->value("p_min", 0.001);
    const double hi = it->value("p_max", 0.02);
    check_probability(lo, "background.p_min");
    check_probability(hi, "background.p_max");
    if (lo > hi || (lo == 0.0 && hi > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "synth spec: background needs 0 < p_min <= p_max");
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double frac = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
      const double p = lo == hi ? lo : std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)));
      spec.terms.push_back({numbered(prefix, i, count), p, p});
    }
  }
  if (auto it = j.find("planted"); it != j.end()) {
    const std::size_t count = it->value("count", std::size_t{0});
    const std::string prefix = it->value("prefix", "pt");
    const double pf = it->value("p_female", 0.0);
    const double pm = it->value("p_male", 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      spec.terms.push_back({numbered(prefix, i, count), pf, pm});
    }
  }
  if (auto it = j.find("terms"); it != j.end()) {
    for (const auto& t : *it) {
      spec.terms.push_back({t.at("term").get<std::string>(), t.value("p_female", 0.0),
                            t.value("p_male", 0.0)});
    }
  }
  spec.always = j.value("always", std::vector<std::string>{});
  spec.validate();
  return spec;
}

SynthSpec SynthSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open synth spec " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kParse, "synth spec is not valid JSON");
  return from_json(j);
}

void SynthSpec::validate() const {
  if (days < 1) throw Error(ErrorCode::kInvalidArgument, "synth spec: days must be >= 1");
  if (!parse_day(start_date)) {
    throw Error(ErrorCode::kInvalidArgument, "synth spec: bad start_date " + start_date);
  }
  check_probability(share_female, "gender_mix.female");
  check_probability(share_male, "gender_mix.male");
  check_probability(share_unknown, "gender_mix.unknown");
  if (std::abs(share_female + share_male + share_unknown - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "synth spec: gender_mix must sum to 1");
  }
  for (const auto& t : terms) {
    if (t.term.empty()) throw Error(ErrorCode::kInvalidArgument, "synth spec: empty term");
    check_probability(t.p_female, t.term + ".p_female");
    check_probability(t.p_male, t.term + ".p_male");
  }
}

Corpus synth(const SynthSpec& spec, std::uint64_t n_posts, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  const Day start = *parse_day(spec.start_date);
  const std::int64_t window = static_cast<std::int64_t>(spec.days) * 86400;

  struct Draft {
    Timestamp ts;
    Gender gender;
    std::vector<std::uint32_t> words;
  };
  std::vector<Draft> drafts(n_posts);
  std::vector<std::uint32_t> by_gender[3];
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> offset(0, window - 1);
  for (std::uint64_t i = 0; i < n_posts; ++i) {
    const double u = unit(rng);
    Gender g = Gender::kUnknown;
    if (u < spec.share_female) g = Gender::kFemale;
    else if (u < spec.share_female + spec.share_male) g = Gender::kMale;
    drafts[i].gender = g;
    drafts[i].ts = Timestamp{start} + std::chrono::seconds{offset(rng)};
    by_gender[static_cast<int>(g)].push_back(static_cast<std::uint32_t>(i));
  }

  // Geometric skipping: cost scales with the number of hits, not posts*terms.
  for (std::uint32_t w = 0; w < spec.terms.size(); ++w) {
    const auto& t = spec.terms[w];
    const double probs[3] = {(t.p_female + t.p_male) / 2.0, t.p_female, t.p_male};
    for (int g = 0; g < 3; ++g) {
      const double p = probs[g];
      const auto& members = by_gender[g];
      if (p <= 0.0 || members.empty()) continue;
      if (p >= 1.0) {
        for (auto idx : members) drafts[idx].words.push_back(w);
        continue;
      }
      std::geometric_distribution<std::uint64_t> gap(p);
      for (std::uint64_t pos = gap(rng); pos < members.size(); pos += 1 + gap(rng)) {
        drafts[members[pos]].words.push_back(w);
      }
    }
  }

  const auto& names = fixture_names();
  Corpus corpus;
  corpus.posts.reserve(n_posts);
  std::string text;
  for (std::uint64_t i = 0; i < n_posts; ++i) {
    auto& d = drafts[i];
    std::shuffle(d.words.begin(), d.words.end(), rng);
    text.clear();
    for (auto w : d.words) {
      if (!text.empty()) text.push_back(' ');
      text += spec.terms[w].term;
    }
    for (const auto& a : spec.always) {
      if (!text.empty()) text.push_back(' ');
      text += a;
    }
    std::string name;
    if (d.gender == Gender::kUnknown) {
      name = unknown_name(rng);
    } else {
      const auto& pool = d.gender == Gender::kFemale ? names.female : names.male;
      const std::string_view first = pool[rng() % pool.size()];
      name = gendered_name(first, rng);
    }
    corpus.posts.push_back(Post{"syn" + std::to_string(seed) + "-" + std::to_string(i), d.ts,
                                std::move(name), text, Gender::kUnknown});
  }
  corpus.provenance.source = "synth";
  corpus.provenance.records_read = n_posts;
  corpus.provenance.generator =
      "synth seed=" + std::to_string(seed) + " n=" + std::to_string(n_posts);
  corpus.date_range = DateRange{start, start + std::chrono::days{spec.days - 1}};
  finalize_corpus(corpus);
  return corpus;
}

}  // namespace gterms
