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
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"

namespace gterms {

struct SynthTerm {
  std::string term;
  double p_female = 0.0;  // per-post document probability
  double p_male = 0.0;
};

// Planted-term generator input. JSON layout:
//
//   {
//     "start_date": "2020-03-10", "days": 14,
//     "gender_mix": {"female": 0.45, "male": 0.45, "unknown": 0.10},
//     "background": {"count": 5000, "prefix": "bg", "p_min": 0.001, "p_max": 0.02},
//     "planted": {"count": 20, "prefix": "pt", "p_female": 0.10, "p_male": 0.02},
//     "terms": [{"term": "league", "p_female": 0.02, "p_male": 0.10}],
//     "always": ["coronavirus"]
//   }
//
// Every key is optional. Background words get probabilities spaced
// log-uniformly over [p_min, p_max], identical for both genders. Posts of
// unknown gender use the mean of the two gender probabilities.
struct SynthSpec {
  std::string start_date = "2020-03-10";
  int days = 14;
  double share_female = 0.5;
  double share_male = 0.5;
  double share_unknown = 0.0;
  std::vector<SynthTerm> terms;     // background, planted and explicit terms
  std::vector<std::string> always;  // present in every post

  static SynthSpec from_json(const nlohmann::json& j);
  static SynthSpec from_file(const std::filesystem::path& path);

  // Throws Error(kInvalidArgument) naming the offending field.
  void validate() const;
};

// Deterministic for a fixed (spec, n_posts, seed). Display names come from
// the built-in fixture lexicon; genders are left Unknown for the gender
// module to infer. Posts whose text collides under dedup_key are dropped and
// counted in provenance.
Corpus synth(const SynthSpec& spec, std::uint64_t n_posts, std::uint64_t seed);

}  // namespace gterms
