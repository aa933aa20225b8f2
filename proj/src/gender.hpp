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
#include <string>
#include <string_view>
#include <unordered_map>

#include "corpus.hpp"

namespace gterms {

struct NameCounts {
  std::uint64_t female = 0;
  std::uint64_t male = 0;
};

// Lowercased first name -> (female, male) counts with a decision threshold.
// Immutable after construction.
class NameLexicon {
 public:
  static constexpr double kDefaultThreshold = 0.90;

  explicit NameLexicon(double threshold = kDefaultThreshold);

  // CSV "name,female_count,male_count"; a header row is optional. Repeated
  // names have their counts summed.
  static NameLexicon from_csv(std::istream& in, double threshold = kDefaultThreshold);
  static NameLexicon from_file(const std::filesystem::path& path,
                               double threshold = kDefaultThreshold);
  // Small fixture table used by tests and the synthetic generator.
  static NameLexicon builtin(double threshold = kDefaultThreshold);

  void add(std::string_view name, NameCounts counts);

  double threshold() const { return threshold_; }
  std::size_t size() const { return entries_.size(); }
  const NameCounts* find(std::string_view name) const;

  // Label for a name already split out of a display name.
  Gender decide(std::string_view first_name) const;

 private:
  double threshold_;
  std::unordered_map<std::string, NameCounts> entries_;
};

// Leading run of letters, cut at the first lowercase->uppercase transition.
// Empty when the name does not start with a letter.
std::string first_token(std::string_view display_name);

Gender classify(std::string_view display_name, const NameLexicon& lexicon);

void assign_genders(Corpus& corpus, const NameLexicon& lexicon, unsigned jobs = 0);

// Names the built-in fixture considers confidently female or male, plus a few
// ambiguous ones, for building synthetic display names.
struct FixtureNames {
  std::vector<std::string_view> female;
  std::vector<std::string_view> male;
  std::vector<std::string_view> ambiguous;
};
const FixtureNames& fixture_names();

}  // namespace gterms
