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

#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "timeutil.hpp"

namespace fixture {

inline gterms::Post post(std::string id, const std::string& when, std::string name,
                         std::string text) {
  gterms::Post p;
  p.id = std::move(id);
  p.timestamp = gterms::parse_timestamp(when).value();
  p.display_name = std::move(name);
  p.text = std::move(text);
  return p;
}

inline gterms::Corpus corpus(std::vector<gterms::Post> posts) {
  gterms::Corpus c;
  c.posts = std::move(posts);
  c.provenance.source = "fixture";
  gterms::finalize_corpus(c);
  return c;
}

}  // namespace fixture
