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

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "text.hpp"

using namespace gterms;

TEST_CASE("dedup_key examples") {
  CHECK(dedup_key("RT @bob: Wash your hands #covid19") == "wash your hands");
  CHECK(dedup_key("wash YOUR hands  ") == "wash your hands");
  CHECK(dedup_key("") == "");
  CHECK(dedup_key("#only @tags") == "");
  CHECK(dedup_key("start rt middle") == "start rt middle");
}

TEST_CASE("near-duplicates collapse to the earliest post") {
  Corpus c = fixture::corpus({
      fixture::post("b", "2020-03-11T10:00:00Z", "Linda", "Stay home @alice"),
      fixture::post("a", "2020-03-10T10:00:00Z", "Mary", "Stay home #covid19 @bob"),
  });
  REQUIRE(c.posts.size() == 1);
  CHECK(c.posts[0].id == "a");
  CHECK(c.provenance.near_duplicates == 1);
  CHECK(c.provenance.exact_duplicates == 0);
}

TEST_CASE("exact duplicates and repeated ids are counted separately") {
  Corpus c = fixture::corpus({
      fixture::post("1", "2020-03-10T10:00:00Z", "Mary", "same text"),
      fixture::post("2", "2020-03-10T11:00:00Z", "John", "same text"),
      fixture::post("1", "2020-03-10T12:00:00Z", "Mary", "different"),
      fixture::post("3", "2020-03-10T13:00:00Z", "Mary", "other words"),
  });
  CHECK(c.posts.size() == 2);
  CHECK(c.provenance.duplicate_ids == 1);
  CHECK(c.provenance.exact_duplicates == 1);
  REQUIRE(c.date_range);
  CHECK(c.date_range->days() == 1);
}

TEST_CASE("query matching is token based") {
  const auto q = QuerySet::parse("coronavirus; \"corona virus\"\n#covid19");
  CHECK(q.entries().size() == 3);
  CHECK(q.entries()[1].is_phrase());
  CHECK(q.matches(tokenize("The corona virus spreads")));
  CHECK(q.matches(tokenize("Coronavirus!")));
  CHECK(q.matches(tokenize("#COVID19 again")));
  CHECK_FALSE(q.matches(tokenize("coronations are rare")));
  CHECK_FALSE(q.matches(tokenize("virus corona")));
  CHECK_FALSE(q.matches(tokenize("covid19 without the tag")));
}

TEST_CASE("query tokens follow the post tokenizer") {
  const auto q = QuerySet::parse("COVID-19");
  CHECK(q.entries()[0].tokens == std::vector<std::string>{"covid", "19"});
  CHECK(q.matches(tokenize("covid 19 update")));
}

TEST_CASE("empty query set is rejected") {
  CHECK_THROWS_AS(QuerySet::parse(" ; \n "), Error);
  CHECK_THROWS_AS(QuerySet::parse("!!!"), Error);
}

TEST_CASE("read_jsonl counts malformed records") {
  std::istringstream in(
      R"({"id":"1","created_at":"2020-03-10T10:00:00Z","display_name":"Mary","text":"hello"})"
      "\n"
      "not json\n"
      R"({"id":2,"created_at":"2020-03-10T11:00:00+01:00","display_name":"John","text":"hi"})"
      "\n"
      R"({"id":"3","created_at":"yesterday","display_name":"John","text":"hi"})"
      "\n\n");
  const auto s = read_jsonl(in);
  REQUIRE(s.records.size() == 2);
  CHECK(s.malformed == 2);
  CHECK(s.records[1].id == "2");
  CHECK(format_timestamp(s.records[1].timestamp) == "2020-03-10T10:00:00Z");
}

TEST_CASE("read_csv handles quoting and a BOM") {
  std::istringstream in(
      "\xEF\xBB\xBFid,created_at,display_name,text\n"
      "1,2020-03-10 10:00:00,Mary,\"hello, \"\"world\"\"\nsecond line\"\n"
      "2,2020-03-10T11:00:00Z,John\n");
  const auto s = read_csv(in);
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].text == "hello, \"world\"\nsecond line");
  CHECK(s.malformed == 1);
}

TEST_CASE("read_csv requires the header columns") {
  std::istringstream in("id,text\n1,hello\n");
  CHECK_THROWS_AS(read_csv(in), Error);
}

TEST_CASE("ingest filters, sorts and deduplicates") {
  RecordStream s;
  s.source = "mem";
  s.records = {
      fixture::post("1", "2020-03-12T10:00:00Z", "Mary", "coronavirus news"),
      fixture::post("2", "2020-03-10T10:00:00Z", "John", "unrelated"),
      fixture::post("3", "2020-03-11T10:00:00Z", "John", "RT @x: coronavirus news"),
      fixture::post("4", "2020-03-13T10:00:00Z", "Sam", "more #coronavirus"),
  };
  s.malformed = 3;
  const Corpus c = ingest(s, QuerySet::parse("coronavirus;#coronavirus"), 2);
  REQUIRE(c.posts.size() == 2);
  CHECK(c.posts[0].id == "3");
  CHECK(c.posts[1].id == "4");
  CHECK(c.provenance.records_read == 7);
  CHECK(c.provenance.malformed == 3);
  CHECK(c.provenance.unmatched == 1);
  CHECK(c.provenance.near_duplicates == 1);
  REQUIRE(c.date_range);
  CHECK(format_day(c.date_range->first) == "2020-03-11");
}

TEST_CASE("corpus cache round-trips") {
  Corpus c = fixture::corpus({
      fixture::post("1", "2020-03-10T10:00:00Z", "Mary \"M\"", "line one\nline two"),
      fixture::post("2", "2020-03-11T10:00:00Z", "Zoë", "ünïcode"),
  });
  c.posts[0].gender = Gender::kFemale;
  c.provenance.queries = {"a", "b c"};
  std::stringstream buf;
  write_corpus(c, buf);
  const std::string first = buf.str();
  const Corpus back = read_corpus(buf);
  REQUIRE(back.posts.size() == 2);
  CHECK(back.posts[0].text == "line one\nline two");
  CHECK(back.posts[0].gender == Gender::kFemale);
  CHECK(back.posts[1].display_name == "Zoë");
  CHECK(back.provenance.queries == c.provenance.queries);
  std::stringstream again;
  write_corpus(back, again);
  CHECK(again.str() == first);
}

TEST_CASE("corpus cache rejects foreign input") {
  std::istringstream bad(R"({"format":"something-else","version":1})" "\n");
  CHECK_THROWS_AS(read_corpus(bad), Error);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_corpus(empty), Error);
}

TEST_CASE("timestamps") {
  CHECK(format_timestamp(*parse_timestamp("2020-03-10T23:30:00-02:00")) == "2020-03-11T01:30:00Z");
  CHECK(format_timestamp(*parse_timestamp("2020-03-10 08:00:00.250Z")) == "2020-03-10T08:00:00Z");
  CHECK(format_day(utc_day(*parse_timestamp("2020-03-10T23:59:59Z"))) == "2020-03-10");
  CHECK_FALSE(parse_timestamp("2020-13-01T00:00:00Z"));
  CHECK_FALSE(parse_timestamp("2020-02-30T00:00:00Z"));
  CHECK_FALSE(parse_day("2020-3-1"));
  CHECK_FALSE(parse_timestamp("2020-03-10"));
}
