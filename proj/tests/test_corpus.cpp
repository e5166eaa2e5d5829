// Copyright 2026 the silvercat project
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

#include "silvercat/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "silvercat/class_scheme.hpp"
#include "silvercat/errors.hpp"
#include "silvercat/records.hpp"
#include "silvercat/video_urls.hpp"

using namespace silvercat;

namespace {

ClassScheme paper_scheme() {
  return ClassScheme::load(std::string(SILVERCAT_SOURCE_DIR) +
                           "/data/class_scheme.json");
}

LabeledExample example(std::string text, std::string label) {
  LabeledExample e;
  e.text = std::move(text);
  e.label = std::move(label);
  return e;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(std::string(SILVERCAT_BINARY_DIR) + "/" + name) {
    std::ofstream(path) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("class scheme loads and validates") {
  const ClassScheme s = paper_scheme();
  CHECK(s.raw_categories().size() == 18);
  REQUIRE(s.class_list().size() == 14);
  CHECK(s.class_list().front() == "Autos&Vehicles");
  CHECK(s.class_list().back() == "Travel&Events");
  CHECK(std::is_sorted(s.class_list().begin(), s.class_list().end()));

  CHECK(s.merge("Movies") == "Film&Animation");
  CHECK(s.merge("Trailers") == "Film&Animation");
  CHECK(s.merge("Shows") == "Film&Animation");
  CHECK(s.merge("People&Blogs") == ClassScheme::kDrop);
  CHECK(s.merge("Music") == "Music");
  CHECK(s.merge("nonsense").empty());

  REQUIRE(s.coarse_list().size() == 4);
  CHECK(s.coarse_list() == std::vector<std::string>{"AutoSport",
                                                    "Entertainment",
                                                    "NewsActivism", "SciEdu"});
  CHECK(s.coarsen("Education") == "SciEdu");
  CHECK(s.coarsen("Science&Technology") == "SciEdu");
  CHECK(s.coarsen("News&Politics") == "NewsActivism");
  CHECK(s.coarsen("Nonprofits&Activism") == "NewsActivism");
  CHECK(s.coarsen("Autos&Vehicles") == "AutoSport");
  CHECK(s.coarsen("Sports") == "AutoSport");
  CHECK(s.coarsen("Pets&Animals") == "Entertainment");
  CHECK(s.coarsen("Comedy") == "Entertainment");

  // Surjective onto the coarse classes.
  std::set<std::string> seen;
  for (const std::string& c : s.class_list()) seen.insert(s.coarsen(c));
  CHECK(seen.size() == 4);

  CHECK(s.class_index("Autos&Vehicles") == 0);
  CHECK(s.class_index("Travel&Events") == 13);
  CHECK(s.class_index("Movies") == -1);

  CHECK_THROWS_AS(ClassScheme::load("/no/such/file.json"), MissingInputError);
  CHECK_THROWS(ClassScheme::from_json(nlohmann::json{
      {"merge_map", {{"A", "A"}}},
      {"coarse_map", nlohmann::json::object()}}));
}

TEST_CASE("video id extraction") {
  using V = std::vector<std::string>;
  CHECK(extract_video_ids("… great goal by Messi youtu.be/jLeTMIoAgCw", {}) ==
        V{"jLeTMIoAgCw"});
  CHECK(extract_video_ids("", {"https://www.youtube.com/watch?v=AAAAAAAAAAA&t=10"}) ==
        V{"AAAAAAAAAAA"});
  CHECK(extract_video_ids("", {"https://example.com/page"}) == V{});

  // Parameter order, fragments, subdomains, scheme case.
  CHECK(extract_video_ids("", {"http://youtube.com/watch?t=1&v=BBBBBBBBBBB"}) ==
        V{"BBBBBBBBBBB"});
  CHECK(extract_video_ids("", {"https://m.YouTube.com/watch?v=ccccccccccc#x"}) ==
        V{"ccccccccccc"});
  CHECK(extract_video_ids("", {"youtube.com/v/DDDDDDDDDD_"}) ==
        V{"DDDDDDDDDD_"});
  CHECK(extract_video_ids("", {"https://www.youtube.com/embed/eeeee-eeeee?rel=0"}) ==
        V{"eeeee-eeeee"});
  CHECK(extract_video_ids("watch at YOUTU.BE/fffffffffff now", {}) ==
        V{"fffffffffff"});

  // Rejections: wrong length, wrong alphabet, lookalike hosts.
  CHECK(extract_video_ids("youtu.be/short", {}) == V{});
  CHECK(extract_video_ids("youtu.be/waytoolongid99", {}) == V{});
  CHECK(extract_video_ids("notyoutu.be/AAAAAAAAAAA", {}) == V{});
  CHECK(extract_video_ids("my-youtube.com/watch?v=AAAAAAAAAAA", {}) == V{});
  CHECK(extract_video_ids("youtube.com/watch?v=bad*chars!!", {}) == V{});
  CHECK(extract_video_ids("youtube.com/watch?x=1", {}) == V{});

  // Urls scan before text; first occurrence wins; duplicates collapse.
  CHECK(extract_video_ids("youtu.be/AAAAAAAAAAA youtu.be/BBBBBBBBBBB",
                          {"youtu.be/CCCCCCCCCCC"}) ==
        V{"CCCCCCCCCCC", "AAAAAAAAAAA", "BBBBBBBBBBB"});
  CHECK(extract_video_ids("youtu.be/AAAAAAAAAAA and youtu.be/AAAAAAAAAAA",
                          {}) == V{"AAAAAAAAAAA"});

  // Trailing punctuation does not join the id.
  CHECK(extract_video_ids("(youtu.be/AAAAAAAAAAA)", {}) == V{"AAAAAAAAAAA"});
  CHECK(is_video_id("jLeTMIoAgCw"));
  CHECK_FALSE(is_video_id("jLeTMIoAgC"));
  CHECK_FALSE(is_video_id("jLeTMIoAgC*"));
}

TEST_CASE("transfer_label assigns merged classes") {
  const ClassScheme scheme = paper_scheme();
  std::map<std::string, VideoMeta> videos;
  videos["AAAAAAAAAAA"] = {"AAAAAAAAAAA", "A trailer", "Trailers"};
  videos["BBBBBBBBBBB"] = {"BBBBBBBBBBB", "", "People&Blogs"};
  videos["CCCCCCCCCCC"] = {"CCCCCCCCCCC", "Song", "Music"};
  videos["DDDDDDDDDDD"] = {"DDDDDDDDDDD", "Weird", "NotACategory"};

  TransferStats stats;
  TweetRecord t;
  t.id = "1";
  t.lang = "en";
  t.timestamp = 1234;

  t.text = "new film youtu.be/AAAAAAAAAAA";
  auto e = transfer_label(t, videos, scheme, stats);
  REQUIRE(e.has_value());
  CHECK(e->label == "Film&Animation");
  CHECK(e->video_id == "AAAAAAAAAAA");
  CHECK(e->title == "A trailer");
  CHECK(e->timestamp == 1234);

  t.text = "vlog youtu.be/BBBBBBBBBBB";
  CHECK_FALSE(transfer_label(t, videos, scheme, stats).has_value());

  t.text = "no link here";
  CHECK_FALSE(transfer_label(t, videos, scheme, stats).has_value());

  t.text = "dead link youtu.be/ZZZZZZZZZZZ";
  CHECK_FALSE(transfer_label(t, videos, scheme, stats).has_value());

  t.text = "odd youtu.be/DDDDDDDDDDD";
  CHECK_FALSE(transfer_label(t, videos, scheme, stats).has_value());

  // First RESOLVABLE id wins, not merely the first extracted.
  t.text = "youtu.be/ZZZZZZZZZZZ then youtu.be/CCCCCCCCCCC";
  e = transfer_label(t, videos, scheme, stats);
  REQUIRE(e.has_value());
  CHECK(e->label == "Music");

  CHECK(stats.resolved == 2);
  CHECK(stats.unresolved == 2);
  CHECK(stats.dropped_class == 1);
  CHECK(stats.unknown_category == 1);
  std::size_t total = 0;
  for (const auto& [cls, n] : stats.per_class) {
    CHECK(scheme.class_index(cls) >= 0);
    total += n;
  }
  CHECK(total == stats.resolved);
}

TEST_CASE("dedupe drops retweets and duplicate keys") {
  std::vector<LabeledExample> in = {
      example("Great video http://t.co/x", "Music"),
      example("great   video", "Music"),
      example("RT @user: Great video", "Music"),
      example("  rt @other: whatever", "Music"),
      example("Different post", "Music"),
      example("RTFM is not a retweet", "Music"),
  };
  DedupStats stats;
  auto out = dedupe(in, stats);
  REQUIRE(out.size() == 3);
  CHECK(out[0].text == "Great video http://t.co/x");
  CHECK(out[1].text == "Different post");
  CHECK(out[2].text == "RTFM is not a retweet");
  CHECK(stats.kept == 3);
  CHECK(stats.retweets == 2);
  CHECK(stats.duplicates == 1);

  // Idempotence and key distinctness.
  DedupStats again;
  CHECK(dedupe(out, again).size() == out.size());
  std::set<std::string> keys;
  for (const auto& e : out) keys.insert(Deduper::dedup_key(e.text));
  CHECK(keys.size() == out.size());

  // Survivors = distinct keys minus retweets on random-ish synthetic data.
  std::vector<LabeledExample> synth;
  std::set<std::string> expected_keys;
  for (int i = 0; i < 200; ++i) {
    std::string text = "post number " + std::to_string(i % 37);
    if (i % 11 == 0) text = "RT @u: " + text;
    synth.push_back(example(text, "Music"));
    if (!Deduper::is_retweet(text)) {
      expected_keys.insert(Deduper::dedup_key(text));
    }
  }
  DedupStats synth_stats;
  CHECK(dedupe(synth, synth_stats).size() == expected_keys.size());
}

TEST_CASE("balance_sample caps per class deterministically") {
  std::vector<LabeledExample> in;
  for (int i = 0; i < 5; ++i) {
    in.push_back(example("a" + std::to_string(i), "A"));
  }
  for (int i = 0; i < 3; ++i) {
    in.push_back(example("b" + std::to_string(i), "B"));
  }
  const std::vector<std::string> classes = {"A", "B"};

  auto out = balance_sample(in, classes, 3, 7);
  REQUIRE(out.size() == 6);
  std::map<std::string, int> counts;
  for (const auto& e : out) ++counts[e.label];
  CHECK(counts["A"] == 3);
  CHECK(counts["B"] == 3);

  // Same seed, same output; different seed, different membership (w.h.p.).
  auto rerun = balance_sample(in, classes, 3, 7);
  REQUIRE(rerun.size() == out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(rerun[i].text == out[i].text);
  }

  // No duplicates within a class sample.
  std::set<std::string> texts;
  for (const auto& e : out) CHECK(texts.insert(e.text).second);

  // Empty class: warning, not an error.
  auto with_empty = balance_sample(in, {"A", "B", "C"}, 2, 7);
  CHECK(with_empty.size() == 4);
}

TEST_CASE("split_holdout partitions per class") {
  std::vector<LabeledExample> in;
  for (const char* cls : {"A", "B", "C"}) {
    for (int i = 0; i < 10; ++i) {
      in.push_back(example(std::string(cls) + std::to_string(i), cls));
    }
  }
  const std::vector<std::string> classes = {"A", "B", "C"};

  auto [train, test] = split_holdout(in, classes, 2, 42);
  CHECK(test.size() == 6);
  CHECK(train.size() == 24);

  std::set<std::string> train_texts, test_texts;
  for (const auto& e : train) train_texts.insert(e.text);
  for (const auto& e : test) test_texts.insert(e.text);
  CHECK(train_texts.size() == 24);
  CHECK(test_texts.size() == 6);
  for (const auto& t : test_texts) CHECK(train_texts.count(t) == 0);

  std::set<std::string> all;
  all.insert(train_texts.begin(), train_texts.end());
  all.insert(test_texts.begin(), test_texts.end());
  CHECK(all.size() == in.size());

  // Determinism and seed sensitivity.
  auto [train2, test2] = split_holdout(in, classes, 2, 42);
  CHECK(train2.size() == train.size());
  bool same = true;
  for (std::size_t i = 0; i < test.size(); ++i) {
    same = same && test2[i].text == test[i].text;
  }
  CHECK(same);
  auto [train3, test3] = split_holdout(in, classes, 2, 43);
  bool different = test3.size() != test.size();
  for (std::size_t i = 0; !different && i < test.size(); ++i) {
    different = test3[i].text != test[i].text;
  }
  CHECK(different);

  CHECK_THROWS_AS(split_holdout(in, classes, 10, 1), DegenerateDataError);
}

TEST_CASE("coarsen relabels with the coarse scheme") {
  const ClassScheme scheme = paper_scheme();
  CHECK(coarsen(example("x", "Education"), scheme).label == "SciEdu");
  CHECK(coarsen(example("x", "Pets&Animals"), scheme).label ==
        "Entertainment");
  CHECK(coarsen(example("x", "Sports"), scheme).label == "AutoSport");
  CHECK_THROWS_AS(coarsen(example("x", "NotAClass"), scheme),
                  LabelMismatchError);
}

TEST_CASE("jsonl io round trips and tolerates bad lines") {
  TempFile f("records_test.jsonl",
             R"({"id":"1","text":"hello","lang":"en","timestamp":5})"
             "\n"
             "this is not json\n"
             "\n"
             R"({"id":"","text":"missing id"})"
             "\n"
             R"({"id":"2","text":"with urls","urls":["http://a"]})"
             "\n");
  JsonlReader reader(f.path);
  auto tweets = reader.read_all<TweetRecord>();
  REQUIRE(tweets.size() == 2);
  CHECK(tweets[0].id == "1");
  CHECK(tweets[0].timestamp == 5);
  CHECK(tweets[1].urls == std::vector<std::string>{"http://a"});
  CHECK(reader.malformed() == 2);

  CHECK_THROWS_AS(JsonlReader("/no/such/dir/x.jsonl"), MissingInputError);

  // LabeledExample round trip preserves optional fields and sorts keys.
  LabeledExample e = example("text body", "Music");
  e.video_id = "AAAAAAAAAAA";
  e.timestamp = 99;
  nlohmann::json j = e;
  CHECK(j.dump() ==
        R"({"label":"Music","text":"text body","timestamp":99,)"
        R"("video_id":"AAAAAAAAAAA"})");
  LabeledExample back = j.get<LabeledExample>();
  CHECK(back.text == e.text);
  CHECK(back.label == e.label);
  CHECK(back.video_id == e.video_id);
  CHECK_FALSE(back.title.has_value());
  CHECK(back.timestamp == e.timestamp);
}
