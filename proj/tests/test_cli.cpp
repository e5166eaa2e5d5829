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

// Drives the installed binary as a subprocess: composition, artifact
// formats, and the exit-code contract (0 ok, 2 missing input, 3 degenerate
// data, 4 label mismatch, 1 other).

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "silvercat/eval.hpp"

namespace {

const std::string& fixture_dir() {
  static const std::string dir = [] {
    const std::string d = std::string(SILVERCAT_BINARY_DIR) + "/cli_fixtures";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string fixture_path(const std::string& name) {
  return fixture_dir() + "/" + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (const char c : text) n += c == '\n';
  return n;
}

struct CliResult {
  int code = -1;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string log = fixture_path("stderr_" + std::to_string(counter++));
  const std::string cmd =
      std::string(SILVERCAT_CLI_PATH) + " " + args + " 2>" + log;
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  result.err = read_file(log);
  std::remove(log.c_str());
  return result;
}

// Two classes, one dropped category, two coarse groups.
const std::string& scheme_path() {
  static const std::string path = [] {
    const std::string p = fixture_path("scheme.json");
    write_file(p, R"({
  "merge_map": {"Cars": "Cars", "Tunes": "Tunes", "Junk": "DROP"},
  "coarse_map": {"Cars": "Wheels", "Tunes": "Arts"}
})");
    return p;
  }();
  return path;
}

const std::string& config_path() {
  static const std::string path = [] {
    const std::string p = fixture_path("config.json");
    const nlohmann::json config{
        {"paths",
         {{"scheme", scheme_path()}, {"output_dir", fixture_dir()}}},
        {"n_per_class", 4},
        {"seed", 5}};
    write_file(p, config.dump(2) + "\n");
    return p;
  }();
  return path;
}

std::string with_config(const std::string& args) {
  return "--config " + config_path() + " " + args;
}

// Fully separable training corpus: every document carries its class's
// signature token.
const std::string& train_corpus_path() {
  static const std::string path = [] {
    const std::string p = fixture_path("train_corpus.jsonl");
    const std::vector<std::string> cars{"engine", "tires", "lap", "fuel"};
    const std::vector<std::string> tunes{"piano", "chords", "tempo", "riff"};
    const std::vector<std::string> noise{"the", "of", "today", "wow"};
    std::string lines;
    for (std::size_t i = 0; i < 20; ++i) {
      for (const auto* pool : {&cars, &tunes}) {
        const nlohmann::json doc{
            {"text", (*pool)[0] + " " + (*pool)[1 + i % 3] + " " +
                         noise[i % noise.size()]},
            {"label", pool == &cars ? "Cars" : "Tunes"}};
        lines += doc.dump() + "\n";
      }
    }
    write_file(p, lines);
    return p;
  }();
  return path;
}

TEST_CASE("harvest joins, drops and dedupes per the stats file") {
  const std::string videos = fixture_path("videos.jsonl");
  write_file(videos, R"({"video_id":"AAAAAAAAAAA","title":"Lap Record","category":"Cars"}
{"video_id":"BBBBBBBBBBB","title":"Piano Set","category":"Tunes"}
{"video_id":"CCCCCCCCCCC","title":"Vlog","category":"Junk"}
)");
  const std::string tweets = fixture_path("tweets.jsonl");
  write_file(tweets, R"({"id":"1","text":"engine tires youtu.be/AAAAAAAAAAA","lang":"en","timestamp":100}
{"id":"2","text":"fuel lap youtu.be/AAAAAAAAAAA","lang":"en","timestamp":110}
{"id":"3","text":"piano chords youtu.be/BBBBBBBBBBB","lang":"en","timestamp":120}
{"id":"4","text":"tempo riff youtu.be/BBBBBBBBBBB","lang":"en","timestamp":130}
{"id":"5","text":"my day youtu.be/CCCCCCCCCCC","lang":"en","timestamp":140}
{"id":"6","text":"engine tires youtu.be/AAAAAAAAAAA","lang":"en","timestamp":150}
)");
  const std::string corpus = fixture_path("harvest_corpus.jsonl");
  const std::string stats = fixture_path("harvest_stats.json");
  const auto r = run_cli(with_config("harvest --tweets " + tweets +
                                     " --videos " + videos + " --out " +
                                     corpus + " --stats " + stats));
  REQUIRE(r.code == 0);
  CHECK(count_lines(read_file(corpus)) == 4);
  const auto j = nlohmann::json::parse(read_file(stats));
  CHECK(j["kept"] == 4);
  CHECK(j["transfer"]["dropped_class"] == 1);
  CHECK(j["transfer"]["unresolved"] == 0);
  CHECK(j["dedup"]["duplicates"] == 1);

  // An unknown video id counts as unresolved, nothing is emitted for it.
  const std::string lonely = fixture_path("lonely_tweet.jsonl");
  write_file(lonely,
             R"({"id":"9","text":"look youtu.be/ZZZZZZZZZZZ","lang":"en","timestamp":1}
)");
  const auto r2 = run_cli(with_config("harvest --tweets " + lonely +
                                      " --videos " + videos + " --out " +
                                      corpus + " --stats " + stats));
  REQUIRE(r2.code == 0);
  CHECK(nlohmann::json::parse(read_file(stats))["transfer"]["unresolved"] ==
        1);
}

TEST_CASE("harvest of an empty file yields an empty corpus and exit 0") {
  const std::string videos = fixture_path("videos.jsonl");
  const std::string empty = fixture_path("empty.jsonl");
  write_file(empty, "");
  const std::string corpus = fixture_path("empty_corpus.jsonl");
  const std::string stats = fixture_path("empty_stats.json");
  const auto r = run_cli(with_config("harvest --tweets " + empty +
                                     " --videos " + videos + " --out " +
                                     corpus + " --stats " + stats));
  REQUIRE(r.code == 0);
  CHECK(read_file(corpus).empty());
  CHECK(nlohmann::json::parse(read_file(stats))["kept"] == 0);
}

TEST_CASE("missing input exits 2 and names the path") {
  const auto r = run_cli(with_config("train --corpus " +
                                     fixture_path("no_such_corpus.jsonl") +
                                     " --out " + fixture_path("m.json")));
  CHECK(r.code == 2);
  CHECK(r.err.find("no_such_corpus.jsonl") != std::string::npos);
}

TEST_CASE("convert, train, predict and eval compose") {
  const std::string tsv = fixture_path("gold.tsv");
  write_file(tsv,
             "engine fuel lap\tCars\n"
             "piano tempo riff\tTunes\n"
             "tires engine\tCars\n"
             "chords piano\tTunes\n"
             "no label line\n");
  const std::string gold = fixture_path("gold.jsonl");
  const auto conv = run_cli("convert --tsv " + tsv + " --out " + gold);
  REQUIRE(conv.code == 0);
  CHECK(count_lines(read_file(gold)) == 4);

  const std::string model = fixture_path("model.json");
  const auto train = run_cli(with_config("train --corpus " +
                                         train_corpus_path() + " --out " +
                                         model));
  REQUIRE(train.code == 0);
  CHECK(train.err.find("2 classes") != std::string::npos);
  const auto model_json = nlohmann::json::parse(read_file(model));
  CHECK(model_json["class_list"] ==
        nlohmann::json::array({"Cars", "Tunes"}));
  CHECK(model_json["models"].size() == 2);

  const std::string predictions = fixture_path("predictions.jsonl");
  const auto predict = run_cli(with_config(
      "predict --model " + model + " --input " + gold + " --out " +
      predictions));
  REQUIRE(predict.code == 0);
  std::istringstream lines(read_file(predictions));
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string predicted = j.at("predicted");
    CHECK((predicted == "Cars" || predicted == "Tunes"));
    ++n;
  }
  CHECK(n == 4);

  const std::string report = fixture_path("eval_report.json");
  const std::string matrix = fixture_path("eval_matrix.tsv");
  const auto eval = run_cli(with_config(
      "eval --model " + model + " --gold " + gold + " --report " + report +
      " --matrix-out " + matrix));
  REQUIRE(eval.code == 0);
  const auto rj = nlohmann::json::parse(read_file(report));
  CHECK(rj["accuracy"] == 1.0);
  CHECK(rj["metadata"]["variant"] == "base");
  CHECK(silvercat::ConfusionMatrix::read_tsv(matrix).total() == 4);
}

TEST_CASE("retraining with one seed is byte-identical, other seeds differ") {
  const std::string a = fixture_path("model_a.json");
  const std::string b = fixture_path("model_b.json");
  const std::string c = fixture_path("model_c.json");
  const std::string base =
      "train --corpus " + train_corpus_path() + " --out ";
  REQUIRE(run_cli(with_config(base + a)).code == 0);
  REQUIRE(run_cli(with_config(base + b)).code == 0);
  CHECK(read_file(a) == read_file(b));
  REQUIRE(run_cli(with_config("--seed 99 " + base + c)).code == 0);
  CHECK(read_file(a) != read_file(c));
}

TEST_CASE("hashtag variant trains a different model than base") {
  const std::string corpus = fixture_path("hashtag_corpus.jsonl");
  std::string lines;
  for (int i = 0; i < 8; ++i) {
    lines += nlohmann::json{{"text", "#engine roars " + std::to_string(i)},
                            {"label", "Cars"}}
                 .dump() +
             "\n";
    lines += nlohmann::json{{"text", "#piano sings " + std::to_string(i)},
                            {"label", "Tunes"}}
                 .dump() +
             "\n";
  }
  write_file(corpus, lines);
  const std::string base_model = fixture_path("base_model.json");
  const std::string h_model = fixture_path("h_model.json");
  REQUIRE(run_cli(with_config("train --corpus " + corpus + " --out " +
                              base_model))
              .code == 0);
  REQUIRE(run_cli(with_config("--variant h train --corpus " + corpus +
                              " --out " + h_model))
              .code == 0);
  CHECK(read_file(base_model) != read_file(h_model));
}

TEST_CASE("training data missing a scheme class exits 3 naming it") {
  const std::string corpus = fixture_path("tunes_only.jsonl");
  write_file(corpus, R"({"text":"piano riff","label":"Tunes"}
{"text":"tempo chords","label":"Tunes"}
)");
  const auto r = run_cli(with_config("train --corpus " + corpus + " --out " +
                                     fixture_path("nope.json")));
  CHECK(r.code == 3);
  CHECK(r.err.find("Cars") != std::string::npos);
}

TEST_CASE("gold labels outside the model exit 4 with the line") {
  const std::string gold = fixture_path("alien.jsonl");
  write_file(gold, R"({"text":"engine","label":"Cars"}
{"text":"zzz","label":"Alien"}
)");
  const auto r = run_cli(with_config(
      "eval --model " + fixture_path("model.json") + " --gold " + gold +
      " --report " + fixture_path("r.json") + " --matrix-out " +
      fixture_path("m.tsv")));
  CHECK(r.code == 4);
  CHECK(r.err.find("Alien") != std::string::npos);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("definitely-not-a-command").code == 1);
  CHECK(run_cli(with_config("eval --report only.json")).code == 1);
  CHECK(run_cli("--config " + fixture_path("no_config.json") +
                " train --corpus x --out y")
            .code == 2);
}

TEST_CASE("prepare splits with a manifest that records the seed") {
  const std::string train_out = fixture_path("prep_train.jsonl");
  const std::string test_out = fixture_path("prep_test.jsonl");
  const std::string manifest = fixture_path("prep_manifest.json");
  const auto r = run_cli(with_config(
      "prepare --corpus " + train_corpus_path() + " --cap 50" +
      " --test-per-class 5 --train-out " + train_out + " --test-out " +
      test_out + " --manifest " + manifest));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(read_file(manifest));
  CHECK(j["seed"] == 5);
  CHECK(j["test_total"] == 10);
  CHECK(j["per_class"]["Cars"]["test"] == 5);
  CHECK(count_lines(read_file(train_out)) == j["train_total"]);

  // Same config, same bytes.
  const std::string manifest2 = fixture_path("prep_manifest2.json");
  REQUIRE(run_cli(with_config(
                      "prepare --corpus " + train_corpus_path() +
                      " --cap 50 --test-per-class 5 --train-out " +
                      fixture_path("p2_train.jsonl") + " --test-out " +
                      fixture_path("p2_test.jsonl") + " --manifest " +
                      manifest2))
              .code == 0);
  CHECK(read_file(manifest) == read_file(manifest2));
  CHECK(read_file(train_out) == read_file(fixture_path("p2_train.jsonl")));
}

TEST_CASE("cv and curve runners write their report artifacts") {
  const std::string report = fixture_path("cv_report.json");
  const auto cv = run_cli(with_config(
      "cv --corpus " + train_corpus_path() + " --folds 4 --report " +
      report + " --matrix-out " + fixture_path("cv_matrix.tsv")));
  REQUIRE(cv.code == 0);
  const auto cj = nlohmann::json::parse(read_file(report));
  CHECK(cj["metadata"]["folds"] == 4);
  CHECK(cj["metadata"]["protocol"] == "cross_validation");
  CHECK(cj["accuracy"].get<double>() >= 0.9);

  const std::string csv = fixture_path("curve.csv");
  const auto curve = run_cli(with_config(
      "curve --train-corpus " + train_corpus_path() + " --test-corpus " +
      train_corpus_path() + " --sizes 4,40 --out " + csv));
  REQUIRE(curve.code == 0);
  CHECK(count_lines(read_file(csv)) == 3);

  const auto no_sizes = run_cli(with_config(
      "curve --train-corpus " + train_corpus_path() + " --test-corpus " +
      train_corpus_path() + " --out " + csv));
  CHECK(no_sizes.code == 1);
}

TEST_CASE("eval metric mode rescores the recorded run matrix") {
  const std::string scheme =
      std::string(SILVERCAT_SOURCE_DIR) + "/data/class_scheme.json";
  const std::string matrix =
      std::string(SILVERCAT_SOURCE_DIR) + "/tests/data/reference_matrix.tsv";
  const std::string config = fixture_path("paper_config.json");
  write_file(config,
             nlohmann::json{{"paths", {{"scheme", scheme}}}}.dump() + "\n");
  const std::string report = fixture_path("paper_report.json");
  const auto r = run_cli("--config " + config + " eval --matrix " + matrix +
                         " --report " + report + " --matrix-out " +
                         fixture_path("paper_matrix.tsv"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(read_file(report));
  const double accuracy = j["accuracy"].get<double>();
  CHECK(std::abs(accuracy - 0.611) <= 0.001);
  CHECK(j["per_class"]["Pets&Animals"]["precision"].get<double>() ==
        doctest::Approx(0.70).epsilon(0.01));

  // Coarsening the same matrix can only help.
  const std::string coarse_out = fixture_path("paper_coarse.tsv");
  REQUIRE(run_cli("--config " + config + " coarsen --matrix " + matrix +
                  " --out " + coarse_out)
              .code == 0);
  const auto coarse = silvercat::ConfusionMatrix::read_tsv(coarse_out);
  CHECK(silvercat::macro_report(coarse).accuracy >= accuracy);
}

}  // namespace
