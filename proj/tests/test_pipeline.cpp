// Copyright 2026 The Aphorist Authors.
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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "aphorist/config.hpp"
#include "aphorist/error.hpp"
#include "aphorist/pipeline.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace aphorist;

namespace {

Corpus toy_corpus() {
  Corpus corpus;
  load_corpus_file(corpus, fixture("toy_corpus.txt"));
  return corpus;
}

PipelineOptions toy_options() {
  PipelineOptions options;
  options.interpolation.weights = {{1, 1.0}, {2, 1.0}};
  options.interpolation.candidate_count = 5;
  options.interpolation.max_tokens = 30;
  options.max_attempts = 25;
  options.today = std::chrono::year_month_day{
      std::chrono::year{2026}, std::chrono::month{8}, std::chrono::day{21}};
  return options;
}

StatementPipeline toy_pipeline(PipelineOptions options) {
  const Corpus corpus = toy_corpus();
  std::map<int, NGramTable> tables;
  tables.emplace(1, train(corpus, 1));
  tables.emplace(2, train(corpus, 2));
  return StatementPipeline(std::move(tables), build_unigram(corpus),
                           NormalizedCorpus(corpus), std::move(options));
}

}  // namespace

TEST_CASE("pipeline construction validates its pieces") {
  const Corpus corpus = toy_corpus();
  const UnigramModel unigram = build_unigram(corpus);
  const NormalizedCorpus normalized(corpus);

  CHECK_THROWS_WITH_AS(
      StatementPipeline({}, unigram, normalized, toy_options()),
      "no trained tables", InputError);

  std::map<int, NGramTable> tables;
  tables.emplace(1, train(corpus, 1));

  PipelineOptions no_weights = toy_options();
  no_weights.interpolation.weights.clear();
  CHECK_THROWS_AS(
      StatementPipeline(tables, unigram, normalized, no_weights),
      InputError);

  PipelineOptions no_limit = toy_options();
  no_limit.post.length_limit = 0;
  CHECK_THROWS_AS(StatementPipeline(tables, unigram, normalized, no_limit),
                  InputError);
}

TEST_CASE("generated statements are deterministic and original") {
  const StatementPipeline pipeline = toy_pipeline(toy_options());
  const Corpus corpus = toy_corpus();

  Rng rng(101);
  const Statement statement = pipeline.generate(rng);
  CHECK_FALSE(statement.text.empty());
  CHECK(is_original(statement.text, corpus));
  CHECK(statement.over_limit == (statement.text.size() > 140));

  Rng same(101);
  CHECK(pipeline.generate(same).text == statement.text);
}

TEST_CASE("the over-limit flag reflects the final text") {
  PipelineOptions options = toy_options();
  options.post.length_limit = 10;
  options.post.retry_on_unoriginal = false;
  const StatementPipeline pipeline = toy_pipeline(options);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Statement statement = pipeline.generate(rng);
    CHECK(statement.over_limit == (statement.text.size() > 10));
  }
}

TEST_CASE("disabling the originality gate accepts training lines") {
  PipelineOptions options = toy_options();
  options.post.retry_on_unoriginal = false;
  options.max_attempts = 1;
  options.interpolation.candidate_count = 1;
  const StatementPipeline pipeline = toy_pipeline(options);

  Rng rng(7);
  CHECK_FALSE(pipeline.generate(rng).text.empty());
}

TEST_CASE("an inescapably unoriginal model fails after its attempts") {
  Corpus corpus;
  corpus.add("The cat sat.");
  std::map<int, NGramTable> tables;
  tables.emplace(1, train(corpus, 1));

  PipelineOptions options;
  options.interpolation.weights = {{1, 1.0}};
  options.interpolation.candidate_count = 2;
  options.max_attempts = 3;

  const StatementPipeline pipeline(std::move(tables), build_unigram(corpus),
                                   NormalizedCorpus(corpus), options);
  Rng rng(1);
  CHECK_THROWS_WITH_AS(pipeline.generate(rng),
                       "no original statement after 3 attempts",
                       GenerationError);
}

TEST_CASE("apply_news refreshes dates and swaps names for article names") {
  StatementPipeline pipeline = toy_pipeline(toy_options());
  pipeline.set_article(analyze_article(
      "t", "Reporters praised Alice Moreau for her candor yesterday."));

  Rng rng(9);
  const std::string out = pipeline.apply_news(
      "They spoke of Napoleon on 12/03/2017.", rng);

  CHECK(out.find("Napoleon") == std::string::npos);
  CHECK(out.find("Alice Moreau") != std::string::npos);
  CHECK(out.find("12/03/2017") == std::string::npos);
  // Today is pinned to 2026-08-21; the new date lands one to four days out.
  const bool near_future = out.find("22/08/2026") != std::string::npos ||
                           out.find("23/08/2026") != std::string::npos ||
                           out.find("24/08/2026") != std::string::npos ||
                           out.find("25/08/2026") != std::string::npos;
  CHECK(near_future);
}

TEST_CASE("without an article only dates change") {
  StatementPipeline pipeline = toy_pipeline(toy_options());
  Rng rng(9);
  const std::string out =
      pipeline.apply_news("They spoke of Napoleon in 1996.", rng);
  CHECK(out.find("Napoleon") != std::string::npos);
  CHECK(out.find("1996") == std::string::npos);
  CHECK(out.rfind("They spoke of Napoleon in ", 0) == 0);

  pipeline.set_article(analyze_article("t", "Ben Okafor waved to Ben Okafor."));
  pipeline.clear_article();
  Rng again(9);
  CHECK(pipeline.apply_news("They spoke of Napoleon in 1996.", again) == out);
}

TEST_CASE("an influencer leaves generation deterministic") {
  StatementPipeline pipeline = toy_pipeline(toy_options());
  pipeline.set_influencer(levenshtein_influencer(2.0));
  Rng rng(13);
  const Statement statement = pipeline.generate(rng);
  CHECK_FALSE(statement.text.empty());
  Rng same(13);
  CHECK(pipeline.generate(same).text == statement.text);
}

TEST_CASE("an empty config text yields the default configuration") {
  CHECK(AppConfig::parse("") == AppConfig{});
  CHECK(AppConfig::parse("# only a comment\n\n") == AppConfig{});
}

TEST_CASE("configs survive a serialize and parse round trip") {
  AppConfig config;
  config.training_corpus = {"/data/a.txt", "/data/b.txt"};
  config.base_corpus = "/data/base.txt";
  config.content_corpus = "/data/content.txt";
  config.manifest = "/data/manifest.conf";
  config.model_dir = "/models";
  config.lexicon = "/data/lexicon.tsv";
  config.interpolation.weights = {{1, 0.5}, {3, 200.0}};
  config.interpolation.candidate_count = 7;
  config.interpolation.max_tokens = 90;
  config.interpolation.retry_budget = 4;
  config.post.length_limit = 200;
  config.post.min_quote_words = 5;
  config.post.retry_on_unoriginal = false;
  config.max_attempts = 6;
  config.entity_policy.archetype_threshold = 12;
  config.templates.min_freq_percentile = 0.45;
  config.templates.replacement_factor = 20;
  config.templates.context_lines = 2;
  config.reply.candidate_count = 333;
  config.reply.history_window = 8;
  config.reply.user_recency_start = 4.5;
  config.unigram_source = "training";
  config.article_dir = "/articles";
  config.article_url = "http://example.org/feed";
  config.seed = 42;
  config.today = std::chrono::year_month_day{
      std::chrono::year{2026}, std::chrono::month{8}, std::chrono::day{21}};

  const std::string text = config.serialize();
  CHECK(AppConfig::parse(text) == config);
  CHECK(text.find("weights = 1:0.5, 3:200\n") != std::string::npos);
  CHECK(text.find("today = 2026-08-21\n") != std::string::npos);
}

TEST_CASE("config texts accept comments, blanks and CRLF") {
  const AppConfig config =
      AppConfig::parse("# header\r\n\r\nseed = 9\r\nmax_tokens = 50\r\n");
  CHECK(config.seed == 42 - 33);
  CHECK(config.interpolation.max_tokens == 50);
}

TEST_CASE("malformed config lines are rejected with their line number") {
  CHECK_THROWS_WITH_AS(AppConfig::parse("just words\n"),
                       doctest::Contains("config line 1"), InputError);
  CHECK_THROWS_WITH_AS(AppConfig::parse("\n\nmystery = 1\n"),
                       doctest::Contains("unknown config key 'mystery' on "
                                         "line 3"),
                       InputError);
}

TEST_CASE("config values are validated") {
  CHECK_THROWS_AS(AppConfig::parse("seed = -3"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("seed = twelve"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("retry_on_unoriginal = yes"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("today = 2026-13-01"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("today = soon"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("unigram_source = corpus"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("length_limit = 0"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("reply_candidates = 0"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("archetype_threshold = 0"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("min_freq_percentile = 1.5"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("context_lines = 0"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("weights = 2-1"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("weights = x:1"), InputError);
  CHECK_THROWS_AS(AppConfig::parse("weights ="), InputError);
}

TEST_CASE("relative config paths resolve against the config directory") {
  const AppConfig config = AppConfig::parse(
      "base_corpus = data/x.txt\n"
      "model_dir = m\n"
      "lexicon = /abs/lex.tsv\n"
      "training_corpus = a.txt, sub/b.txt\n",
      "/cfg");
  CHECK(config.base_corpus == "/cfg/data/x.txt");
  CHECK(config.model_dir == "/cfg/m");
  CHECK(config.lexicon == "/abs/lex.tsv");
  REQUIRE(config.training_corpus.size() == 2);
  CHECK(config.training_corpus[0] == "/cfg/a.txt");
  CHECK(config.training_corpus[1] == "/cfg/sub/b.txt");
}

TEST_CASE("loading a config verifies the paths it names") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "aphorist_config_test";
  fs::create_directories(dir);

  std::ofstream(dir / "corpus.txt") << "A line of text.\n";
  std::ofstream(dir / "good.conf")
      << "training_corpus = corpus.txt\nbase_corpus = corpus.txt\n";
  const AppConfig good = AppConfig::load((dir / "good.conf").string());
  CHECK(good.base_corpus == (dir / "corpus.txt").string());

  std::ofstream(dir / "bad.conf") << "training_corpus = missing.txt\n";
  CHECK_THROWS_WITH_AS(AppConfig::load((dir / "bad.conf").string()),
                       doctest::Contains("points to a missing path"),
                       InputError);

  std::ofstream(dir / "baddir.conf") << "article_dir = corpus.txt\n";
  CHECK_THROWS_WITH_AS(AppConfig::load((dir / "baddir.conf").string()),
                       doctest::Contains("missing directory"), InputError);

  CHECK_THROWS_WITH_AS(AppConfig::load((dir / "absent.conf").string()),
                       doctest::Contains("cannot read config"), InputError);

  fs::remove_all(dir);
}
