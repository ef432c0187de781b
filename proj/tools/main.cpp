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

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aphorist/config.hpp"
#include "aphorist/error.hpp"
#include "aphorist/pipeline.hpp"
#include "aphorist/reply.hpp"
#include "aphorist/templates.hpp"

namespace {

using namespace aphorist;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
};

Rng make_rng(const CommonArgs& args, const AppConfig& config) {
  if (args.seed) return Rng(*args.seed);
  if (config.seed) return Rng(*config.seed);
  return Rng::from_entropy();
}

std::chrono::year_month_day config_today(const AppConfig& config) {
  return config.today.value_or(current_date());
}

Corpus load_training(const AppConfig& config) {
  if (config.training_corpus.empty()) {
    throw InputError("training_corpus is not configured");
  }
  Corpus corpus;
  corpus.role = CorpusRole::training;
  std::map<std::string, std::string> manifest;
  if (!config.manifest.empty()) manifest = load_manifest(config.manifest);
  for (const std::string& path : config.training_corpus) {
    load_corpus_file(corpus, path, manifest);
  }
  return corpus;
}

Corpus load_lines(const std::string& path, CorpusRole role,
                  const char* key_name) {
  if (path.empty()) {
    throw InputError(std::string(key_name) + " is not configured");
  }
  Corpus corpus;
  corpus.role = role;
  load_corpus_file(corpus, path);
  return corpus;
}

std::string model_path(const AppConfig& config, int order) {
  return (std::filesystem::path(config.model_dir) /
          ("order_" + std::to_string(order) + ".model"))
      .string();
}

std::string unigram_path(const AppConfig& config) {
  return (std::filesystem::path(config.model_dir) / "unigram.model").string();
}

std::map<int, NGramTable> load_tables(const AppConfig& config) {
  std::map<int, NGramTable> tables;
  for (const auto& [order, weight] : config.interpolation.weights) {
    const std::string path = model_path(config, order);
    if (!std::filesystem::exists(path)) {
      throw InputError("model file missing (run train first): " + path);
    }
    tables.emplace(order, load_table(path));
  }
  return tables;
}

std::optional<Article> fetch_article(const AppConfig& config,
                                     const UnigramModel& unigram,
                                     bool no_news) {
  if (no_news) return std::nullopt;
  std::unique_ptr<ArticleFetcher> fetcher;
  if (!config.article_dir.empty()) {
    fetcher = std::make_unique<DirectoryFetcher>(config.article_dir);
  } else if (!config.article_url.empty()) {
    fetcher = std::make_unique<HttpFetcher>(config.article_url);
  } else {
    return std::nullopt;
  }
  try {
    const std::vector<Article> articles = fetcher->fetch();
    if (articles.empty()) {
      std::cerr << "news skipped: no usable articles\n";
      return std::nullopt;
    }
    return articles[select_article(articles, unigram)];
  } catch (const FetchError& e) {
    std::cerr << "news skipped: " << e.what() << '\n';
    return std::nullopt;
  } catch (const InputError& e) {
    std::cerr << "news skipped: " << e.what() << '\n';
    return std::nullopt;
  }
}

int cmd_train(const CommonArgs& args) {
  const AppConfig config = AppConfig::load(args.config_path);
  const Corpus corpus = load_training(config);

  std::filesystem::create_directories(config.model_dir);
  for (const auto& [order, weight] : config.interpolation.weights) {
    const NGramTable table = train(corpus, order);
    save_table(table, model_path(config, order));
    std::cout << "order " << order << ": " << table.transitions.size()
              << " contexts\n";
  }
  const UnigramModel unigram = build_unigram(corpus);
  save_unigram(unigram, unigram_path(config));
  std::cout << "unigram: " << unigram.distinct() << " words\n";
  return 0;
}

StatementPipeline build_pipeline(const AppConfig& config, const Corpus& corpus,
                                 UnigramModel unigram, bool no_news) {
  PipelineOptions options;
  options.interpolation = config.interpolation;
  options.post = config.post;
  options.entity_policy = config.entity_policy;
  options.today = config_today(config);
  options.max_attempts = config.max_attempts;

  std::optional<Article> article = fetch_article(config, unigram, no_news);
  StatementPipeline pipeline(load_tables(config), std::move(unigram),
                             NormalizedCorpus(corpus), std::move(options));
  if (article) pipeline.set_article(std::move(*article));
  return pipeline;
}

int cmd_generate(const CommonArgs& args, int count, bool no_news) {
  const AppConfig config = AppConfig::load(args.config_path);
  const Corpus corpus = load_training(config);
  UnigramModel unigram = load_unigram(unigram_path(config));
  const StatementPipeline pipeline =
      build_pipeline(config, corpus, std::move(unigram), no_news);

  Rng rng = make_rng(args, config);
  for (int i = 0; i < count; ++i) {
    const Statement statement = pipeline.generate(rng);
    std::cout << statement.text << '\n';
    if (statement.over_limit) {
      std::cerr << "note: line " << (i + 1) << " exceeds the length limit\n";
    }
  }
  return 0;
}

int cmd_template(const CommonArgs& args, int count, bool explain,
                 bool no_news) {
  const AppConfig config = AppConfig::load(args.config_path);
  const Corpus base = load_lines(config.base_corpus, CorpusRole::base,
                                 "base_corpus");
  const Corpus content = load_lines(config.content_corpus, CorpusRole::content,
                                    "content_corpus");

  UnigramModel unigram;
  if (config.unigram_source == "training") {
    unigram = build_unigram(load_training(config));
  } else {
    Corpus merged = base;
    merged.entries.insert(merged.entries.end(), content.entries.begin(),
                          content.entries.end());
    unigram = build_unigram(merged);
  }

  const LexiconTagger tagger = config.lexicon.empty()
                                   ? LexiconTagger()
                                   : LexiconTagger(config.lexicon);
  const std::optional<Article> article =
      fetch_article(config, unigram, no_news);

  Rng rng = make_rng(args, config);
  for (int i = 0; i < count; ++i) {
    const std::string& base_line =
        base.entries[rng.uniform_index(base.size())].text;
    const std::vector<std::string> lines =
        select_context(content, config.templates.context_lines, rng);
    const FilledTemplate filled = fill_template(
        base_line, lines, tagger, unigram, config.templates, rng);

    std::string text = replace_dates(filled.text, config_today(config), rng);
    if (article) {
      text = insert_news(text, *article, unigram, config.entity_policy, rng,
                         config.post.min_quote_words);
    }
    std::cout << text << '\n';

    if (explain) {
      std::cerr << "base: " << base_line << '\n';
      for (const std::string& line : lines) {
        std::cerr << "context: " << line << '\n';
      }
      for (const auto& [from, to] : filled.record.replacements) {
        std::cerr << "replace: " << from << " -> " << to << '\n';
      }
      if (filled.under_filled) std::cerr << "note: under-filled\n";
    }
  }
  return 0;
}

int cmd_reply(const CommonArgs& args, const std::string& once, bool no_news) {
  const AppConfig config = AppConfig::load(args.config_path);
  const Corpus corpus = load_training(config);
  UnigramModel unigram = load_unigram(unigram_path(config));
  const UnigramModel scoring = unigram;
  const StatementPipeline pipeline =
      build_pipeline(config, corpus, std::move(unigram), no_news);

  Rng rng = make_rng(args, config);
  const CandidateGenerator generate = [&pipeline](Rng& r) {
    return pipeline.generate(r).text;
  };

  std::vector<Turn> turns;
  const auto respond = [&](const std::string& message) {
    turns.push_back({Author::user, message});
    const std::string reply =
        best_reply(generate, turns, scoring, config.reply, rng);
    std::cout << reply << std::endl;
    turns.push_back({Author::bot, reply});
  };

  if (!once.empty()) {
    respond(once);
    return 0;
  }
  std::string line;
  while (true) {
    std::cerr << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (line == "exit") break;
    if (line.empty()) continue;
    respond(line);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus-imitation statement generator"};
  app.require_subcommand(1);

  CommonArgs common;
  int count = 1;
  bool explain = false;
  bool no_news = false;
  std::string once;

  const auto add_common = [&common](CLI::App* cmd) {
    cmd->add_option("--config", common.config_path, "Config file path")
        ->required();
    cmd->add_option("--seed", common.seed, "Seed for the random generator");
  };

  CLI::App* train = app.add_subcommand("train", "Train and save the models");
  add_common(train);

  CLI::App* generate =
      app.add_subcommand("generate", "Generate statements from the models");
  add_common(generate);
  generate->add_option("--count", count, "Number of statements");
  generate->add_flag("--no-news", no_news, "Skip the news insertion step");

  CLI::App* tmpl = app.add_subcommand(
      "template", "Generate statements by filling dynamic templates");
  add_common(tmpl);
  tmpl->add_option("--count", count, "Number of statements");
  tmpl->add_flag("--explain", explain,
                 "Print the base line, context lines and replacements");
  tmpl->add_flag("--no-news", no_news, "Skip the news insertion step");

  CLI::App* reply = app.add_subcommand("reply", "Reply to messages");
  add_common(reply);
  reply->add_option("--once", once, "Reply to one message and exit");
  reply->add_flag("--no-news", no_news, "Skip the news insertion step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (train->parsed()) return cmd_train(common);
    if (generate->parsed()) return cmd_generate(common, count, no_news);
    if (tmpl->parsed()) return cmd_template(common, count, explain, no_news);
    if (reply->parsed()) return cmd_reply(common, once, no_news);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FetchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
