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

#ifndef APHORIST_CONFIG_HPP_
#define APHORIST_CONFIG_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aphorist/markov.hpp"
#include "aphorist/postprocess.hpp"
#include "aphorist/reply.hpp"
#include "aphorist/templates.hpp"
#include "aphorist/topical.hpp"

namespace aphorist {

// Flat key-value application config ("key = value" lines, '#' comments).
// Relative paths resolve against the config file's directory; every
// configured input path must exist at load time.
struct AppConfig {
  std::vector<std::string> training_corpus;  // newline-delimited text files
  std::string base_corpus;
  std::string content_corpus;
  std::string manifest;   // per-file source tags and weight multipliers
  std::string model_dir = "models";
  std::string lexicon;    // tagger lexicon; unset means suffix rules only

  InterpolationConfig interpolation;
  PipelineConfig post;
  EntityPolicy entity_policy;
  TemplateConfig templates;
  ReplyConfig reply;
  std::size_t max_attempts = 10;

  // "auto" builds the template unigram from base+content lines, falling back
  // to the training corpus; "training" always uses the training corpus.
  std::string unigram_source = "auto";

  std::string article_dir;
  std::string article_url;  // opt-in network fetch

  std::optional<std::uint64_t> seed;
  std::optional<std::chrono::year_month_day> today;

  bool operator==(const AppConfig& other) const;

  static AppConfig parse(const std::string& text,
                         const std::string& base_dir = {});
  static AppConfig load(const std::string& path);
  std::string serialize() const;

  // Throws unless every configured input path exists.
  void check_paths() const;
};

bool operator==(const InterpolationConfig& a, const InterpolationConfig& b);
bool operator==(const PipelineConfig& a, const PipelineConfig& b);
bool operator==(const EntityPolicy& a, const EntityPolicy& b);
bool operator==(const TemplateConfig& a, const TemplateConfig& b);
bool operator==(const ReplyConfig& a, const ReplyConfig& b);

}  // namespace aphorist

#endif  // APHORIST_CONFIG_HPP_
