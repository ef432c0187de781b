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

#ifndef APHORIST_PIPELINE_HPP_
#define APHORIST_PIPELINE_HPP_

#include <chrono>
#include <map>
#include <optional>
#include <string>

#include "aphorist/markov.hpp"
#include "aphorist/postprocess.hpp"
#include "aphorist/topical.hpp"

namespace aphorist {

// End-to-end statement generation: candidate pool, inverse-length pick,
// shortening, punctuation repair, optional news insertion, originality gate.

struct PipelineOptions {
  InterpolationConfig interpolation;
  PipelineConfig post;
  EntityPolicy entity_policy;
  std::chrono::year_month_day today = current_date();
  std::size_t max_attempts = 10;  // regenerations after unoriginal output
};

struct Statement {
  std::string text;
  bool over_limit = false;
};

class StatementPipeline {
 public:
  StatementPipeline(std::map<int, NGramTable> tables, UnigramModel training,
                    NormalizedCorpus originality, PipelineOptions options);

  // News insertion runs only while an article is set.
  void set_article(Article article) { article_ = std::move(article); }
  void clear_article() { article_.reset(); }
  void set_influencer(Influencer influence) {
    influence_ = std::move(influence);
  }

  Statement generate(Rng& rng) const;

  // The news step alone (dates, then entities and quotes), for texts made
  // outside the Markov route. Without an article only dates change.
  std::string apply_news(const std::string& text, Rng& rng) const;

  const UnigramModel& training_unigram() const { return training_; }
  const PipelineOptions& options() const { return options_; }

 private:
  std::map<int, NGramTable> tables_;
  UnigramModel training_;
  NormalizedCorpus originality_;
  PipelineOptions options_;
  std::optional<Article> article_;
  Influencer influence_;
};

}  // namespace aphorist

#endif  // APHORIST_PIPELINE_HPP_
