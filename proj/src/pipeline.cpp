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

#include "aphorist/pipeline.hpp"

#include <utility>
#include <vector>

#include "aphorist/error.hpp"

namespace aphorist {

StatementPipeline::StatementPipeline(std::map<int, NGramTable> tables,
                                     UnigramModel training,
                                     NormalizedCorpus originality,
                                     PipelineOptions options)
    : tables_(std::move(tables)),
      training_(std::move(training)),
      originality_(std::move(originality)),
      options_(std::move(options)) {
  if (tables_.empty()) throw InputError("no trained tables");
  options_.interpolation.validate();
  if (options_.post.length_limit == 0) {
    throw InputError("length_limit must be positive");
  }
}

std::string StatementPipeline::apply_news(const std::string& text,
                                          Rng& rng) const {
  std::string out = replace_dates(text, options_.today, rng);
  if (article_) {
    out = insert_news(out, *article_, training_, options_.entity_policy, rng,
                      options_.post.min_quote_words);
  }
  return out;
}

Statement StatementPipeline::generate(Rng& rng) const {
  const std::size_t attempts = std::max<std::size_t>(1, options_.max_attempts);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    const std::vector<std::string> candidates = generate_candidates(
        tables_, options_.interpolation, influence_, rng,
        options_.interpolation.candidate_count);
    if (candidates.empty()) continue;

    std::string text = prefer_short(candidates, rng);
    const ShortenResult shortened =
        shorten(text, options_.post.length_limit);
    text = fix_punctuation(shortened.text);
    text = apply_news(text, rng);

    if (options_.post.retry_on_unoriginal && !is_original(text, originality_)) {
      continue;
    }
    const bool over = text.size() > options_.post.length_limit;
    return {std::move(text), over};
  }
  throw GenerationError("no original statement after " +
                        std::to_string(attempts) + " attempts");
}

}  // namespace aphorist
