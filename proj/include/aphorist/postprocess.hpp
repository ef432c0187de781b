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

#ifndef APHORIST_POSTPROCESS_HPP_
#define APHORIST_POSTPROCESS_HPP_

#include <span>
#include <string>
#include <vector>

#include "aphorist/corpus.hpp"
#include "aphorist/rng.hpp"

namespace aphorist {

struct PipelineConfig {
  std::size_t length_limit = 140;
  int min_quote_words = 3;  // quotes longer than this get swapped for news
  bool retry_on_unoriginal = true;
};

/// Roulette selection weighted by inverse character length.
const std::string& prefer_short(std::span<const std::string> candidates,
                                Rng& rng);

struct ShortenResult {
  std::string text;
  bool over_limit = false;
};

/// Keeps the first and last sentence and greedily re-inserts middle sentences
/// in original order while the result fits. If first + last alone exceed the
/// limit the result is returned anyway, flagged over-limit.
ShortenResult shorten(const std::string& text, std::size_t limit,
                      const TokenizerOptions& opts = {});

/// Balances (), [] and straight double quotes: an unmatched opener gets its
/// closer at the end of its clause, an unmatched closer gets an opener at the
/// start of its clause, and a mark whose repair would enclose nothing is
/// deleted. Quotes are paired alternately open/close.
std::string fix_punctuation(const std::string& text);

/// Normalized training entries prepared for substring scanning.
class NormalizedCorpus {
 public:
  explicit NormalizedCorpus(const Corpus& corpus,
                            const TokenizerOptions& opts = {});

  /// True when the normalized, space-joined text occurs contiguously (on
  /// token boundaries) inside some entry.
  bool contains(const std::string& text) const;

 private:
  std::string haystack_;  // " entry1 \n entry2 \n ..." padded for boundaries
  TokenizerOptions opts_;
};

/// True iff the normalized text is NOT a contiguous part of any normalized
/// training entry. A text with no normalizable words is never original.
bool is_original(const std::string& text, const Corpus& training,
                 const TokenizerOptions& opts = {});
bool is_original(const std::string& text, const NormalizedCorpus& training);

}  // namespace aphorist

#endif  // APHORIST_POSTPROCESS_HPP_
