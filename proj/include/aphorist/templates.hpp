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

#ifndef APHORIST_TEMPLATES_HPP_
#define APHORIST_TEMPLATES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aphorist/corpus.hpp"
#include "aphorist/rng.hpp"

namespace aphorist {

// Turns one base line into a new statement: rare replaceable words are
// swapped for same-tagged words taken from a few consecutive content lines.

// Tag values are opaque strings; the coarse category is everything before the
// first ':' (e.g. "verb:pres:pl" is a "verb"). Finer segments keep slots from
// accepting grammatically incompatible words.
using PosTag = std::string;

// A run of consecutive words [begin, end) carrying one tag. Multi-word runs
// let a lexicon treat fixed expressions as single units.
struct WordGroup {
  std::size_t begin = 0;
  std::size_t end = 0;
  PosTag tag;
};

class Tagger {
 public:
  virtual ~Tagger() = default;

  // One tag per word; input words arrive lowercased with edge punctuation
  // already stripped. Output length must equal input length.
  virtual std::vector<PosTag> tag(std::span<const std::string> words) const = 0;

  // Structural categories (determiners, auxiliaries, pronouns and the like)
  // are off-limits for replacement.
  virtual bool replaceable(const PosTag& tag) const;

  // Groups words into tagged units; the default wraps tag() one word at a
  // time. Lexicon taggers override this to merge fixed expressions.
  virtual std::vector<WordGroup> group(std::span<const std::string> words) const;
};

// Word -> tag lookup backed by a lexicon file, with suffix heuristics for
// unknown words. Multi-word lexicon entries are matched greedily, longest
// first. Lookup keys are normalized, so "Don't" and "don't" share an entry.
class LexiconTagger : public Tagger {
 public:
  LexiconTagger() = default;
  explicit LexiconTagger(const std::filesystem::path& lexicon_file);

  // `words` may contain spaces for fixed expressions.
  void add(const std::string& words, PosTag tag);

  std::size_t size() const { return entries_.size(); }

  std::vector<PosTag> tag(std::span<const std::string> words) const override;
  std::vector<WordGroup> group(std::span<const std::string> words) const override;

 private:
  PosTag lookup(const std::string& word) const;

  std::map<std::string, PosTag> entries_;
  std::size_t max_key_words_ = 1;
};

struct TemplateConfig {
  double min_freq_percentile = 0.62;  // replacement stops below this rarity
  std::size_t replacement_factor = 25;  // one replacement per this many words
  std::size_t context_lines = 3;

  void validate() const;
};

// One replaceable slot of the base text.
struct TemplateSlot {
  std::size_t position = 0;  // word index of the first occurrence in the base
  std::string word;
  PosTag tag;
  std::uint64_t frequency = 0;  // training unigram count
};

// tag -> distinct words carrying it in the content lines, in order of first
// appearance.
using PosIndex = std::map<PosTag, std::vector<std::string>>;

struct DynamicTemplate {
  std::string base;
  std::vector<TemplateSlot> slots;  // replaceable words, rarest first
  std::vector<std::pair<std::string, std::string>> replacements;
};

struct FilledTemplate {
  std::string text;
  DynamicTemplate record;
  // Set when the slots ran out before the replacement quota was met.
  bool under_filled = false;
};

// `count` consecutive entries of `content`, uniformly random start.
std::vector<std::string> select_context(const Corpus& content,
                                        std::size_t count, Rng& rng);

// The base text's replaceable slots sorted by ascending training frequency
// (ties keep base order), and the tag index over the content lines.
std::pair<std::vector<TemplateSlot>, PosIndex> build_mappings(
    const std::string& base, std::span<const std::string> content_lines,
    const Tagger& tagger, const UnigramModel& training,
    const TokenizerOptions& opts = {});

// Consumes slots rarest-first, swapping each for a uniformly chosen
// same-tagged content word while the replacement quota
// ceil(words / replacement_factor) is unmet or the next slot is at least as
// frequent as the configured percentile of the training counts. Every
// occurrence of a replaced word changes, sentence-initial ones title-cased.
FilledTemplate fill_template(const std::string& base,
                             std::span<const std::string> content_lines,
                             const Tagger& tagger, const UnigramModel& training,
                             const TemplateConfig& config, Rng& rng,
                             const TokenizerOptions& opts = {});

}  // namespace aphorist

#endif  // APHORIST_TEMPLATES_HPP_
