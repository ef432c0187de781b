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

#ifndef APHORIST_CORPUS_HPP_
#define APHORIST_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aphorist {

/// One training text plus its sampling weight. Counts derived from the text
/// are multiplied by weight_multiplier when n-gram tables are trained.
struct SourceText {
  std::string text;
  std::string source_tag;
  double weight_multiplier = 1.0;
};

enum class CorpusRole { training, base, content };

struct Corpus {
  std::vector<SourceText> entries;
  CorpusRole role = CorpusRole::training;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }

  void add(std::string text, std::string tag = {}, double weight = 1.0) {
    entries.push_back({std::move(text), std::move(tag), weight});
  }
};

/// Token index range [begin, end) of one sentence.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Byte range [begin, end) of a token in its source text.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<SentenceSpan> sentences;
  std::vector<ByteRange> offsets;  // one byte range per token

  bool empty() const { return tokens.empty(); }
};

struct TokenizerOptions {
  // Lowercased words (with their trailing period) that never end a sentence.
  std::vector<std::string> abbreviations = default_abbreviations();

  static std::vector<std::string> default_abbreviations();
};

/// Whitespace tokenization with punctuation left attached to tokens.
/// Sentences end at '.', '!' or '?' followed by whitespace or end of input,
/// except after a listed abbreviation.
TokenSequence tokenize(std::string_view text, const TokenizerOptions& opts = {});

/// Sentences of `text` as verbatim substrings (trimmed at token edges).
std::vector<std::string> split_sentences(std::string_view text,
                                         const TokenizerOptions& opts = {});

/// Canonical n-gram key: ASCII letters lowercased, ASCII non-alphanumerics
/// removed, bytes >= 0x80 kept verbatim. May return an empty string.
std::string normalize(std::string_view token);

/// Shrinks a token's byte range past any leading/trailing ASCII punctuation.
/// Bytes >= 0x80 count as word characters. May return an empty range.
ByteRange strip_token_edges(std::string_view text, ByteRange token);

/// Replaces typographic double/single quotes with straight ones. Applied
/// when corpus files are loaded so punctuation repair sees one quote style.
std::string sanitize_text(std::string_view text);

class UnigramModel {
 public:
  void add(std::string_view word, std::uint64_t n = 1);

  std::uint64_t count(std::string_view word) const;
  std::uint64_t total() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  /// Count value at rank ceil(q * distinct()) with distinct words sorted by
  /// ascending count; q = 0 gives the smallest count, q = 1 the largest.
  std::uint64_t percentile(double q) const;

  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Counts normalized tokens across all entries. Tokens that normalize to the
/// empty string are skipped; weight multipliers do not scale unigram counts.
UnigramModel build_unigram(const Corpus& corpus,
                           const TokenizerOptions& opts = {});

/// Loads a newline-delimited corpus file (one text per line, UTF-8).
/// `manifest` optionally maps "<basename>.tag" / "<basename>.weight" keys to
/// per-file source tags and weight multipliers.
void load_corpus_file(Corpus& corpus, const std::string& path,
                      const std::map<std::string, std::string>& manifest = {});

/// Parses a flat key-value sidecar manifest ("key = value" lines, '#'
/// comments).
std::map<std::string, std::string> load_manifest(const std::string& path);

}  // namespace aphorist

#endif  // APHORIST_CORPUS_HPP_
