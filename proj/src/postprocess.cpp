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

#include "aphorist/postprocess.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string_view>

#include "aphorist/error.hpp"
#include "aphorist/markov.hpp"

namespace aphorist {

const std::string& prefer_short(std::span<const std::string> candidates,
                                Rng& rng) {
  if (candidates.empty()) throw Error("no viable candidate");
  std::vector<std::pair<std::size_t, double>> weighted;
  weighted.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto len = std::max<std::size_t>(1, candidates[i].size());
    weighted.emplace_back(i, 1.0 / static_cast<double>(len));
  }
  return candidates[roulette_select(weighted, rng)];
}

ShortenResult shorten(const std::string& text, std::size_t limit,
                      const TokenizerOptions& opts) {
  if (text.size() <= limit) return {text, false};
  const std::vector<std::string> sentences = split_sentences(text, opts);
  if (sentences.size() <= 1) return {text, true};

  const std::size_t last = sentences.size() - 1;
  std::vector<bool> keep(sentences.size(), false);
  keep[0] = keep[last] = true;
  std::size_t length = sentences[0].size() + 1 + sentences[last].size();
  for (std::size_t i = 1; i < last; ++i) {
    const std::size_t with = length + 1 + sentences[i].size();
    if (with <= limit) {
      keep[i] = true;
      length = with;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!keep[i]) continue;
    if (!out.empty()) out.push_back(' ');
    out += sentences[i];
  }
  return {out, out.size() > limit};
}

namespace {

bool is_clause_boundary(char c) {
  return c == ',' || c == ';' || c == '.' || c == '!' || c == '?';
}

bool has_alnum(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u) != 0;
  });
}

// Pending edits keyed by original byte position.
struct Edits {
  std::map<std::size_t, std::string> inserts;  // inserted before position
  std::set<std::size_t> deletes;

  std::string apply(const std::string& text) const {
    std::string out;
    out.reserve(text.size() + 8);
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (const auto it = inserts.find(i); it != inserts.end()) out += it->second;
      if (i < text.size() && deletes.count(i) == 0) out.push_back(text[i]);
    }
    return out;
  }

  bool empty() const { return inserts.empty() && deletes.empty(); }
};

// End of the clause containing position p: index of the next boundary char at
// or after p, else end of text. Insertions land before the boundary char.
std::size_t clause_end(const std::string& text, std::size_t p) {
  for (std::size_t i = p; i < text.size(); ++i) {
    if (is_clause_boundary(text[i])) return i;
  }
  return text.size();
}

// Start of the clause containing position p: just after the previous boundary
// char, with following whitespace skipped.
std::size_t clause_start(const std::string& text, std::size_t p) {
  std::size_t i = p;
  while (i > 0 && !is_clause_boundary(text[i - 1])) --i;
  while (i < p && std::isspace(static_cast<unsigned char>(text[i])) != 0) ++i;
  return i;
}

void repair_opener(const std::string& text, std::size_t pos, char closer,
                   Edits& edits) {
  const std::size_t end = clause_end(text, pos + 1);
  if (has_alnum(std::string_view(text).substr(pos + 1, end - pos - 1))) {
    edits.inserts[end].push_back(closer);
  } else {
    edits.deletes.insert(pos);  // nothing to enclose
  }
}

void repair_closer(const std::string& text, std::size_t pos, char opener,
                   Edits& edits) {
  const std::size_t start = clause_start(text, pos);
  if (has_alnum(std::string_view(text).substr(start, pos - start))) {
    edits.inserts[start].push_back(opener);
  } else {
    edits.deletes.insert(pos);
  }
}

void repair_brackets(const std::string& text, char open, char close,
                     Edits& edits) {
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == open) {
      stack.push_back(i);
    } else if (text[i] == close) {
      if (!stack.empty()) {
        stack.pop_back();
      } else {
        repair_closer(text, i, open, edits);
      }
    }
  }
  for (const std::size_t pos : stack) repair_opener(text, pos, close, edits);
}

void repair_quotes(const std::string& text, Edits& edits) {
  std::vector<std::size_t> quotes;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '"') quotes.push_back(i);
  }
  // Quotes alternate open/close; an odd count leaves the last one open.
  if (quotes.size() % 2 == 1) {
    repair_opener(text, quotes.back(), '"', edits);
  }
}

}  // namespace

std::string fix_punctuation(const std::string& text) {
  Edits edits;
  repair_brackets(text, '(', ')', edits);
  repair_brackets(text, '[', ']', edits);
  repair_quotes(text, edits);
  if (edits.empty()) return text;
  return edits.apply(text);
}

namespace {

std::string normalized_join(const std::string& text,
                            const TokenizerOptions& opts) {
  const TokenSequence seq = tokenize(text, opts);
  std::string out;
  for (const auto& token : seq.tokens) {
    const std::string key = normalize(token);
    if (key.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += key;
  }
  return out;
}

}  // namespace

NormalizedCorpus::NormalizedCorpus(const Corpus& corpus,
                                   const TokenizerOptions& opts)
    : opts_(opts) {
  haystack_.push_back('\n');
  for (const auto& entry : corpus.entries) {
    haystack_.push_back(' ');
    haystack_ += normalized_join(entry.text, opts);
    haystack_ += " \n";
  }
}

bool NormalizedCorpus::contains(const std::string& text) const {
  const std::string norm = normalized_join(text, opts_);
  if (norm.empty()) return true;  // wordless text counts as overlapping
  const std::string needle = " " + norm + " ";
  return haystack_.find(needle) != std::string::npos;
}

bool is_original(const std::string& text, const NormalizedCorpus& training) {
  return !training.contains(text);
}

bool is_original(const std::string& text, const Corpus& training,
                 const TokenizerOptions& opts) {
  return is_original(text, NormalizedCorpus(training, opts));
}

}  // namespace aphorist
