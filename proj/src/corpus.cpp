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

#include "aphorist/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aphorist/error.hpp"

namespace aphorist {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string ascii_lower_copy(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

// Closers that may trail a terminator without hiding it: quotes, brackets.
bool is_trailing_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// True when this token closes a sentence. The token is the full
// whitespace-delimited surface form.
bool ends_sentence(std::string_view token, const TokenizerOptions& opts) {
  std::size_t end = token.size();
  while (end > 0 && is_trailing_closer(token[end - 1])) --end;
  if (end == 0 || !is_terminator(token[end - 1])) return false;
  if (token[end - 1] != '.') return true;
  const std::string lowered = ascii_lower_copy(token.substr(0, end));
  for (const auto& abbr : opts.abbreviations) {
    if (lowered == abbr) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> TokenizerOptions::default_abbreviations() {
  return {"dr.", "mr.",  "mrs.",  "ms.",  "prof.", "st.",  "vs.",
          "etc.", "e.g.", "i.e.",  "jr.",  "sr.",   "no.",  "fig.",
          "ca.",  "dept.", "inc.", "ltd.", "co.",   "approx."};
}

TokenSequence tokenize(std::string_view text, const TokenizerOptions& opts) {
  TokenSequence seq;
  std::size_t i = 0;
  std::size_t sentence_begin = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    const std::size_t begin = i;
    while (i < n && !is_space(text[i])) ++i;
    seq.tokens.emplace_back(text.substr(begin, i - begin));
    seq.offsets.push_back({begin, i});
    if (ends_sentence(seq.tokens.back(), opts)) {
      seq.sentences.push_back({sentence_begin, seq.tokens.size()});
      sentence_begin = seq.tokens.size();
    }
  }
  if (sentence_begin < seq.tokens.size()) {
    seq.sentences.push_back({sentence_begin, seq.tokens.size()});
  }
  return seq;
}

std::vector<std::string> split_sentences(std::string_view text,
                                         const TokenizerOptions& opts) {
  const TokenSequence seq = tokenize(text, opts);
  std::vector<std::string> out;
  out.reserve(seq.sentences.size());
  for (const auto& span : seq.sentences) {
    const std::size_t from = seq.offsets[span.begin].begin;
    const std::size_t to = seq.offsets[span.end - 1].end;
    out.emplace_back(text.substr(from, to - from));
  }
  return out;
}

std::string normalize(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      out.push_back(c);  // multi-byte UTF-8 passes through untouched
    } else if (is_ascii_alnum(c)) {
      out.push_back(ascii_lower(c));
    }
  }
  return out;
}

ByteRange strip_token_edges(std::string_view text, ByteRange token) {
  const auto strippable = [&](std::size_t i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    return c < 0x80 && !is_ascii_alnum(text[i]);
  };
  ByteRange core = token;
  while (core.begin < core.end && strippable(core.begin)) ++core.begin;
  while (core.end > core.begin && strippable(core.end - 1)) --core.end;
  return core;
}

std::string sanitize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    // U+201C/U+201D/U+201E -> ", U+2018/U+2019 -> '
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80) {
      const unsigned char b = static_cast<unsigned char>(text[i + 2]);
      if (b == 0x9C || b == 0x9D || b == 0x9E) {
        out.push_back('"');
        i += 3;
        continue;
      }
      if (b == 0x98 || b == 0x99) {
        out.push_back('\'');
        i += 3;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

void UnigramModel::add(std::string_view word, std::uint64_t n) {
  counts_[std::string(word)] += n;
  total_ += n;
}

std::uint64_t UnigramModel::count(std::string_view word) const {
  const auto it = counts_.find(std::string(word));
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t UnigramModel::percentile(double q) const {
  if (counts_.empty()) throw InputError("percentile of empty unigram model");
  if (q < 0.0 || q > 1.0) throw InputError("percentile fraction outside [0,1]");
  std::vector<std::uint64_t> sorted;
  sorted.reserve(counts_.size());
  for (const auto& [word, c] : counts_) sorted.push_back(c);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  // Rank ceil(q*n); the epsilon keeps exact products from rounding up.
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

UnigramModel build_unigram(const Corpus& corpus, const TokenizerOptions& opts) {
  if (corpus.empty()) throw InputError("empty corpus");
  UnigramModel model;
  for (const auto& entry : corpus.entries) {
    const TokenSequence seq = tokenize(entry.text, opts);
    for (const auto& token : seq.tokens) {
      const std::string key = normalize(token);
      if (!key.empty()) model.add(key);
    }
  }
  return model;
}

std::map<std::string, std::string> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read manifest: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && is_space(s.front())) s.erase(s.begin());
      while (!s.empty() && is_space(s.back())) s.pop_back();
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

namespace {

std::string basename_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace

void load_corpus_file(Corpus& corpus, const std::string& path,
                      const std::map<std::string, std::string>& manifest) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read corpus file: " + path);
  const std::string base = basename_of(path);
  std::string tag = base;
  double weight = 1.0;
  if (auto it = manifest.find(base + ".tag"); it != manifest.end()) {
    tag = it->second;
  }
  if (auto it = manifest.find(base + ".weight"); it != manifest.end()) {
    try {
      weight = std::stod(it->second);
    } catch (const std::exception&) {
      throw InputError("bad weight for " + base + ": " + it->second);
    }
    if (weight <= 0.0) throw InputError("weight must be positive for " + base);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string text = sanitize_text(line);
    const bool blank = std::all_of(text.begin(), text.end(), is_space);
    if (!blank) corpus.add(std::move(text), tag, weight);
  }
}

}  // namespace aphorist
