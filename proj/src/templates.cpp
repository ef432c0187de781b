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

#include "aphorist/templates.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "aphorist/error.hpp"

namespace aphorist {

namespace {

std::string coarse_category(const PosTag& tag) {
  return tag.substr(0, tag.find(':'));
}

const std::set<std::string>& structural_categories() {
  static const std::set<std::string> categories = {
      "aux",  "conj", "det", "ex",   "mod", "neg", "num",
      "part", "prep", "pron", "punct", "wh",  "x"};
  return categories;
}

}  // namespace

bool Tagger::replaceable(const PosTag& tag) const {
  return structural_categories().count(coarse_category(tag)) == 0;
}

std::vector<WordGroup> Tagger::group(std::span<const std::string> words) const {
  const std::vector<PosTag> tags = this->tag(words);
  std::vector<WordGroup> groups;
  groups.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    groups.push_back({i, i + 1, tags[i]});
  }
  return groups;
}

LexiconTagger::LexiconTagger(const std::filesystem::path& lexicon_file) {
  std::ifstream in(lexicon_file);
  if (!in) throw InputError("cannot read lexicon: " + lexicon_file.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError("bad lexicon line " + std::to_string(line_no) + " in " +
                       lexicon_file.string());
    }
    std::string word = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    const auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
      }
      std::size_t i = 0;
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      s.erase(0, i);
    };
    trim(word);
    trim(tag);
    if (word.empty() || tag.empty()) {
      throw InputError("bad lexicon line " + std::to_string(line_no) + " in " +
                       lexicon_file.string());
    }
    add(word, tag);
  }
}

void LexiconTagger::add(const std::string& words, PosTag tag) {
  std::istringstream in(words);
  std::string word;
  std::string key;
  std::size_t count = 0;
  while (in >> word) {
    const std::string part = normalize(word);
    if (part.empty()) continue;
    if (!key.empty()) key.push_back(' ');
    key += part;
    ++count;
  }
  if (key.empty()) return;
  entries_[key] = std::move(tag);
  max_key_words_ = std::max(max_key_words_, count);
}

PosTag LexiconTagger::lookup(const std::string& word) const {
  const std::string key = normalize(word);
  if (key.empty()) return "punct";
  if (const auto it = entries_.find(key); it != entries_.end()) {
    return it->second;
  }
  if (std::isdigit(static_cast<unsigned char>(key.front())) != 0) return "num";

  // Crude suffix guesses for words outside the lexicon.
  static const std::vector<std::pair<std::string, PosTag>> suffixes = {
      {"ly", "adv"},      {"ing", "verb:ger"}, {"ed", "verb:past"},
      {"ion", "noun:sg"}, {"ment", "noun:sg"}, {"ness", "noun:sg"},
      {"ity", "noun:sg"}, {"ous", "adj"},      {"ive", "adj"},
      {"ful", "adj"},     {"able", "adj"},     {"al", "adj"},
      {"s", "noun:pl"},
  };
  for (const auto& [suffix, tag] : suffixes) {
    if (key.size() > suffix.size() + 2 &&
        key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return tag;
    }
  }
  return "noun:sg";
}

std::vector<PosTag> LexiconTagger::tag(
    std::span<const std::string> words) const {
  std::vector<PosTag> tags;
  tags.reserve(words.size());
  for (const std::string& word : words) tags.push_back(lookup(word));
  return tags;
}

std::vector<WordGroup> LexiconTagger::group(
    std::span<const std::string> words) const {
  std::vector<WordGroup> groups;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t taken = 1;
    PosTag tag;
    bool matched = false;
    // Longest lexicon match first, so fixed expressions stay in one piece.
    const std::size_t longest = std::min(max_key_words_, words.size() - i);
    for (std::size_t span = longest; span >= 2 && !matched; --span) {
      std::string key;
      bool valid = true;
      for (std::size_t k = i; k < i + span; ++k) {
        const std::string part = normalize(words[k]);
        if (part.empty()) {
          valid = false;
          break;
        }
        if (!key.empty()) key.push_back(' ');
        key += part;
      }
      if (!valid) continue;
      if (const auto it = entries_.find(key); it != entries_.end()) {
        tag = it->second;
        taken = span;
        matched = true;
      }
    }
    if (!matched) tag = lookup(words[i]);
    groups.push_back({i, i + taken, tag});
    i += taken;
  }
  return groups;
}

void TemplateConfig::validate() const {
  if (min_freq_percentile < 0.0 || min_freq_percentile > 1.0) {
    throw InputError("min_freq_percentile outside [0,1]");
  }
  if (replacement_factor == 0) throw InputError("replacement_factor must be positive");
  if (context_lines == 0) throw InputError("context_lines must be positive");
}

std::vector<std::string> select_context(const Corpus& content,
                                        std::size_t count, Rng& rng) {
  if (count == 0) throw InputError("context_lines must be positive");
  if (content.size() < count) {
    throw InputError("content corpus too small: " +
                     std::to_string(content.size()) + " lines, need " +
                     std::to_string(count));
  }
  const std::size_t start = rng.uniform_index(content.size() - count + 1);
  std::vector<std::string> lines;
  lines.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    lines.push_back(content.entries[start + i].text);
  }
  return lines;
}

namespace {

// One tagged unit of a text: word index range, core byte span, lowercased
// word form ("the supreme being"), and its tag.
struct TaggedUnit {
  std::size_t word_begin = 0;
  std::size_t word_end = 0;
  ByteRange bytes;
  std::string text;
  PosTag tag;
};

std::string lower_core(std::string_view text, ByteRange core) {
  std::string out;
  out.reserve(core.end - core.begin);
  for (std::size_t i = core.begin; i < core.end; ++i) {
    char c = text[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

struct AnalyzedText {
  TokenSequence seq;
  std::vector<std::string> words;  // lowercased stripped forms, one per token
  std::vector<ByteRange> cores;
  std::vector<TaggedUnit> units;
};

AnalyzedText analyze_text(const std::string& text, const Tagger& tagger,
                          const TokenizerOptions& opts) {
  AnalyzedText out;
  out.seq = tokenize(text, opts);
  out.words.reserve(out.seq.tokens.size());
  out.cores.reserve(out.seq.tokens.size());
  for (const ByteRange& token : out.seq.offsets) {
    const ByteRange core = strip_token_edges(text, token);
    out.cores.push_back(core);
    out.words.push_back(lower_core(text, core));
  }
  for (const WordGroup& group : tagger.group(out.words)) {
    TaggedUnit unit;
    unit.word_begin = group.begin;
    unit.word_end = group.end;
    unit.bytes = {out.cores[group.begin].begin, out.cores[group.end - 1].end};
    for (std::size_t k = group.begin; k < group.end; ++k) {
      if (out.words[k].empty()) continue;
      if (!unit.text.empty()) unit.text.push_back(' ');
      unit.text += out.words[k];
    }
    unit.tag = group.tag;
    out.units.push_back(std::move(unit));
  }
  return out;
}

// The rarest component word decides a unit's frequency.
std::uint64_t unit_frequency(const std::string& unit_text,
                             const UnigramModel& training) {
  std::istringstream in(unit_text);
  std::string word;
  std::uint64_t rarest = UINT64_MAX;
  while (in >> word) {
    rarest = std::min(rarest, training.count(normalize(word)));
  }
  return rarest == UINT64_MAX ? 0 : rarest;
}

std::vector<TemplateSlot> base_slots(const AnalyzedText& base,
                                     const Tagger& tagger,
                                     const UnigramModel& training) {
  std::vector<TemplateSlot> slots;
  for (const TaggedUnit& unit : base.units) {
    if (unit.text.empty()) continue;
    if (!tagger.replaceable(unit.tag)) continue;
    const auto seen =
        std::find_if(slots.begin(), slots.end(), [&](const TemplateSlot& s) {
          return s.word == unit.text;
        });
    if (seen != slots.end()) continue;
    slots.push_back({unit.word_begin, unit.text, unit.tag,
                     unit_frequency(unit.text, training)});
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const TemplateSlot& x, const TemplateSlot& y) {
                     return x.frequency < y.frequency;
                   });
  return slots;
}

PosIndex content_index(std::span<const std::string> content_lines,
                       const Tagger& tagger, const TokenizerOptions& opts) {
  PosIndex index;
  for (const std::string& line : content_lines) {
    const AnalyzedText analyzed = analyze_text(line, tagger, opts);
    for (const TaggedUnit& unit : analyzed.units) {
      if (unit.text.empty()) continue;
      auto& words = index[unit.tag];
      if (std::find(words.begin(), words.end(), unit.text) == words.end()) {
        words.push_back(unit.text);
      }
    }
  }
  return index;
}

}  // namespace

std::pair<std::vector<TemplateSlot>, PosIndex> build_mappings(
    const std::string& base, std::span<const std::string> content_lines,
    const Tagger& tagger, const UnigramModel& training,
    const TokenizerOptions& opts) {
  const AnalyzedText analyzed = analyze_text(base, tagger, opts);
  return {base_slots(analyzed, tagger, training),
          content_index(content_lines, tagger, opts)};
}

FilledTemplate fill_template(const std::string& base,
                             std::span<const std::string> content_lines,
                             const Tagger& tagger, const UnigramModel& training,
                             const TemplateConfig& config, Rng& rng,
                             const TokenizerOptions& opts) {
  config.validate();
  const AnalyzedText analyzed = analyze_text(base, tagger, opts);

  FilledTemplate result;
  result.record.base = base;
  result.record.slots = base_slots(analyzed, tagger, training);
  const PosIndex index = content_index(content_lines, tagger, opts);

  const std::size_t words = analyzed.seq.tokens.size();
  const std::size_t quota =
      (words + config.replacement_factor - 1) / config.replacement_factor;
  const std::uint64_t min_freq =
      training.empty() ? 0 : training.percentile(config.min_freq_percentile);

  // Consume slots rarest-first while the quota is unmet or the next slot is
  // still frequent enough; a pair is recorded only when a candidate exists.
  std::map<std::string, std::string> chosen;
  const std::vector<TemplateSlot>& slots = result.record.slots;
  std::size_t idx = 0;
  while (idx < slots.size() && (result.record.replacements.size() < quota ||
                                slots[idx].frequency >= min_freq)) {
    const TemplateSlot& slot = slots[idx];
    ++idx;
    const auto candidates = index.find(slot.tag);
    if (candidates == index.end() || candidates->second.empty()) continue;
    const std::string& pick =
        candidates->second[rng.uniform_index(candidates->second.size())];
    chosen[slot.word] = pick;
    result.record.replacements.emplace_back(slot.word, pick);
  }
  result.under_filled = result.record.replacements.size() < quota;

  std::vector<std::pair<ByteRange, std::string>> edits;
  for (const TaggedUnit& unit : analyzed.units) {
    const auto it = chosen.find(unit.text);
    if (it == chosen.end()) continue;
    std::string value = it->second;
    const bool sentence_initial = std::any_of(
        analyzed.seq.sentences.begin(), analyzed.seq.sentences.end(),
        [&](const SentenceSpan& s) { return s.begin == unit.word_begin; });
    if (sentence_initial && !value.empty() && value[0] >= 'a' &&
        value[0] <= 'z') {
      value[0] = static_cast<char>(value[0] - 'a' + 'A');
    }
    edits.emplace_back(unit.bytes, std::move(value));
  }

  std::string text;
  text.reserve(base.size());
  std::size_t cursor = 0;
  for (const auto& [range, value] : edits) {
    text.append(base, cursor, range.begin - cursor);
    text += value;
    cursor = range.end;
  }
  text.append(base, cursor, base.size() - cursor);
  result.text = std::move(text);
  return result;
}

}  // namespace aphorist
