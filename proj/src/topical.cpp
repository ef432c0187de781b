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

#include "aphorist/topical.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "aphorist/error.hpp"

#include "httplib.h"

namespace aphorist {

namespace {

constexpr std::array<const char*, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool ascii_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool ascii_alpha(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool word_bounded(const std::string& text, std::size_t begin, std::size_t end,
                  bool letters_only) {
  const auto blocked = [&](char c) {
    return letters_only ? ascii_alpha(c) : ascii_alnum(c);
  };
  if (begin > 0 && blocked(text[begin - 1])) return false;
  if (end < text.size() && blocked(text[end])) return false;
  return true;
}

bool plausible_year(const std::string& digits) {
  if (digits.size() != 4) return false;
  const int value = std::stoi(digits);
  return value >= 1900 && value <= 2099;
}

bool in_range(const std::string& digits, int lo, int hi) {
  if (digits.empty() || digits.size() > 2) return false;
  const int value = std::stoi(digits);
  return value >= lo && value <= hi;
}

bool overlaps(const ByteRange& range, const std::vector<DateSpan>& spans) {
  return std::any_of(spans.begin(), spans.end(), [&](const DateSpan& s) {
    return range.begin < s.range.end && s.range.begin < range.end;
  });
}

}  // namespace

std::vector<DateSpan> find_dates(const std::string& text) {
  std::vector<DateSpan> spans;

  static const std::regex numeric(R"((\d{1,4})([./-])(\d{1,2})\2(\d{1,4}))");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), numeric);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const ByteRange range{static_cast<std::size_t>(m.position(0)),
                          static_cast<std::size_t>(m.position(0) + m.length(0))};
    if (!word_bounded(text, range.begin, range.end, false)) continue;
    const std::string a = m[1].str();
    const std::string b = m[3].str();
    const std::string c = m[4].str();
    const bool year_first =
        plausible_year(a) && in_range(b, 1, 12) && in_range(c, 1, 31);
    const bool year_last =
        plausible_year(c) && in_range(b, 1, 12) && in_range(a, 1, 31);
    if (!year_first && !year_last) continue;
    spans.push_back({range, DateKind::full_date});
  }

  static const std::regex month(
      "January|February|March|April|May|June|July|August|September|October|"
      "November|December");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), month);
       it != std::sregex_iterator(); ++it) {
    const ByteRange range{static_cast<std::size_t>(it->position(0)),
                          static_cast<std::size_t>(it->position(0) + it->length(0))};
    if (!word_bounded(text, range.begin, range.end, true)) continue;
    if (overlaps(range, spans)) continue;
    spans.push_back({range, DateKind::month});
  }

  static const std::regex year(R"((19|20)\d{2})");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), year);
       it != std::sregex_iterator(); ++it) {
    const ByteRange range{static_cast<std::size_t>(it->position(0)),
                          static_cast<std::size_t>(it->position(0) + it->length(0))};
    if (!word_bounded(text, range.begin, range.end, false)) continue;
    if (overlaps(range, spans)) continue;
    spans.push_back({range, DateKind::year});
  }

  std::sort(spans.begin(), spans.end(), [](const DateSpan& x, const DateSpan& y) {
    return x.range.begin < y.range.begin;
  });
  return spans;
}

std::string render_date(DateKind kind, const std::string& original,
                        std::chrono::year_month_day target) {
  const int y = static_cast<int>(target.year());
  const unsigned m = static_cast<unsigned>(target.month());
  const unsigned d = static_cast<unsigned>(target.day());
  switch (kind) {
    case DateKind::year:
      return std::to_string(y);
    case DateKind::month:
      return kMonthNames[m - 1];
    case DateKind::full_date:
      break;
  }
  char sep = '/';
  std::size_t lead = 0;
  while (lead < original.size() && std::isdigit(static_cast<unsigned char>(
                                       original[lead])) != 0) {
    ++lead;
  }
  if (lead < original.size()) sep = original[lead];
  char buf[16];
  if (lead == 4) {
    std::snprintf(buf, sizeof buf, "%04d%c%02u%c%02u", y, sep, m, sep, d);
  } else {
    std::snprintf(buf, sizeof buf, "%02u%c%02u%c%04d", d, sep, m, sep, y);
  }
  return buf;
}

std::chrono::year_month_day current_date() {
  const auto now = std::chrono::system_clock::now();
  return std::chrono::year_month_day{
      std::chrono::floor<std::chrono::days>(now)};
}

std::string replace_dates(const std::string& text,
                          std::chrono::year_month_day today, Rng& rng) {
  const std::vector<DateSpan> spans = find_dates(text);
  if (spans.empty()) return text;

  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (const DateSpan& span : spans) {
    out.append(text, cursor, span.range.begin - cursor);
    const int offset = 1 + static_cast<int>(rng.uniform_index(4));
    const std::chrono::year_month_day target{
        std::chrono::sys_days{today} + std::chrono::days{offset}};
    const std::string original =
        text.substr(span.range.begin, span.range.end - span.range.begin);
    out += render_date(span.kind, original, target);
    cursor = span.range.end;
  }
  out.append(text, cursor, text.size() - cursor);
  return out;
}

namespace {

bool title_cased(const std::string& text, const ByteRange& core) {
  if (core.end - core.begin < 2) return false;
  if (std::isupper(static_cast<unsigned char>(text[core.begin])) == 0) {
    return false;
  }
  for (std::size_t i = core.begin + 1; i < core.end; ++i) {
    if (std::islower(static_cast<unsigned char>(text[i])) == 0) return false;
  }
  return true;
}

}  // namespace

std::vector<EntityMention> find_entity_mentions(const std::string& text,
                                                const TokenizerOptions& opts) {
  const TokenSequence seq = tokenize(text, opts);

  // Quotes seen in text[0, i), to tell apart words inside a quotation.
  std::vector<std::uint32_t> quotes_before(text.size() + 1, 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    quotes_before[i + 1] = quotes_before[i] + (text[i] == '"' ? 1 : 0);
  }

  std::vector<EntityMention> mentions;
  for (const SentenceSpan& sentence : seq.sentences) {
    for (std::size_t i = sentence.begin; i < sentence.end; ++i) {
      if (i == sentence.begin) continue;  // sentence-initial caps are expected
      const ByteRange token = seq.offsets[i];
      const ByteRange core = strip_token_edges(text, token);
      if (!title_cased(text, core)) continue;
      bool after_open_quote = quotes_before[core.begin] % 2 == 1;
      for (std::size_t b = token.begin; b < core.begin; ++b) {
        if (text[b] == '"') after_open_quote = true;
      }
      if (after_open_quote) continue;

      std::string name(text, core.begin, core.end - core.begin);
      ByteRange range = core;
      std::size_t j = i;
      while (j + 1 < sentence.end) {
        // A token with trailing punctuation ends the run.
        if (strip_token_edges(text, seq.offsets[j]).end != seq.offsets[j].end) break;
        const ByteRange next = seq.offsets[j + 1];
        const ByteRange next_core = strip_token_edges(text, next);
        if (next_core.begin != next.begin) break;  // leading punctuation
        if (!title_cased(text, next_core)) break;
        name.push_back(' ');
        name.append(text, next_core.begin, next_core.end - next_core.begin);
        range.end = next_core.end;
        ++j;
      }
      mentions.push_back({std::move(name), range});
      i = j;
    }
  }
  return mentions;
}

namespace {

std::vector<std::string> split_words(const std::string& name) {
  std::vector<std::string> words;
  std::istringstream in(name);
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

bool is_archetype(const std::string& name, const UnigramModel& training,
                  const EntityPolicy& policy) {
  // The rarest word decides: a name stays replaceable while any part of it
  // is uncommon in the training corpus.
  std::uint64_t rarest = UINT64_MAX;
  for (const std::string& word : split_words(name)) {
    rarest = std::min(rarest, training.count(normalize(word)));
  }
  return rarest != UINT64_MAX && rarest > policy.archetype_threshold;
}

}  // namespace

std::vector<std::string> extract_entities(const std::string& text,
                                          const UnigramModel& training,
                                          const EntityPolicy& policy,
                                          const TokenizerOptions& opts) {
  std::vector<std::string> names;
  for (const EntityMention& mention : find_entity_mentions(text, opts)) {
    if (std::find(names.begin(), names.end(), mention.name) != names.end()) {
      continue;
    }
    if (is_archetype(mention.name, training, policy)) continue;
    names.push_back(mention.name);
  }
  return names;
}

double score_article(const Article& article, const UnigramModel& training) {
  const TokenSequence seq = tokenize(article.body);
  double sum = 0.0;
  std::size_t n = 0;
  // One extra vocabulary slot stands in for unseen words.
  const double denom =
      static_cast<double>(training.total() + training.distinct() + 1);
  for (const std::string& token : seq.tokens) {
    const std::string key = normalize(token);
    if (key.empty()) continue;
    sum += std::log(static_cast<double>(training.count(key) + 1) / denom);
    ++n;
  }
  if (n == 0) throw InputError("empty article");
  return sum / static_cast<double>(n);
}

std::size_t select_article(std::span<const Article> articles,
                           const UnigramModel& training) {
  std::size_t best = articles.size();
  double best_score = 0.0;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    double score;
    try {
      score = score_article(articles[i], training);
    } catch (const InputError&) {
      continue;
    }
    if (best == articles.size() || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  if (best == articles.size()) throw InputError("no articles");
  return best;
}

namespace {

// Inner spans of double-quoted stretches, pairing quotes alternately.
std::vector<ByteRange> quoted_spans(const std::string& text) {
  std::vector<ByteRange> spans;
  std::size_t open = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '"') continue;
    if (open == std::string::npos) {
      open = i;
    } else {
      spans.push_back({open + 1, i});
      open = std::string::npos;
    }
  }
  return spans;
}

std::size_t word_count(std::string_view s) {
  std::size_t count = 0;
  bool in_word = false;
  for (const char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

std::string apply_spans(const std::string& text,
                        const std::vector<std::pair<ByteRange, std::string>>&
                            replacements) {
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (const auto& [range, value] : replacements) {
    out.append(text, cursor, range.begin - cursor);
    out += value;
    cursor = range.end;
  }
  out.append(text, cursor, text.size() - cursor);
  return out;
}

}  // namespace

Article analyze_article(std::string title, std::string body,
                        const TokenizerOptions& opts) {
  Article article;
  article.title = std::move(title);
  article.body = std::move(body);

  std::vector<std::pair<std::string, std::size_t>> entities;
  for (const EntityMention& mention :
       find_entity_mentions(article.body, opts)) {
    const auto it =
        std::find_if(entities.begin(), entities.end(),
                     [&](const auto& e) { return e.first == mention.name; });
    if (it == entities.end()) {
      entities.emplace_back(mention.name, 1);
    } else {
      ++it->second;
    }
  }
  std::stable_sort(entities.begin(), entities.end(),
                   [](const auto& x, const auto& y) {
                     return x.second > y.second;
                   });
  article.entities = std::move(entities);

  for (const ByteRange& span : quoted_spans(article.body)) {
    std::string inner(article.body, span.begin, span.end - span.begin);
    if (std::any_of(inner.begin(), inner.end(), ascii_alnum)) {
      article.quotes.push_back(std::move(inner));
    }
  }
  return article;
}

std::string insert_news(const std::string& text, const Article& article,
                        const UnigramModel& training,
                        const EntityPolicy& policy, Rng& /*rng*/,
                        int min_quote_words, const TokenizerOptions& opts) {
  const std::vector<std::string> names =
      extract_entities(text, training, policy, opts);

  std::map<std::string, std::string> mapping;
  for (std::size_t i = 0; i < names.size() && i < article.entities.size();
       ++i) {
    mapping[names[i]] = article.entities[i].first;
  }

  std::string out = text;
  if (!mapping.empty()) {
    std::vector<std::pair<ByteRange, std::string>> replacements;
    for (const EntityMention& mention : find_entity_mentions(text, opts)) {
      const auto it = mapping.find(mention.name);
      if (it == mapping.end()) continue;
      replacements.emplace_back(mention.range, it->second);
    }
    out = apply_spans(text, replacements);
  }

  if (!article.quotes.empty()) {
    std::vector<std::pair<ByteRange, std::string>> replacements;
    std::size_t next_quote = 0;
    for (const ByteRange& span : quoted_spans(out)) {
      if (next_quote >= article.quotes.size()) break;
      const std::string_view inner =
          std::string_view(out).substr(span.begin, span.end - span.begin);
      if (min_quote_words < 0 ||
          word_count(inner) <= static_cast<std::size_t>(min_quote_words)) {
        continue;
      }
      replacements.emplace_back(span, article.quotes[next_quote++]);
    }
    if (!replacements.empty()) out = apply_spans(out, replacements);
  }
  return out;
}

DirectoryFetcher::DirectoryFetcher(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::vector<Article> DirectoryFetcher::fetch() {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) {
    throw FetchError("article directory not found: " + dir_.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<Article> articles;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw FetchError("cannot read article: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = sanitize_text(buffer.str());
    const std::size_t eol = content.find('\n');
    std::string title = content.substr(0, eol);
    std::string body =
        eol == std::string::npos ? std::string() : content.substr(eol + 1);
    const auto blank = [](const std::string& s) {
      return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0;
      });
    };
    if (blank(body)) continue;
    articles.push_back(analyze_article(std::move(title), std::move(body)));
  }
  return articles;
}

HttpFetcher::HttpFetcher(std::string url) : url_(std::move(url)) {}

std::vector<Article> HttpFetcher::fetch() {
  static const std::regex url_re(R"(^(https?)://([^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url_, m, url_re)) {
    throw FetchError("bad article url: " + url_);
  }
  if (m[1].str() == "https") {
    throw FetchError("https is not supported; use an http url or a directory");
  }
  const std::string host = m[2].str();
  const std::string path = m[3].matched ? m[3].str() : "/";

  httplib::Client client(("http://" + host).c_str());
  client.set_connection_timeout(10);
  client.set_read_timeout(10);
  const httplib::Result res = client.Get(path.c_str());
  if (!res) throw FetchError("fetch failed: " + url_);
  if (res->status != 200) {
    throw FetchError("fetch failed with status " +
                     std::to_string(res->status) + ": " + url_);
  }
  return {extract_article_from_html(res->body)};
}

namespace {

std::string strip_tags(const std::string& html) {
  std::string out;
  out.reserve(html.size());
  bool in_tag = false;
  for (const char c : html) {
    if (c == '<') {
      in_tag = true;
      out.push_back(' ');
    } else if (c == '>') {
      in_tag = false;
    } else if (!in_tag) {
      out.push_back(c);
    }
  }
  return out;
}

std::string decode_entities(const std::string& text) {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"&amp;", "&"}, {"&lt;", "<"},    {"&gt;", ">"},
      {"&quot;", "\""}, {"&#39;", "'"}, {"&nbsp;", " "},
  };
  std::string out = text;
  for (const auto& [from, to] : table) {
    std::size_t pos = 0;
    while ((pos = out.find(from, pos)) != std::string::npos) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  return out;
}

std::string collapse_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string drop_blocks(std::string html, const char* tag) {
  const std::regex block("<" + std::string(tag) + R"([^>]*>[\s\S]*?</)" + tag +
                             ">",
                         std::regex::icase);
  return std::regex_replace(html, block, " ");
}

}  // namespace

Article extract_article_from_html(const std::string& html) {
  std::string cleaned = drop_blocks(html, "script");
  cleaned = drop_blocks(cleaned, "style");

  std::string title;
  static const std::regex title_re(R"(<title[^>]*>([\s\S]*?)</title>)",
                                   std::regex::icase);
  static const std::regex h1_re(R"(<h1[^>]*>([\s\S]*?)</h1>)",
                                std::regex::icase);
  std::smatch m;
  if (std::regex_search(cleaned, m, title_re) ||
      std::regex_search(cleaned, m, h1_re)) {
    title = collapse_whitespace(decode_entities(strip_tags(m[1].str())));
  }
  if (title.empty()) title = "untitled";

  const std::string body = collapse_whitespace(
      decode_entities(strip_tags(sanitize_text(cleaned))));
  return analyze_article(std::move(title), std::move(body));
}

}  // namespace aphorist
