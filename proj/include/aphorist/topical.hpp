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

#ifndef APHORIST_TOPICAL_HPP_
#define APHORIST_TOPICAL_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aphorist/corpus.hpp"
#include "aphorist/rng.hpp"

namespace aphorist {

// Freshens a text by swapping stale material for material taken from a news
// article: dates move to the near future, mid-sentence capitalized names are
// mapped onto the article's names, and long quotations are exchanged for the
// article's quotations.

enum class DateKind { full_date, month, year };

struct DateSpan {
  ByteRange range;
  DateKind kind;
};

struct EntityMention {
  std::string name;
  ByteRange range;
};

struct Article {
  std::string title;
  std::string body;
  // Names found in the body with their occurrence counts, most frequent
  // first; ties keep first-appearance order.
  std::vector<std::pair<std::string, std::size_t>> entities;
  std::vector<std::string> quotes;  // inner text of double-quoted spans
};

struct EntityPolicy {
  // Names occurring more often than this in the training corpus are treated
  // as archetypes and never replaced.
  std::size_t archetype_threshold = 10;
};

// Date spans in the text, in order of appearance and non-overlapping.
// Recognized forms: numeric triples such as 12/03/2017 or 2017-03-12 (also
// with '.'), capitalized month names, and standalone years 1900-2099. All
// require non-alphanumeric surroundings, so "room 1996b" stays untouched.
std::vector<DateSpan> find_dates(const std::string& text);

// Renders the given calendar date in the shape of the original span: a year
// span yields the year, a month span the month name, and a numeric full date
// keeps the original separator and year position.
std::string render_date(DateKind kind, const std::string& original,
                        std::chrono::year_month_day target);

// Replaces every date span with the matching part of a date one to four days
// past `today`, each span drawing its own offset.
std::string replace_dates(const std::string& text,
                          std::chrono::year_month_day today, Rng& rng);

// Today's UTC calendar date from the system clock.
std::chrono::year_month_day current_date();

// Every occurrence of a capitalized name in an unexpected spot: not the first
// word of a sentence and not right after an opening quote. Consecutive
// capitalized words merge into one mention.
std::vector<EntityMention> find_entity_mentions(
    const std::string& text, const TokenizerOptions& opts = {});

// Distinct mention names in first-appearance order, minus archetypes: a name
// is kept only while each of its words stays within the policy threshold in
// the training counts.
std::vector<std::string> extract_entities(const std::string& text,
                                          const UnigramModel& training,
                                          const EntityPolicy& policy,
                                          const TokenizerOptions& opts = {});

// Mean add-one smoothed log-likelihood of the body tokens under the training
// unigram counts. Higher means closer to the training vocabulary.
double score_article(const Article& article, const UnigramModel& training);

// Index of the best-scoring article; ties go to the earliest.
std::size_t select_article(std::span<const Article> articles,
                           const UnigramModel& training);

// Builds an Article from raw title and body: collects entity mentions with
// counts and double-quoted spans from the body.
Article analyze_article(std::string title, std::string body,
                        const TokenizerOptions& opts = {});

// Entity and quote substitution, in that order. Replaceable names map onto
// the article's names by descending article frequency, first encountered
// first, each source name always to the same target. Quoted spans of more
// than min_quote_words words are exchanged for the article's quotes
// sequentially.
std::string insert_news(const std::string& text, const Article& article,
                        const UnigramModel& training,
                        const EntityPolicy& policy, Rng& rng,
                        int min_quote_words = 3,
                        const TokenizerOptions& opts = {});

class ArticleFetcher {
 public:
  virtual ~ArticleFetcher() = default;
  virtual std::vector<Article> fetch() = 0;
};

// Reads one article per regular file in a directory, sorted by filename.
// First line is the title, the remainder the body.
class DirectoryFetcher : public ArticleFetcher {
 public:
  explicit DirectoryFetcher(std::filesystem::path dir);
  std::vector<Article> fetch() override;

 private:
  std::filesystem::path dir_;
};

// Fetches one page over HTTP and runs the minimal HTML extractor on it.
class HttpFetcher : public ArticleFetcher {
 public:
  explicit HttpFetcher(std::string url);
  std::vector<Article> fetch() override;

 private:
  std::string url_;
};

// Minimal extractor: <title> or first <h1> becomes the title, tag-stripped
// text the body.
Article extract_article_from_html(const std::string& html);

}  // namespace aphorist

#endif  // APHORIST_TOPICAL_HPP_
