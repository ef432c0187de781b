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

#ifndef APHORIST_REPLY_HPP_
#define APHORIST_REPLY_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>

#include "aphorist/corpus.hpp"
#include "aphorist/rng.hpp"

namespace aphorist {

// Picks the best of many generated candidates as a reply: candidates sharing
// rare words with the recent conversation win, with a preference for answers
// about as long as the message being answered.

enum class Author { bot, user };

struct Turn {
  Author author = Author::user;
  std::string text;
};

struct ReplyConfig {
  std::size_t candidate_count = 1000;
  std::size_t history_window = 10;  // older turns contribute nothing
  // The most recent user turn weighs this much; each earlier user turn weighs
  // one less, never below one. Bot turns always weigh one.
  double user_recency_start = 5.0;
};

// Normalized word -> accumulated weight over the recent conversation.
using ConversationUnigram = std::map<std::string, double>;

ConversationUnigram conversation_unigram(std::span<const Turn> turns,
                                         const ReplyConfig& config = {},
                                         const TokenizerOptions& opts = {});

// Sum of conversation weight over training count (add-one) for each distinct
// candidate word found in the conversation, damped by the character-length
// gap to the turn being answered.
double score_candidate(const std::string& candidate,
                       const ConversationUnigram& conversation,
                       const UnigramModel& training, std::size_t last_length,
                       const TokenizerOptions& opts = {});

using CandidateGenerator = std::function<std::string(Rng&)>;

// Generates candidate_count texts, scores each against the conversation, and
// returns the best; ties keep the earliest. When nothing overlaps the
// conversation at all, picks uniformly.
std::string best_reply(const CandidateGenerator& generate,
                       std::span<const Turn> turns,
                       const UnigramModel& training, const ReplyConfig& config,
                       Rng& rng, const TokenizerOptions& opts = {});

}  // namespace aphorist

#endif  // APHORIST_REPLY_HPP_
