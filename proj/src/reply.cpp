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

#include "aphorist/reply.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "aphorist/error.hpp"

namespace aphorist {

ConversationUnigram conversation_unigram(std::span<const Turn> turns,
                                         const ReplyConfig& config,
                                         const TokenizerOptions& opts) {
  const std::size_t window = std::min(turns.size(), config.history_window);
  const std::size_t first = turns.size() - window;

  ConversationUnigram unigram;
  double user_factor = config.user_recency_start;
  // Walk newest to oldest so user turns fade with distance.
  for (std::size_t i = turns.size(); i-- > first;) {
    const Turn& turn = turns[i];
    double factor = 1.0;
    if (turn.author == Author::user) {
      factor = std::max(1.0, user_factor);
      user_factor -= 1.0;
    }
    for (const std::string& token : tokenize(turn.text, opts).tokens) {
      const std::string key = normalize(token);
      if (key.empty()) continue;
      unigram[key] += factor;
    }
  }
  return unigram;
}

double score_candidate(const std::string& candidate,
                       const ConversationUnigram& conversation,
                       const UnigramModel& training, std::size_t last_length,
                       const TokenizerOptions& opts) {
  std::set<std::string> words;
  for (const std::string& token : tokenize(candidate, opts).tokens) {
    const std::string key = normalize(token);
    if (!key.empty()) words.insert(key);
  }

  double overlap = 0.0;
  for (const std::string& word : words) {
    const auto it = conversation.find(word);
    if (it == conversation.end()) continue;
    overlap += it->second / static_cast<double>(training.count(word) + 1);
  }
  const double gap =
      candidate.size() > last_length
          ? static_cast<double>(candidate.size() - last_length)
          : static_cast<double>(last_length - candidate.size());
  return overlap / (1.0 + gap);
}

std::string best_reply(const CandidateGenerator& generate,
                       std::span<const Turn> turns,
                       const UnigramModel& training, const ReplyConfig& config,
                       Rng& rng, const TokenizerOptions& opts) {
  if (config.candidate_count == 0) throw InputError("candidate_count is zero");
  if (!generate) throw InputError("no candidate generator");

  std::vector<std::string> candidates;
  candidates.reserve(config.candidate_count);
  for (std::size_t i = 0; i < config.candidate_count; ++i) {
    candidates.push_back(generate(rng));
  }

  const ConversationUnigram conversation =
      conversation_unigram(turns, config, opts);
  const std::size_t last_length = turns.empty() ? 0 : turns.back().text.size();

  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double score = score_candidate(candidates[i], conversation, training,
                                         last_length, opts);
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  if (best_score <= 0.0) {
    best = rng.uniform_index(candidates.size());
  }
  return candidates[best];
}

}  // namespace aphorist
