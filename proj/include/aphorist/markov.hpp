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

#ifndef APHORIST_MARKOV_HPP_
#define APHORIST_MARKOV_HPP_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aphorist/corpus.hpp"
#include "aphorist/rng.hpp"

namespace aphorist {

/// A successor in a transition table; nullopt marks end of sentence.
using Successor = std::optional<std::string>;
using SuccessorCounts = std::map<Successor, double>;
using Distribution = std::map<Successor, double>;

/// Key normalizer applied to context tokens before lookup. The id is stored
/// in serialized models so tables can be reloaded with the right function.
struct Normalizer {
  std::string id;
  std::function<std::string(std::string_view)> fn;
};

/// Default normalizer: lowercase, ASCII non-alphanumerics removed.
Normalizer default_normalizer();

/// Known normalizers by id, used to rebind functions when loading models.
using NormalizerRegistry = std::map<std::string, Normalizer>;
NormalizerRegistry default_normalizer_registry();

/// Order-j transition table over normalized contexts and surface successors.
struct NGramTable {
  int order = 1;
  Normalizer normalizer;  // the function travels with the table in memory
  // normalized j-token context (space-joined) -> surface successor counts
  std::map<std::string, SuccessorCounts> transitions;
  // surface token tuples (length = order) seen at sentence starts, one entry
  // per occurrence
  std::vector<std::vector<std::string>> starts;

  // The normalizer function itself is not comparable; equal ids suffice.
  bool operator==(const NGramTable& other) const {
    return order == other.order && normalizer.id == other.normalizer.id &&
           transitions == other.transitions && starts == other.starts;
  }
};

struct InterpolationConfig {
  // order -> weight, at least one positive. The default mix gives the high
  // orders a strong lead so outputs stay grammatical, with just enough
  // low-order mass to escape verbatim reproduction.
  std::map<int, double> weights = {{2, 1}, {3, 200}, {4, 400}};
  int candidate_count = 10;
  int max_tokens = 120;
  int retry_budget = 10;

  int min_order() const;  // smallest order with positive weight
  int max_order() const;  // largest order with positive weight
  void validate() const;
};

/// Multiplicative re-weighting of a candidate successor given the generated
/// history. Must return a factor > 0.
using Influencer =
    std::function<double(const Successor&, std::span<const std::string>)>;

/// Classic edit distance; used by the bundled phonetic-style influencer.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Boosts candidates close in edit distance to the previously emitted token:
/// factor = 1 + strength / (1 + distance). End-of-sentence gets factor 1.
Influencer levenshtein_influencer(double strength);

/// Trains an order-j table: for every position of every training sentence the
/// (normalized j-context -> surface successor) count grows by the entry's
/// weight multiplier; end of sentence is a valid successor. Tokens whose
/// normalization is empty are dropped from the n-gram stream.
NGramTable train(const Corpus& corpus, int order,
                 const Normalizer& normalizer = default_normalizer(),
                 const TokenizerOptions& opts = {});

/// Interpolated next-token distribution over realized candidates:
/// score(v) = sum_j w_j * p_j(v | last j normalized history tokens) * f(v),
/// normalized to sum to 1. Orders whose context is unseen contribute 0.
/// Throws DeadEndError when no order matches.
Distribution next_distribution(const std::map<int, NGramTable>& tables,
                               const InterpolationConfig& config,
                               const Influencer& influence,
                               std::span<const std::string> history);

/// Samples proportionally to weight. Throws on empty or all-zero weights.
template <typename T>
const T& roulette_select(const std::vector<std::pair<T, double>>& weighted,
                         Rng& rng);

/// Weighted sampling over a Distribution (or any ordered successor map).
const Successor& roulette_select(const Distribution& weighted, Rng& rng);

/// Generates one candidate text: seeds with a uniformly chosen sentence start
/// of the smallest positive-weight order, then samples until end-of-sentence
/// or max_tokens. Dead ends restart generation within the retry budget.
std::string generate(const std::map<int, NGramTable>& tables,
                     const InterpolationConfig& config,
                     const Influencer& influence, Rng& rng);

/// `count` independent texts from generate(); failed attempts are skipped.
/// Throws GenerationError when every attempt fails.
std::vector<std::string> generate_candidates(
    const std::map<int, NGramTable>& tables, const InterpolationConfig& config,
    const Influencer& influence, Rng& rng, int count);

/// Versioned plain-text model serialization; round-trip is lossless and
/// output is byte-stable for equal tables. Loading resolves the stored
/// normalizer id against the registry and fails on unknown ids.
void serialize(const NGramTable& table, std::ostream& out);
NGramTable deserialize(std::istream& in,
                       const NormalizerRegistry& registry =
                           default_normalizer_registry());
void save_table(const NGramTable& table, const std::string& path);
NGramTable load_table(const std::string& path,
                      const NormalizerRegistry& registry =
                          default_normalizer_registry());

/// Unigram model file ("count word" lines, sorted by word).
void save_unigram(const UnigramModel& model, const std::string& path);
UnigramModel load_unigram(const std::string& path);

// --- implementation of the template ---

namespace detail {
[[noreturn]] void throw_no_viable_candidate();
}

template <typename T>
const T& roulette_select(const std::vector<std::pair<T, double>>& weighted,
                         Rng& rng) {
  double total = 0.0;
  for (const auto& [item, w] : weighted) {
    if (w < 0.0) detail::throw_no_viable_candidate();
    total += w;
  }
  if (weighted.empty() || total <= 0.0) detail::throw_no_viable_candidate();
  const double u = rng.uniform_real() * total;
  double acc = 0.0;
  for (const auto& [item, w] : weighted) {
    acc += w;
    if (u < acc) return item;
  }
  return weighted.back().first;  // guards against accumulated rounding
}

}  // namespace aphorist

#endif  // APHORIST_MARKOV_HPP_
