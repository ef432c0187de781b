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

#include "aphorist/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aphorist/error.hpp"

namespace aphorist {

namespace detail {
void throw_no_viable_candidate() { throw Error("no viable candidate"); }
}  // namespace detail

Normalizer default_normalizer() {
  return {"alnum_lower", [](std::string_view t) { return normalize(t); }};
}

NormalizerRegistry default_normalizer_registry() {
  NormalizerRegistry registry;
  Normalizer def = default_normalizer();
  registry.emplace(def.id, std::move(def));
  return registry;
}

int InterpolationConfig::min_order() const {
  for (const auto& [order, w] : weights) {
    if (w > 0.0) return order;
  }
  throw InputError("no positive interpolation weight");
}

int InterpolationConfig::max_order() const {
  int best = 0;
  for (const auto& [order, w] : weights) {
    if (w > 0.0) best = order;
  }
  if (best == 0) throw InputError("no positive interpolation weight");
  return best;
}

void InterpolationConfig::validate() const {
  bool any = false;
  for (const auto& [order, w] : weights) {
    if (order < 1) throw InputError("interpolation order must be >= 1");
    if (w < 0.0) throw InputError("interpolation weight must be >= 0");
    any = any || w > 0.0;
  }
  if (!any) throw InputError("no positive interpolation weight");
  if (candidate_count < 1) throw InputError("candidate_count must be >= 1");
  if (max_tokens < 1) throw InputError("max_tokens must be >= 1");
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

Influencer levenshtein_influencer(double strength) {
  if (strength <= 0.0) throw InputError("influencer strength must be > 0");
  return [strength](const Successor& candidate,
                    std::span<const std::string> history) {
    if (!candidate.has_value() || history.empty()) return 1.0;
    const std::string a = normalize(*candidate);
    const std::string b = normalize(history.back());
    const std::size_t d = levenshtein(a, b);
    return 1.0 + strength / (1.0 + static_cast<double>(d));
  };
}

namespace {

struct NormalizedToken {
  std::string surface;
  std::string key;
};

// Sentence tokens with empty normalizations dropped, per the key-vs-surface
// split: punctuation-only tokens never enter contexts or successor slots.
std::vector<NormalizedToken> ngram_stream(std::span<const std::string> tokens,
                                          const Normalizer& normalizer) {
  std::vector<NormalizedToken> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    std::string key = normalizer.fn(token);
    if (!key.empty()) out.push_back({token, std::move(key)});
  }
  return out;
}

std::string join_keys(std::span<const NormalizedToken> stream,
                      std::size_t begin, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) out.push_back(' ');
    out += stream[begin + i].key;
  }
  return out;
}

}  // namespace

NGramTable train(const Corpus& corpus, int order, const Normalizer& normalizer,
                 const TokenizerOptions& opts) {
  if (corpus.empty()) throw InputError("empty corpus");
  if (order < 1) throw InputError("order must be >= 1");
  NGramTable table;
  table.order = order;
  table.normalizer = normalizer;
  const auto j = static_cast<std::size_t>(order);
  for (const auto& entry : corpus.entries) {
    const TokenSequence seq = tokenize(entry.text, opts);
    for (const auto& span : seq.sentences) {
      const std::span<const std::string> sentence{
          seq.tokens.data() + span.begin, span.end - span.begin};
      const auto stream = ngram_stream(sentence, normalizer);
      if (stream.size() < j) continue;
      std::vector<std::string> start;
      start.reserve(j);
      for (std::size_t i = 0; i < j; ++i) start.push_back(stream[i].surface);
      table.starts.push_back(std::move(start));
      for (std::size_t i = j; i <= stream.size(); ++i) {
        const std::string ctx = join_keys(stream, i - j, j);
        Successor succ = i < stream.size() ? Successor(stream[i].surface)
                                           : std::nullopt;
        table.transitions[ctx][std::move(succ)] += entry.weight_multiplier;
      }
    }
  }
  if (table.transitions.empty()) {
    throw InputError("corpus too small for order " + std::to_string(order));
  }
  return table;
}

Distribution next_distribution(const std::map<int, NGramTable>& tables,
                               const InterpolationConfig& config,
                               const Influencer& influence,
                               std::span<const std::string> history) {
  config.validate();
  if (history.empty()) throw InputError("history must contain at least one token");

  // Normalized history may differ per table, so the filtered key stream is
  // built once per distinct normalizer id.
  struct Match {
    double weight;
    const SuccessorCounts* successors;
    double total;
  };
  std::vector<Match> matches;
  std::map<std::string, std::vector<std::string>> keyed_histories;

  for (const auto& [order, weight] : config.weights) {
    if (weight <= 0.0) continue;
    const auto table_it = tables.find(order);
    if (table_it == tables.end()) {
      throw InputError("no trained table for order " + std::to_string(order));
    }
    const NGramTable& table = table_it->second;
    if (!table.normalizer.fn) {
      throw InputError("table for order " + std::to_string(order) +
                       " has no normalizer function bound");
    }
    auto keyed = keyed_histories.find(table.normalizer.id);
    if (keyed == keyed_histories.end()) {
      std::vector<std::string> keys;
      for (const auto& token : history) {
        std::string k = table.normalizer.fn(token);
        if (!k.empty()) keys.push_back(std::move(k));
      }
      keyed = keyed_histories.emplace(table.normalizer.id, std::move(keys)).first;
    }
    const auto& keys = keyed->second;
    const auto j = static_cast<std::size_t>(order);
    if (keys.size() < j) continue;
    std::string ctx;
    for (std::size_t i = keys.size() - j; i < keys.size(); ++i) {
      if (!ctx.empty()) ctx.push_back(' ');
      ctx += keys[i];
    }
    const auto hit = table.transitions.find(ctx);
    if (hit == table.transitions.end()) continue;
    double total = 0.0;
    for (const auto& [succ, count] : hit->second) total += count;
    matches.push_back({weight, &hit->second, total});
  }

  if (matches.empty()) throw DeadEndError();

  Distribution scores;
  if (matches.size() == 1) {
    // One matching order: normalization cancels the per-order 1/total factor,
    // so raw weighted counts keep the final ratios exact.
    for (const auto& [succ, count] : *matches[0].successors) {
      scores[succ] = matches[0].weight * count;
    }
  } else {
    for (const auto& match : matches) {
      for (const auto& [succ, count] : *match.successors) {
        scores[succ] += match.weight * (count / match.total);
      }
    }
  }

  if (influence) {
    for (auto& [succ, score] : scores) {
      const double factor = influence(succ, history);
      if (!(factor > 0.0)) throw Error("influencer factor must be > 0");
      score *= factor;
    }
  }

  double sum = 0.0;
  for (const auto& [succ, score] : scores) sum += score;
  if (sum <= 0.0) throw DeadEndError();
  for (auto& [succ, score] : scores) score /= sum;
  return scores;
}

const Successor& roulette_select(const Distribution& weighted, Rng& rng) {
  double total = 0.0;
  for (const auto& [succ, w] : weighted) {
    if (w < 0.0) detail::throw_no_viable_candidate();
    total += w;
  }
  if (weighted.empty() || total <= 0.0) detail::throw_no_viable_candidate();
  const double u = rng.uniform_real() * total;
  double acc = 0.0;
  for (const auto& [succ, w] : weighted) {
    acc += w;
    if (u < acc) return succ;
  }
  return std::prev(weighted.end())->first;
}

namespace {

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

}  // namespace

std::string generate(const std::map<int, NGramTable>& tables,
                     const InterpolationConfig& config,
                     const Influencer& influence, Rng& rng) {
  config.validate();
  const int seed_order = config.min_order();
  const auto seed_it = tables.find(seed_order);
  if (seed_it == tables.end()) {
    throw InputError("no trained table for order " + std::to_string(seed_order));
  }
  const auto& starts = seed_it->second.starts;
  if (starts.empty()) throw GenerationError("generation failed: no sentence starts");

  for (int attempt = 0; attempt < config.retry_budget; ++attempt) {
    std::vector<std::string> history = starts[rng.uniform_index(starts.size())];
    bool dead = false;
    while (static_cast<int>(history.size()) < config.max_tokens) {
      Distribution dist;
      try {
        dist = next_distribution(tables, config, influence, history);
      } catch (const DeadEndError&) {
        dead = true;
        break;
      }
      const Successor& next = roulette_select(dist, rng);
      if (!next.has_value()) return join_tokens(history);
      history.push_back(*next);
    }
    if (!dead) return join_tokens(history);  // max_tokens reached
  }
  throw GenerationError("generation failed");
}

std::vector<std::string> generate_candidates(
    const std::map<int, NGramTable>& tables, const InterpolationConfig& config,
    const Influencer& influence, Rng& rng, int count) {
  if (count < 1) throw InputError("count must be >= 1");
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    try {
      out.push_back(generate(tables, config, influence, rng));
    } catch (const GenerationError&) {
      // skipped; at least one candidate must survive
    }
  }
  if (out.empty()) throw GenerationError("generation failed for all candidates");
  return out;
}

namespace {

// Integral counts print as integers so retrained files stay byte-identical;
// %.17g round-trips any other double exactly.
std::string format_count(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr const char* kModelMagic = "aphorist-ngram 1";
constexpr const char* kUnigramMagic = "aphorist-unigram 1";

}  // namespace

void serialize(const NGramTable& table, std::ostream& out) {
  out << kModelMagic << '\n';
  out << "order " << table.order << '\n';
  out << "normalizer " << table.normalizer.id << '\n';
  out << "starts " << table.starts.size() << '\n';
  for (const auto& start : table.starts) out << join_tokens(start) << '\n';
  out << "contexts " << table.transitions.size() << '\n';
  for (const auto& [ctx, successors] : table.transitions) {
    out << "c " << ctx << '\n';
    for (const auto& [succ, count] : successors) {
      if (succ.has_value()) {
        out << "w " << format_count(count) << ' ' << *succ << '\n';
      } else {
        out << "e " << format_count(count) << '\n';
      }
    }
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream iss(line);
  std::string field;
  while (iss >> field) out.push_back(field);
  return out;
}

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError(std::string("truncated model file: expected ") + what);
  }
  return line;
}

}  // namespace

NGramTable deserialize(std::istream& in, const NormalizerRegistry& registry) {
  if (expect_line(in, "magic") != kModelMagic) {
    throw InputError("not an aphorist n-gram model (bad magic)");
  }
  NGramTable table;
  {
    std::istringstream iss(expect_line(in, "order"));
    std::string key;
    iss >> key >> table.order;
    if (key != "order" || table.order < 1) throw InputError("bad order line");
  }
  {
    const std::string line = expect_line(in, "normalizer");
    if (line.rfind("normalizer ", 0) != 0) throw InputError("bad normalizer line");
    const std::string id = line.substr(11);
    const auto it = registry.find(id);
    if (it == registry.end()) throw InputError("unknown normalizer id: " + id);
    table.normalizer = it->second;
  }
  std::size_t n_starts = 0;
  {
    std::istringstream iss(expect_line(in, "starts"));
    std::string key;
    iss >> key >> n_starts;
    if (key != "starts") throw InputError("bad starts line");
  }
  for (std::size_t i = 0; i < n_starts; ++i) {
    auto fields = split_fields(expect_line(in, "start tuple"));
    if (fields.size() != static_cast<std::size_t>(table.order)) {
      throw InputError("start tuple length does not match order");
    }
    table.starts.push_back(std::move(fields));
  }
  std::size_t n_contexts = 0;
  {
    std::istringstream iss(expect_line(in, "contexts"));
    std::string key;
    iss >> key >> n_contexts;
    if (key != "contexts") throw InputError("bad contexts line");
  }
  SuccessorCounts* current = nullptr;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("c ", 0) == 0) {
      current = &table.transitions[line.substr(2)];
    } else if (line.rfind("w ", 0) == 0 || line.rfind("e ", 0) == 0) {
      if (current == nullptr) throw InputError("successor before any context");
      std::istringstream iss(line);
      std::string kind;
      double count = 0.0;
      iss >> kind >> count;
      if (!iss || count <= 0.0) throw InputError("bad successor count");
      if (kind == "w") {
        std::string token;
        iss >> token;
        if (token.empty()) throw InputError("missing successor token");
        (*current)[Successor(std::move(token))] = count;
      } else {
        (*current)[std::nullopt] = count;
      }
    } else {
      throw InputError("unrecognized model line: " + line);
    }
  }
  if (table.transitions.size() != n_contexts) {
    throw InputError("context count mismatch in model file");
  }
  return table;
}

void save_table(const NGramTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file: " + path);
  serialize(table, out);
  if (!out) throw InputError("failed writing model file: " + path);
}

NGramTable load_table(const std::string& path,
                      const NormalizerRegistry& registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read model file: " + path);
  return deserialize(in, registry);
}

void save_unigram(const UnigramModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write unigram file: " + path);
  out << kUnigramMagic << '\n' << "words " << model.distinct() << '\n';
  for (const auto& [word, count] : model.counts()) {
    out << count << ' ' << word << '\n';
  }
  if (!out) throw InputError("failed writing unigram file: " + path);
}

UnigramModel load_unigram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read unigram file: " + path);
  if (expect_line(in, "magic") != kUnigramMagic) {
    throw InputError("not an aphorist unigram file (bad magic)");
  }
  std::size_t n_words = 0;
  {
    std::istringstream iss(expect_line(in, "words"));
    std::string key;
    iss >> key >> n_words;
    if (key != "words") throw InputError("bad words line");
  }
  UnigramModel model;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream iss(line);
    std::uint64_t count = 0;
    std::string word;
    iss >> count >> word;
    if (!iss || word.empty()) throw InputError("bad unigram line: " + line);
    model.add(word, count);
  }
  if (model.distinct() != n_words) {
    throw InputError("word count mismatch in unigram file");
  }
  return model;
}

}  // namespace aphorist
