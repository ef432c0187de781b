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

#include "aphorist/config.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aphorist/error.hpp"

namespace aphorist {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw InputError("bad value for config key '" + key + "': " + value);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(value, &pos);
    if (pos != value.size()) bad_value(key, value);
    return out;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t out = std::stoull(value, &pos);
    if (pos != value.size() || value.empty() || value[0] == '-') {
      bad_value(key, value);
    }
    return out;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int out = std::stoi(value, &pos);
    if (pos != value.size()) bad_value(key, value);
    return out;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    bad_value(key, value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::map<int, double> parse_weights(const std::string& key,
                                    const std::string& value) {
  std::map<int, double> weights;
  for (const std::string& item : split_list(value)) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) bad_value(key, value);
    const int order = parse_int(key, trim(item.substr(0, colon)));
    weights[order] = parse_double(key, trim(item.substr(colon + 1)));
  }
  return weights;
}

std::chrono::year_month_day parse_date(const std::string& key,
                                       const std::string& value) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (std::sscanf(value.c_str(), "%d-%u-%u", &y, &m, &d) != 3) {
    bad_value(key, value);
  }
  const std::chrono::year_month_day date{std::chrono::year{y},
                                         std::chrono::month{m},
                                         std::chrono::day{d}};
  if (!date.ok()) bad_value(key, value);
  return date;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

std::string format_number(double value) {
  char buf[40];
  if (value == static_cast<long long>(value)) {
    std::snprintf(buf, sizeof buf, "%.0f", value);
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", value);
  }
  return buf;
}

void require_exists(const std::string& path, const std::string& key,
                    bool directory) {
  if (path.empty()) return;
  std::error_code ec;
  const bool ok = directory ? std::filesystem::is_directory(path, ec)
                            : std::filesystem::exists(path, ec);
  if (!ok) {
    throw InputError("config key '" + key + "' points to a missing " +
                     (directory ? "directory" : "path") + ": " + path);
  }
}

}  // namespace

bool operator==(const InterpolationConfig& a, const InterpolationConfig& b) {
  return a.weights == b.weights && a.candidate_count == b.candidate_count &&
         a.max_tokens == b.max_tokens && a.retry_budget == b.retry_budget;
}

bool operator==(const PipelineConfig& a, const PipelineConfig& b) {
  return a.length_limit == b.length_limit &&
         a.min_quote_words == b.min_quote_words &&
         a.retry_on_unoriginal == b.retry_on_unoriginal;
}

bool operator==(const EntityPolicy& a, const EntityPolicy& b) {
  return a.archetype_threshold == b.archetype_threshold;
}

bool operator==(const TemplateConfig& a, const TemplateConfig& b) {
  return a.min_freq_percentile == b.min_freq_percentile &&
         a.replacement_factor == b.replacement_factor &&
         a.context_lines == b.context_lines;
}

bool operator==(const ReplyConfig& a, const ReplyConfig& b) {
  return a.candidate_count == b.candidate_count &&
         a.history_window == b.history_window &&
         a.user_recency_start == b.user_recency_start;
}

bool AppConfig::operator==(const AppConfig& other) const {
  return training_corpus == other.training_corpus &&
         base_corpus == other.base_corpus &&
         content_corpus == other.content_corpus &&
         manifest == other.manifest && model_dir == other.model_dir &&
         lexicon == other.lexicon && interpolation == other.interpolation &&
         post == other.post && entity_policy == other.entity_policy &&
         templates == other.templates && reply == other.reply &&
         max_attempts == other.max_attempts &&
         unigram_source == other.unigram_source &&
         article_dir == other.article_dir && article_url == other.article_url &&
         seed == other.seed && today == other.today;
}

AppConfig AppConfig::parse(const std::string& text,
                           const std::string& base_dir) {
  AppConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) +
                       " is not 'key = value': " + stripped);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "training_corpus") {
      config.training_corpus.clear();
      for (const std::string& path : split_list(value)) {
        config.training_corpus.push_back(resolve(base_dir, path));
      }
    } else if (key == "base_corpus") {
      config.base_corpus = resolve(base_dir, value);
    } else if (key == "content_corpus") {
      config.content_corpus = resolve(base_dir, value);
    } else if (key == "manifest") {
      config.manifest = resolve(base_dir, value);
    } else if (key == "model_dir") {
      config.model_dir = resolve(base_dir, value);
    } else if (key == "lexicon") {
      config.lexicon = resolve(base_dir, value);
    } else if (key == "weights") {
      config.interpolation.weights = parse_weights(key, value);
    } else if (key == "candidate_pool") {
      config.interpolation.candidate_count = parse_int(key, value);
    } else if (key == "max_tokens") {
      config.interpolation.max_tokens = parse_int(key, value);
    } else if (key == "retry_budget") {
      config.interpolation.retry_budget = parse_int(key, value);
    } else if (key == "length_limit") {
      config.post.length_limit = parse_u64(key, value);
    } else if (key == "min_quote_words") {
      config.post.min_quote_words = parse_int(key, value);
    } else if (key == "retry_on_unoriginal") {
      config.post.retry_on_unoriginal = parse_bool(key, value);
    } else if (key == "max_attempts") {
      config.max_attempts = parse_u64(key, value);
    } else if (key == "archetype_threshold") {
      config.entity_policy.archetype_threshold = parse_u64(key, value);
    } else if (key == "min_freq_percentile") {
      config.templates.min_freq_percentile = parse_double(key, value);
    } else if (key == "replacement_factor") {
      config.templates.replacement_factor = parse_u64(key, value);
    } else if (key == "context_lines") {
      config.templates.context_lines = parse_u64(key, value);
    } else if (key == "reply_candidates") {
      config.reply.candidate_count = parse_u64(key, value);
    } else if (key == "history_window") {
      config.reply.history_window = parse_u64(key, value);
    } else if (key == "user_recency_start") {
      config.reply.user_recency_start = parse_double(key, value);
    } else if (key == "unigram_source") {
      if (value != "auto" && value != "training") bad_value(key, value);
      config.unigram_source = value;
    } else if (key == "article_dir") {
      config.article_dir = resolve(base_dir, value);
    } else if (key == "article_url") {
      config.article_url = value;
    } else if (key == "seed") {
      config.seed = parse_u64(key, value);
    } else if (key == "today") {
      config.today = parse_date(key, value);
    } else {
      throw InputError("unknown config key '" + key + "' on line " +
                       std::to_string(line_no));
    }
  }

  config.interpolation.validate();
  config.templates.validate();
  if (config.post.length_limit == 0) {
    throw InputError("length_limit must be positive");
  }
  if (config.entity_policy.archetype_threshold == 0) {
    throw InputError("archetype_threshold must be positive");
  }
  if (config.reply.candidate_count == 0) {
    throw InputError("reply_candidates must be positive");
  }
  return config;
}

AppConfig AppConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string dir = std::filesystem::path(path).parent_path().string();
  AppConfig config = parse(buffer.str(), dir);
  config.check_paths();
  return config;
}

std::string AppConfig::serialize() const {
  std::ostringstream out;
  if (!training_corpus.empty()) {
    out << "training_corpus = ";
    for (std::size_t i = 0; i < training_corpus.size(); ++i) {
      if (i > 0) out << ", ";
      out << training_corpus[i];
    }
    out << '\n';
  }
  if (!base_corpus.empty()) out << "base_corpus = " << base_corpus << '\n';
  if (!content_corpus.empty()) {
    out << "content_corpus = " << content_corpus << '\n';
  }
  if (!manifest.empty()) out << "manifest = " << manifest << '\n';
  out << "model_dir = " << model_dir << '\n';
  if (!lexicon.empty()) out << "lexicon = " << lexicon << '\n';

  out << "weights = ";
  bool first = true;
  for (const auto& [order, weight] : interpolation.weights) {
    if (!first) out << ", ";
    first = false;
    out << order << ':' << format_number(weight);
  }
  out << '\n';
  out << "candidate_pool = " << interpolation.candidate_count << '\n';
  out << "max_tokens = " << interpolation.max_tokens << '\n';
  out << "retry_budget = " << interpolation.retry_budget << '\n';
  out << "length_limit = " << post.length_limit << '\n';
  out << "min_quote_words = " << post.min_quote_words << '\n';
  out << "retry_on_unoriginal = " << (post.retry_on_unoriginal ? "true" : "false")
      << '\n';
  out << "max_attempts = " << max_attempts << '\n';
  out << "archetype_threshold = " << entity_policy.archetype_threshold << '\n';
  out << "min_freq_percentile = " << format_number(templates.min_freq_percentile)
      << '\n';
  out << "replacement_factor = " << templates.replacement_factor << '\n';
  out << "context_lines = " << templates.context_lines << '\n';
  out << "reply_candidates = " << reply.candidate_count << '\n';
  out << "history_window = " << reply.history_window << '\n';
  out << "user_recency_start = " << format_number(reply.user_recency_start)
      << '\n';
  out << "unigram_source = " << unigram_source << '\n';
  if (!article_dir.empty()) out << "article_dir = " << article_dir << '\n';
  if (!article_url.empty()) out << "article_url = " << article_url << '\n';
  if (seed) out << "seed = " << *seed << '\n';
  if (today) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u",
                  static_cast<int>(today->year()),
                  static_cast<unsigned>(today->month()),
                  static_cast<unsigned>(today->day()));
    out << "today = " << buf << '\n';
  }
  return out.str();
}

void AppConfig::check_paths() const {
  for (const std::string& path : training_corpus) {
    require_exists(path, "training_corpus", false);
  }
  require_exists(base_corpus, "base_corpus", false);
  require_exists(content_corpus, "content_corpus", false);
  require_exists(manifest, "manifest", false);
  require_exists(lexicon, "lexicon", false);
  require_exists(article_dir, "article_dir", true);
}

}  // namespace aphorist
