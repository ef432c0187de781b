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

#include <string>
#include <vector>

#include "aphorist/error.hpp"
#include "aphorist/postprocess.hpp"
#include "aphorist/rng.hpp"
#include "doctest.h"

using namespace aphorist;

namespace {

// Each mark type must balance on its own: parentheses and brackets are
// repaired in separate passes, so cross-type nesting is not guaranteed.
bool balanced(const std::string& text) {
  int parens = 0;
  int brackets = 0;
  int quotes = 0;
  for (const char c : text) {
    if (c == '(') ++parens;
    if (c == ')' && --parens < 0) return false;
    if (c == '[') ++brackets;
    if (c == ']' && --brackets < 0) return false;
    if (c == '"') ++quotes;
  }
  return parens == 0 && brackets == 0 && quotes % 2 == 0;
}

}  // namespace

TEST_CASE("prefer_short returns a candidate from the pool") {
  Rng rng(11);
  const std::vector<std::string> one = {"only"};
  CHECK(prefer_short(one, rng) == "only");

  const std::vector<std::string> none;
  CHECK_THROWS_AS(prefer_short(none, rng), Error);
}

TEST_CASE("prefer_short favors shorter candidates") {
  Rng rng(5);
  const std::vector<std::string> pool = {"ab", "abcdefgh"};
  int short_picks = 0;
  for (int i = 0; i < 500; ++i) {
    if (prefer_short(pool, rng) == "ab") ++short_picks;
  }
  // Weights 1/2 vs 1/8 give the short one 80%; allow generous slack here.
  CHECK(short_picks > 300);
}

TEST_CASE("shorten leaves fitting text alone") {
  const ShortenResult r = shorten("Short enough.", 140);
  CHECK(r.text == "Short enough.");
  CHECK_FALSE(r.over_limit);
}

TEST_CASE("shorten flags a single over-long sentence") {
  const std::string text = "One very long sentence with no break at all.";
  const ShortenResult r = shorten(text, 10);
  CHECK(r.text == text);
  CHECK(r.over_limit);
}

TEST_CASE("shorten keeps first and last, re-adding middles greedily") {
  const std::string text =
      "Alpha one. Bravo two three. Charlie. Delta four.";

  // Limit 35: "Bravo two three." would overflow, "Charlie." still fits.
  const ShortenResult r = shorten(text, 35);
  CHECK(r.text == "Alpha one. Charlie. Delta four.");
  CHECK_FALSE(r.over_limit);

  // Limit 20: even first + last overflow, returned anyway but flagged.
  const ShortenResult tight = shorten(text, 20);
  CHECK(tight.text == "Alpha one. Delta four.");
  CHECK(tight.over_limit);
}

TEST_CASE("shorten preserves the first and last sentence verbatim") {
  const std::string text =
      "Begin here. Middle a. Middle b c d. Middle e. Finish there.";
  for (const std::size_t limit : {25, 30, 40, 50, 59}) {
    const ShortenResult r = shorten(text, limit);
    CHECK(r.text.rfind("Begin here.", 0) == 0);
    CHECK(r.text.size() >= 13);
    CHECK(r.text.substr(r.text.size() - 13) == "Finish there.");
  }
}

TEST_CASE("fix_punctuation leaves balanced text untouched") {
  const std::string text = "Plain (ok) [fine] \"quoted\" text.";
  CHECK(fix_punctuation(text) == text);
  CHECK(fix_punctuation("no marks at all") == "no marks at all");
}

TEST_CASE("fix_punctuation closes an opener at its clause end") {
  CHECK(fix_punctuation("abc (def, ghi.") == "abc (def), ghi.");
  CHECK(fix_punctuation("take [it, or leave.") == "take [it], or leave.");
  CHECK(fix_punctuation("open (to the end") == "open (to the end)");
}

TEST_CASE("fix_punctuation opens a closer at its clause start") {
  CHECK(fix_punctuation("abc) def") == "(abc) def");
  CHECK(fix_punctuation("say, word) end") == "say, (word) end");
}

TEST_CASE("fix_punctuation deletes marks that would enclose nothing") {
  CHECK(fix_punctuation("abc (") == "abc ");
  CHECK(fix_punctuation(") abc") == " abc");
  CHECK(fix_punctuation("end [.") == "end .");
}

TEST_CASE("fix_punctuation pairs quotes alternately") {
  CHECK(fix_punctuation("He said \"hello world") == "He said \"hello world\"");
  CHECK(fix_punctuation("say \"word.") == "say \"word\".");
  const std::string even = "\"both\" sides \"closed\"";
  CHECK(fix_punctuation(even) == even);
}

TEST_CASE("fix_punctuation output passes a stack checker and is idempotent") {
  const std::vector<std::string> nasty = {
      "a (b [c \"d, e.",
      ") ( ] [ \"",
      "(a) b) c (d",
      "\"one \"two \"three, four.",
      "mix [a (b\" c, d] e.",
      "((a)",
  };
  for (const std::string& text : nasty) {
    const std::string fixed = fix_punctuation(text);
    CAPTURE(text);
    CAPTURE(fixed);
    CHECK(balanced(fixed));
    CHECK(fix_punctuation(fixed) == fixed);
  }
}

TEST_CASE("normalized corpus finds texts on token boundaries") {
  Corpus corpus;
  corpus.add("The cat sat on the mat.");
  corpus.add("Scattered light fades.");
  const NormalizedCorpus normalized(corpus);

  CHECK(normalized.contains("The cat sat on the mat."));
  CHECK(normalized.contains("the CAT sat!!"));
  CHECK(normalized.contains("on the mat"));
  // "cat" is inside "scattered" only as raw bytes, not as a token.
  CHECK_FALSE(normalized.contains("cat light"));
  CHECK_FALSE(normalized.contains("he cat sat"));
  CHECK_FALSE(normalized.contains("mat the cat"));
}

TEST_CASE("matches never span corpus entries") {
  Corpus corpus;
  corpus.add("one two");
  corpus.add("three four");
  const NormalizedCorpus normalized(corpus);
  CHECK_FALSE(normalized.contains("two three"));
}

TEST_CASE("is_original rejects substrings and wordless texts") {
  Corpus corpus;
  corpus.add("The cat sat on the mat.");
  CHECK_FALSE(is_original("the cat sat", corpus));
  CHECK(is_original("the mat sat on the cat", corpus));
  // Nothing normalizable can never count as new material.
  CHECK_FALSE(is_original("?! --", corpus));
  CHECK_FALSE(is_original("", corpus));

  const NormalizedCorpus normalized(corpus);
  CHECK(is_original("the mat sat on the cat", normalized));
  CHECK_FALSE(is_original("ON THE MAT...", normalized));
}
