// Copyright 2026 The CNL Engine Authors.
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

#include <algorithm>

#include "cnl/lexicon.h"
#include "doctest.h"

namespace cnl {
namespace {

const LexicalDatabase& db() {
  static const LexicalDatabase d = LexicalDatabase::load(LexicalDatabase::default_dir());
  return d;
}

TEST_CASE("lexicon line parses into an entry with its features") {
  Lexicon lex = Lexicon::parse(
      "woman\twoman\tcommon_noun\tgender=female;number=singular;mass_count=count\n");
  auto hits = lex.lookup("woman");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].pos == Pos::kCommonNoun);
  CHECK(hits[0].features.get("gender") == "female");
}

TEST_CASE("empty lexicon misses every lookup") {
  Lexicon lex = Lexicon::parse("");
  CHECK(lex.lookup("woman").empty());
  CHECK(lex.form_count() == 0);
}

TEST_CASE("load errors carry the line number") {
  try {
    Lexicon::parse("# comment\nman\tman\tcommon_noun\nman\tman\tcommon_noun\n");
    FAIL("expected duplicate rejection");
  } catch (const LoadError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(Lexicon::parse("man\tman\n"), LoadError);
  CHECK_THROWS_AS(Lexicon::parse("man\tman\tnoun_thing\n"), LoadError);
  CHECK_THROWS_AS(Lexicon::parse("man\tman\tcommon_noun\ttense=past\n"), LoadError);
  CHECK_THROWS_AS(Lexicon::parse("red\tred\tadjective\tusage=attributive\n"), LoadError);
  CHECK_THROWS_AS(Lexicon::parse("go\tgo\tmain_verb\tsyntactic_frame=intransitive\n"),
                  LoadError);
  CHECK_THROWS_AS(Lexicon::parse("big man\tbig_man\tcommon_noun\n"), LoadError);
}

TEST_CASE("stood is the past of stand") {
  auto hits = db().lexicon.lookup("stood");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].lemma == "stand");
  CHECK(hits[0].pos == Pos::kMainVerb);
  CHECK(hits[0].features.get("tense") == "past");
}

TEST_CASE("read has exactly the present and past verb readings") {
  // Oracle: enumerate the inflection table for the lemma.
  int matches = 0;
  for (VerbForm f : {VerbForm::kPresent, VerbForm::kThirdSingular, VerbForm::kPast,
                     VerbForm::kIng})
    if (verb_form("read", f) == "read") ++matches;
  CHECK(matches == 2);
  auto hits = db().lexicon.lookup("read");
  int verbs = 0;
  std::set<std::string> tenses;
  for (const auto& e : hits) {
    if (e.pos != Pos::kMainVerb) continue;
    ++verbs;
    tenses.insert(e.features.get_or("tense", ""));
  }
  CHECK(verbs == matches);
  CHECK(tenses == std::set<std::string>{"past", "present"});
}

TEST_CASE("out of vocabulary token") { CHECK(db().lexicon.lookup("zzz").empty()); }

TEST_CASE("case policy") {
  const auto& lex = db().lexicon;
  CHECK(lex.lookup("The").empty());
  CHECK(!lex.lookup("The", true).empty());
  CHECK(!lex.lookup("Michael").empty());
  CHECK(lex.lookup("michael", true).empty());
}

// Precedence written out independently as a list.
const char* kOrder[] = {"ordinal", "noun",   "subjective", "evaluative", "objective",
                        "amplifier", "weak", "size",       "girth",      "height",
                        "shape",   "age",    "century",    "participle", "colour",
                        "compass", "provenance", "religion", "denominal"};

int rank_of(AdjClass c) {
  for (int i = 0; i < 19; ++i)
    if (to_string(c) == kOrder[i]) return i;
  return -1;
}

bool oracle_valid(const std::vector<AdjClass>& seq) {
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (rank_of(seq[i]) > rank_of(seq[i + 1])) return false;
  return true;
}

std::vector<AdjClass> classes(std::initializer_list<const char*> names) {
  std::vector<AdjClass> out;
  for (const char* n : names) out.push_back(*adj_class_from_string(n));
  return out;
}

TEST_CASE("adjective order against the adjacency oracle") {
  auto good = classes({"evaluative", "size", "age", "colour"});
  CHECK(adjective_order_valid(good));
  CHECK(oracle_valid(good));
  CHECK(adjective_order_valid(std::vector<AdjClass>{}));
  auto bad = classes({"colour", "size"});
  CHECK(!adjective_order_valid(bad));
  CHECK(!oracle_valid(bad));
  for (int a = 0; a < kAdjClassCount; ++a)
    for (int b = 0; b < kAdjClassCount; ++b)
      for (int c = 0; c < kAdjClassCount; c += 3) {
        std::vector<AdjClass> seq = {static_cast<AdjClass>(a), static_cast<AdjClass>(b),
                                     static_cast<AdjClass>(c)};
        CHECK(adjective_order_valid(seq) == oracle_valid(seq));
      }
}

TEST_CASE("precedence is a strict total order over the 19 classes") {
  std::set<int> ranks;
  for (int i = 0; i < kAdjClassCount; ++i) ranks.insert(precedence(static_cast<AdjClass>(i)));
  CHECK(ranks.size() == 19);
}

TEST_CASE("adjective order validity is closed under contiguous subsequences") {
  for (int a = 0; a < kAdjClassCount; a += 2)
    for (int b = a; b < kAdjClassCount; b += 3)
      for (int c = b; c < kAdjClassCount; c += 4) {
        std::vector<AdjClass> seq = {static_cast<AdjClass>(a), static_cast<AdjClass>(b),
                                     static_cast<AdjClass>(c)};
        REQUIRE(adjective_order_valid(seq));
        for (size_t i = 0; i < seq.size(); ++i)
          for (size_t j = i; j <= seq.size(); ++j)
            CHECK(adjective_order_valid(std::span(seq).subspan(i, j - i)));
      }
}

TEST_CASE("every looked-up entry re-inflects to its token") {
  const auto& lex = db().lexicon;
  size_t checked = 0;
  for (const auto& e : lex.all_forms()) {
    for (const auto& hit : lex.lookup(e.surface)) {
      CHECK_MESSAGE(reinflect(hit) == e.surface, hit.surface << " " << hit.lemma);
      ++checked;
    }
  }
  CHECK(checked >= lex.form_count());
}

TEST_CASE("loading is deterministic") {
  auto a = LexicalDatabase::load(LexicalDatabase::default_dir());
  CHECK(a.lexicon.all_forms() == db().lexicon.all_forms());
}

TEST_CASE("seed lexicon size and invariants") {
  const auto& lex = db().lexicon;
  CHECK(lex.form_count() >= 1400);
  for (const auto& e : lex.all_forms()) {
    CHECK(!e.surface.empty());
    CHECK(e.surface.find(' ') == std::string::npos);
    if (e.pos == Pos::kAdjective) CHECK(e.features.has("order_class"));
    if (e.pos == Pos::kMainVerb) CHECK(e.features.has("aktionsart"));
    if (!is_verb(e.pos)) CHECK(!e.features.has("tense"));
  }
}

TEST_CASE("inflection tables") {
  CHECK(plural_of("woman") == "women");
  CHECK(plural_of("box") == "boxes");
  CHECK(plural_of("city") == "cities");
  CHECK(plural_of("merchant_ship") == "merchant_ships");
  CHECK(plural_of("day") == "days");
  CHECK(verb_form("stop", VerbForm::kPast) == "stopped");
  CHECK(verb_form("visit", VerbForm::kPast) == "visited");
  CHECK(verb_form("carry", VerbForm::kThirdSingular) == "carries");
  CHECK(verb_form("watch", VerbForm::kThirdSingular) == "watches");
  CHECK(verb_form("write", VerbForm::kIng) == "writing");
  CHECK(verb_form("die", VerbForm::kIng) == "dying");
  CHECK(verb_form("patrol", VerbForm::kIng) == "patrolling");
  CHECK(verb_form("see", VerbForm::kThirdSingular) == "sees");
  CHECK(verb_form("stand", VerbForm::kThirdSingular) == "stands");
}

TEST_CASE("alias, acronym and taxonomy sub-lexicons") {
  std::vector<std::string> afb = {"Becker", "Bender", "air", "force", "base"};
  const AliasEntry* a = db().aliases.match(afb);
  REQUIRE(a != nullptr);
  CHECK(a->atom == "becker_bender_AFB");
  const AcronymEntry* dr = db().acronyms.find("Dr");
  REQUIRE(dr != nullptr);
  CHECK(dr->expansion == std::vector<std::string>{"doctor"});
  CHECK(dr->position == AcronymPosition::kPreNominal);
  CHECK(db().taxonomy.is_a("vessel", "vehicle"));
  CHECK(db().taxonomy.is_a("person", "animate"));
  CHECK(!db().taxonomy.is_a("document", "animate"));
  CHECK_THROWS_AS(AliasLexicon::parse("a b\t\n"), LoadError);
  CHECK_THROWS_AS(AcronymLexicon::parse("Dr\t\tpre_nominal\n"), LoadError);
}

}  // namespace
}  // namespace cnl
