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

// Seeded random sentences instantiated from clause templates over the
// lexicon, shared by the roundtrip property test and the acceptance run.

#ifndef CNL_TESTS_RANDOM_CORPUS_H_
#define CNL_TESTS_RANDOM_CORPUS_H_

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cnl/lexicon.h"

namespace cnl::testing {

class RandomCorpus {
 public:
  RandomCorpus(const LexicalDatabase& db, uint32_t seed) : rng_(seed) {
    for (const auto& e : db.lexicon.base_entries()) {
      switch (e.pos) {
        case Pos::kCommonNoun:
          if (e.features.has("mass_count", "count") && !e.features.has("syntactic_dependencies") &&
              e.surface.find('_') == std::string::npos && !e.features.has("type", "time"))
            nouns_.push_back(e);
          break;
        case Pos::kProperNoun:
          if (e.features.has("type", "person")) names_.push_back(e.surface);
          break;
        case Pos::kAdjective:
          if (e.features.has("usage", "attributive")) attributive_.push_back(e);
          if (e.features.has("usage", "predicative")) predicative_.push_back(e.surface);
          break;
        case Pos::kMainVerb:
          if (e.lemma == "be" || e.lemma == "do") break;
          if (e.features.has("syntactic_frame", "intransitive")) intransitive_.push_back(e.lemma);
          if (e.features.has("syntactic_frame", "transitive")) transitive_.push_back(e.lemma);
          if (e.features.has("syntactic_frame", "ditransitive")) ditransitive_.push_back(e.lemma);
          break;
        default: break;
      }
    }
    for (const auto& n : nouns_)
      for (const auto& f : inflect(n))
        if (f.features.has("number", "plural")) plural_[n.lemma] = f.surface;
  }

  std::string sentence() {
    switch (pick(9)) {
      case 0: return intransitive();
      case 1: return transitive();
      case 2: return ditransitive();
      case 3: return copula();
      case 4: return universal();
      case 5: return "If " + transitive_body() + " then " + intransitive_body() + ".";
      case 6: return names_[pick(names_.size())] + " said that " + transitive_body() + ".";
      case 7: return negated();
      default: return future();
    }
  }

  std::vector<std::string> sentences(size_t n) {
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) out.push_back(sentence());
    return out;
  }

 private:
  struct Np {
    std::string text;
    bool plural = false;
  };

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }

  std::string adjectives() {
    std::vector<LexEntry> chosen;
    size_t count = pick(3);
    for (size_t i = 0; i < count; ++i) {
      const LexEntry& a = attributive_[pick(attributive_.size())];
      auto ca = adj_class_from_string(a.features.get_or("order_class", ""));
      bool clash = std::any_of(chosen.begin(), chosen.end(), [&](const LexEntry& b) {
        return b.features.get_or("order_class", "") == a.features.get_or("order_class", "");
      });
      if (!ca || clash) continue;
      chosen.push_back(a);
    }
    std::sort(chosen.begin(), chosen.end(), [](const LexEntry& a, const LexEntry& b) {
      return precedence(*adj_class_from_string(a.features.get_or("order_class", ""))) <
             precedence(*adj_class_from_string(b.features.get_or("order_class", "")));
    });
    std::string out;
    for (const auto& a : chosen) out += a.surface + " ";
    return out;
  }

  Np np(bool allow_quantity = true) {
    if (pick(6) == 0) return {names_[pick(names_.size())], false};
    const LexEntry& n = nouns_[pick(nouns_.size())];
    std::string head = adjectives();
    switch (allow_quantity ? pick(4) : pick(2)) {
      case 0: return {"the " + head + n.surface, false};
      case 1: {
        std::string w = head + n.surface;
        return {(std::string("aeiou").find(w[0]) != std::string::npos ? "an " : "a ") + w, false};
      }
      case 2: {
        static const char* kNumbers[] = {"two", "three", "four", "seven"};
        return {std::string(kNumbers[pick(4)]) + " " + head + plural_[n.lemma], true};
      }
      default: return {"several " + head + plural_[n.lemma], true};
    }
  }

  std::string pp() {
    static const char* kPreps[] = {"in", "on", "near", "under", "behind", "beside", "with"};
    const LexEntry& n = nouns_[pick(nouns_.size())];
    return std::string(kPreps[pick(7)]) + " the " + n.surface;
  }

  static std::string capital(std::string s) {
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  }

  std::string intransitive_body() {
    Np s = np();
    std::string v = intransitive_[pick(intransitive_.size())];
    std::string out = s.text + " " + verb_form(v, VerbForm::kPast);
    if (coin()) out += " " + pp();
    return out;
  }

  std::string transitive_body() {
    Np s = np();
    Np o = np();
    std::string v = transitive_[pick(transitive_.size())];
    return s.text + " " + verb_form(v, VerbForm::kPast) + " " + o.text;
  }

  std::string intransitive() {
    std::string out = capital(intransitive_body());
    if (pick(3) == 0) out += coin() ? " on Monday" : " yesterday";
    return out + ".";
  }

  std::string transitive() {
    std::string out = capital(transitive_body());
    if (pick(3) == 0) out += coin() ? " twice" : " once";
    return out + ".";
  }

  std::string ditransitive() {
    Np s = np();
    std::string v = ditransitive_[pick(ditransitive_.size())];
    return capital(s.text) + " " + verb_form(v, VerbForm::kPast) + " " + np(false).text + " " +
           np(false).text + ".";
  }

  std::string copula() {
    Np s = np();
    bool past = coin();
    std::string be = past ? (s.plural ? "were" : "was") : (s.plural ? "are" : "is");
    switch (pick(3)) {
      case 0: return capital(s.text) + " " + be + " " + predicative_[pick(predicative_.size())] + ".";
      case 1: return capital(s.text) + " " + be + " " + pp() + ".";
      default: {
        std::string other = s.plural ? "the " + plural_[nouns_[pick(nouns_.size())].lemma]
                                     : "the " + nouns_[pick(nouns_.size())].surface;
        return capital(s.text) + " " + be + (coin() ? " not " : " ") + other + ".";
      }
    }
  }

  std::string universal() {
    const LexEntry& n = nouns_[pick(nouns_.size())];
    std::string head = adjectives() + plural_[n.lemma];
    switch (pick(3)) {
      case 0: return capital(head) + " " + intransitive_[pick(intransitive_.size())] + ".";
      case 1: return "All " + head + " always " + transitive_[pick(transitive_.size())] + " " +
                     np(false).text + ".";
      default: return "Every " + adjectives() + n.surface + " " +
                      verb_form(intransitive_[pick(intransitive_.size())], VerbForm::kPast) + ".";
    }
  }

  std::string negated() {
    Np s = np();
    std::string v = transitive_[pick(transitive_.size())];
    std::string aux = coin() ? "did not" : (s.plural ? "do not" : "does not");
    return capital(s.text) + " " + aux + " " + v + " " + np().text + ".";
  }

  std::string future() {
    Np s = np();
    std::string v = intransitive_[pick(intransitive_.size())];
    std::string modal = pick(3) == 0 ? "cannot" : "will";
    return capital(s.text) + " " + modal + " " + v + (coin() ? " " + pp() : "") + ".";
  }

  std::mt19937 rng_;
  std::vector<LexEntry> nouns_;
  std::vector<std::string> names_;
  std::vector<LexEntry> attributive_;
  std::vector<std::string> predicative_;
  std::vector<std::string> intransitive_, transitive_, ditransitive_;
  std::map<std::string, std::string> plural_;
};

}  // namespace cnl::testing

#endif  // CNL_TESTS_RANDOM_CORPUS_H_
