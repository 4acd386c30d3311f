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

// Knowledge-base fixtures: a tell/ask session and a brute-force answer
// oracle that enumerates substitutions of stored @-terms.

#ifndef CNL_TESTS_KB_ORACLE_H_
#define CNL_TESTS_KB_ORACLE_H_

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cnl/kb.h"
#include "test_support.h"

namespace cnl::testing {

// Session under test: translations go through one discourse, declaratives
// are asserted and questions answered.
struct KbSession {
  Discourse discourse;
  KnowledgeBase kb{db()};

  Envelope tell(const std::string& text) {
    const Translation& t = discourse.say(text);
    Envelope e = envelope(t.form, "Duty_Officer", SpeechAct::kAssert,
                          Interval::point(utterance_utc()), &discourse.symbols);
    kb.assert_form(e);
    return e;
  }

  Answer ask(const std::string& text) { return kb.answer(discourse.say(text)); }
  const Translation& last() const { return discourse.history.back(); }
};

inline std::string skolem_of(const Translation& t, std::string_view predicate) {
  for (const auto& e : t.entities)
    if (e.predicate == predicate) return e.skolem;
  return "";
}

inline const std::set<std::string, std::less<>> kAgreementAndTense = {
    "singular", "plural", "animate", "inanimate", "female", "male", "neuter",
    "past", "present", "future", "general_habitual", "predicative", "attributive",
    "can", "could", "must", "should", "may", "might", "would"};

inline bool is_list_of_features(const Term& t) {
  return t.kind == TermKind::kList && is_feature_list(t);
}

inline bool has_tense_tag(const Term& list) {
  for (const auto& x : list.args)
    if (x.is_atom("past") || x.is_atom("present") || x.is_atom("future") ||
        x.is_atom("general_habitual"))
      return true;
  return false;
}

inline bool typing_shape(const Term& c) {
  return c.kind == TermKind::kCompound && c.args.size() == 2 && c.args[0].kind == TermKind::kAt &&
         is_list_of_features(c.args[1]) && !has_tense_tag(c.args[1]) &&
         std::none_of(c.args[1].args.begin(), c.args[1].args.end(), [](const Term& x) {
           return x.is_atom("predicative") || x.is_atom("attributive");
         });
}

inline bool event_shape(const Term& c) {
  return c.kind == TermKind::kCompound && c.args.size() >= 2 && c.args[0].kind == TermKind::kAt &&
         is_list_of_features(c.args.back()) && has_tense_tag(c.args.back()) &&
         std::none_of(c.args.back().args.begin(), c.args.back().args.end(),
                      [](const Term& x) { return x.is_atom("predicative"); });
}

inline bool is_time_constraint(const Term& c) {
  return (c.is_compound("before") || c.is_compound("after") || c.is_compound("during")) &&
         c.args.size() == 2 && c.args[0].is_symbol();
}

// Closed-interval point semantics, by endpoints.
inline bool entailed_by_endpoints(std::string_view stored, const Interval& s,
                                  std::string_view queried, const Interval& q) {
  if (queried == "before") {
    if (stored == "before") return s.start <= q.start;
    if (stored == "during") return s.end < q.start;
    return false;
  }
  if (queried == "after") {
    if (stored == "after") return s.end >= q.end;
    if (stored == "during") return s.start > q.end;
    return false;
  }
  return stored == "during" && q.start <= s.start && s.end <= q.end;
}

class Oracle {
 public:
  Oracle(std::vector<Term> store, bool ignore_number = false)
      : store_(std::move(store)), ignore_number_(ignore_number) {
    for (const auto& c : store_) collect_ats(c, &store_ats_);
  }

  // Every substitution of the query's @-terms by stored @-terms under
  // which each query clause is covered by some stored clause.
  std::vector<std::map<std::string, Term>> solve(const std::vector<Term>& query,
                                                 const std::set<std::string>& vars) const {
    std::vector<Term> patterns, constraints;
    for (const auto& c : query)
      (is_time_constraint(c) && vars.count(c.args[0].name) ? constraints : patterns).push_back(c);
    std::set<Term> qats;
    for (const auto& c : patterns) collect_ats(c, &qats);
    std::vector<Term> qv(qats.begin(), qats.end());
    std::vector<Term> sv(store_ats_.begin(), store_ats_.end());
    std::vector<std::map<std::string, Term>> out;
    std::map<std::string, Term> b;
    enumerate(qv, sv, 0, vars, &b, [&](const std::map<std::string, Term>& full) {
      for (const auto& p : patterns)
        if (!covered(substitute(p, full))) return;
      for (const auto& q : constraints) {
        auto t = full.find(q.args[0].name);
        if (t == full.end()) continue;
        auto qi = interval_from_term(q.args[1]);
        bool ok = false;
        for (const auto& s : store_) {
          if (!is_time_constraint(s) || s.args[0] != t->second) continue;
          auto si = interval_from_term(s.args[1]);
          ok = ok || entailed_by_endpoints(s.name, *si, q.name, *qi);
        }
        if (!ok) return;
      }
      out.push_back(full);
    });
    return out;
  }

  bool covered(const Term& q) const {
    return std::any_of(store_.begin(), store_.end(), [&](const Term& f) { return covers(q, f); });
  }

 private:
  static void collect_ats(const Term& t, std::set<Term>* out) {
    if (t.kind == TermKind::kAt) out->insert(t);
    for (const auto& a : t.args) collect_ats(a, out);
  }

  void enumerate(const std::vector<Term>& qv, const std::vector<Term>& sv, size_t i,
                 const std::set<std::string>& vars, std::map<std::string, Term>* b,
                 const std::function<void(const std::map<std::string, Term>&)>& emit) const {
    if (i == qv.size()) {
      emit(*b);
      return;
    }
    for (const auto& s : sv) {
      auto saved = *b;
      bool ok = true;
      for (size_t k = 0; k < 3 && ok; ++k) {
        const Term& q = qv[i].args[k];
        if (!vars.count(q.name)) {
          ok = q == s.args[k];
        } else if (auto it = b->find(q.name); it != b->end()) {
          ok = it->second == s.args[k];
        } else {
          b->emplace(q.name, s.args[k]);
        }
      }
      if (ok) enumerate(qv, sv, i + 1, vars, b, emit);
      *b = std::move(saved);
    }
  }

  bool features_subset(const Term& q, const Term& f) const {
    for (const auto& x : q.args) {
      if (!kAgreementAndTense.count(x.name)) continue;
      if (ignore_number_ && (x.name == "singular" || x.name == "plural")) continue;
      bool found = std::any_of(f.args.begin(), f.args.end(), [&](const Term& y) { return y == x; });
      if (!found) return false;
    }
    return true;
  }

  bool same(const Term& q, const Term& f) const {
    if (is_list_of_features(q) && is_list_of_features(f)) return features_subset(q, f);
    if (q.kind != f.kind || q.args.size() != f.args.size()) return false;
    if (q.kind == TermKind::kCompound || q.kind == TermKind::kAtom || q.kind == TermKind::kSymbol ||
        q.kind == TermKind::kNumber || q.kind == TermKind::kInteger)
      if (q.name != f.name || q.value != f.value) return false;
    for (size_t i = 0; i < q.args.size(); ++i)
      if (!covers(q.args[i], f.args[i])) return false;
    return true;
  }

  bool covers(const Term& q, const Term& f) const {
    if (typing_shape(q) && typing_shape(f)) {
      if (q.args[0] != f.args[0] || !features_subset(q.args[1], f.args[1])) return false;
      if (q.name == f.name || q.name == "thing" || q.name == "entity") return true;
      for (Pos pos : {Pos::kCommonNoun, Pos::kProperNoun, Pos::kPronoun})
        if (const LexEntry* e = db().lexicon.find_lemma(f.name, pos))
          if (auto type = e->features.get("type"))
            return db().taxonomy.is_a(*type, q.name);
      return false;
    }
    if (q.is_compound("does") && event_shape(q))
      return event_shape(f) && q.args[0] == f.args[0] &&
             features_subset(q.args.back(), f.args.back());
    bool copular = q.kind == TermKind::kCompound && !q.args.empty() &&
                   std::any_of(q.args.back().args.begin(), q.args.back().args.end(),
                               [](const Term& x) { return x.is_atom("predicative"); });
    if (copular && q.name.starts_with("location") && f.kind == TermKind::kCompound &&
        f.name.starts_with("location_") && f.args.size() + 1 == q.args.size() &&
        f.args[0].kind == TermKind::kAt && (q.name == "location" || q.name == f.name)) {
      for (size_t i = 0; i < f.args.size(); ++i)
        if (!covers(q.args[i], f.args[i])) return false;
      return true;
    }
    if (q.is_compound("location") && f.kind == TermKind::kCompound &&
        f.name.starts_with("location_")) {
      Term renamed = q;
      renamed.name = f.name;
      return same(renamed, f);
    }
    return same(q, f);
  }

  std::vector<Term> store_;
  std::set<Term> store_ats_;
  bool ignore_number_;
};

inline std::set<std::string> focus_values(
    const std::vector<std::map<std::string, Term>>& solutions, const std::string& focus) {
  std::set<std::string> out;
  for (const auto& s : solutions) {
    auto it = s.find(focus);
    out.insert(it == s.end() ? "" : print_term(it->second));
  }
  return out;
}

inline std::set<std::string> focus_values(const Answer& a) {
  std::set<std::string> out;
  for (const auto& r : a.results) {
    auto it = r.bindings.find(a.focus_variable);
    out.insert(it == r.bindings.end() ? "" : print_term(it->second));
  }
  return out;
}

inline std::vector<Term> store_of(const KnowledgeBase& kb) {
  std::vector<Term> s(kb.facts().begin(), kb.facts().end());
  s.insert(s.end(), kb.derived().begin(), kb.derived().end());
  return s;
}

// One-step forward chaining by enumeration over the asserted facts.
inline std::set<Term> derive_by_enumeration(const KnowledgeBase& kb) {
  std::set<Term> out;
  std::vector<Term> facts(kb.facts().begin(), kb.facts().end());
  Oracle oracle(facts, /*ignore_number=*/true);
  for (const auto& rule : kb.rules()) {
    if (!rule.is_compound("all")) continue;
    std::set<std::string> quantified, vars;
    for (const auto& v : rule.args[0].args) quantified.insert(v.name);
    collect_symbols(rule, &vars);
    std::erase_if(vars, [&](const std::string& s) {
      return !quantified.count(s) && symbol_class(s) == SymbolClass::kSkolem;
    });
    std::vector<Term> lhs;
    const Term& restrictor = rule.args[1].args[0];
    if (restrictor.kind == TermKind::kConjunction) {
      lhs = restrictor.args;
    } else {
      lhs.push_back(restrictor);
    }
    for (const auto& b : oracle.solve(lhs, vars)) {
      Term body = substitute(rule.args[1].args[1], b);
      std::vector<Term> parts =
          body.kind == TermKind::kConjunction ? body.args : std::vector<Term>{body};
      for (const auto& p : parts)
        if (!kb.facts().count(p)) out.insert(p);
    }
  }
  return out;
}

inline constexpr const char* kFactPool[] = {
    "The woman stood in the house.",  "The man read the document.",
    "The boy gave the girl a book.",  "A woman saw the man.",
    "The ship is in the port.",       "The girl slept.",
    "The man stood in the car.",      "Women stand.",
    "The woman did not read the document.", "The boy saw the ship.",
};

inline constexpr const char* kQuestionPool[] = {
    "Who stood in the house?",        "What did the man read?",
    "Did anyone see the man?",        "Who saw the man?",
    "Did the woman stand?",           "Where did the woman stand?",
    "Who slept?",                     "Where is the ship?",
    "Does the woman stand?",          "Who stood?",
    "What did the boy give the girl?", "Did someone read something?",
    "When did the man read the document?", "What did the girl do?",
    "Who saw something?",             "Did the woman not read the document?",
};

}  // namespace cnl::testing

#endif  // CNL_TESTS_KB_ORACLE_H_
