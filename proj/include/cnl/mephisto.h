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

// Semantic translator: resolved deep graphs to Mephisto forms, with
// skolemized entities, thematic-role predicates, quantification, negation,
// conditionals and the perceive/tells envelope.

#ifndef CNL_MEPHISTO_H_
#define CNL_MEPHISTO_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cnl/chronos.h"
#include "cnl/deep_graph.h"
#include "cnl/lexicon.h"
#include "cnl/term.h"

namespace cnl {

struct TranslationOptions {
  const LexicalDatabase* db = nullptr;
  Interval utterance;
  int offset_minutes = 0;
};

// One translated noun phrase occurrence.
struct EntityRecord {
  int node = -1;
  std::string skolem;
  std::string predicate;
  std::vector<std::string> features;
  std::string role;  // subj, obj or oblique
  bool universal = false;
  bool variable = false;
  std::string surface;
};

struct EventRecord {
  std::string functor;
  std::string subject;
  std::vector<Term> args;  // non-subject arguments
};

struct Translation {
  MephistoForm form;
  SentenceKind kind = SentenceKind::kDeclarative;
  std::vector<EntityRecord> entities;
  std::optional<EventRecord> event;
  std::string time_symbol;
  // Query variables: wh-phrases, indefinite pronouns, unbound entities and
  // every time and space symbol of the query.
  std::set<std::string> variables;
  std::string focus_variable;
  std::optional<QueryFocus> focus;
};

// Throws ContractViolation when an anaphor reaches translation unbound.
Translation translate(const DeepGraph& g, SymbolTable* symbols, const TranslationOptions& options);

// Predicate for a preposition: location_in, source, goal, instrument, ...
std::string thematic_role(std::string_view prep, bool motion_verb, bool animate_object,
                          bool event_level);
// Inverse of thematic_role, for generation.
std::optional<std::string> preposition_for_role(std::string_view functor);

enum class SpeechAct { kAssert, kQuery, kDirect };
std::string_view to_string(SpeechAct a);

struct Envelope {
  std::string teller;
  Interval utterance;
  SpeechAct act = SpeechAct::kAssert;
  MephistoForm payload;
  Term term;  // perceive(cnl_sensor,tells(teller(@(...),Name),act([...])))
};

// Throws ContractViolation on an empty teller name.
Envelope envelope(const MephistoForm& form, const std::string& teller, SpeechAct act,
                  const Interval& utterance, SymbolTable* symbols);
std::string print_envelope(const Envelope& e);

}  // namespace cnl

#endif  // CNL_MEPHISTO_H_
