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

// Hand-written grammar over prepared token streams. Enumerates every
// licensed tree; ambiguity is admitted only for PP attachment and the
// scope of a PP after a conjoined NP.

#ifndef CNL_PARSER_H_
#define CNL_PARSER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnl/chronos.h"
#include "cnl/lexicon.h"
#include "cnl/surface.h"

namespace cnl {

// One tree node. Leaves carry the token index and the lexical entry that
// licensed them; TIME leaves carry the grounded temporal reference.
struct Node {
  std::string label;
  std::string role;  // subj, obj, iobj, comp, pred, adjunct, postmod, owner
  std::string word;
  int token = -1;
  std::optional<LexEntry> entry;
  FeatureBundle feats;
  std::optional<TimeRef> time;
  std::vector<Node> kids;

  const Node* child(std::string_view label) const;
  const Node* with_role(std::string_view role) const;
  std::vector<const Node*> all_with_role(std::string_view role) const;
  bool operator==(const Node&) const = default;
};

enum class SentenceKind { kDeclarative, kInterrogative, kDirective, kIndirect };
std::string_view to_string(SentenceKind k);

enum class QuerySlot { kSubject, kObject, kPredicate, kTemporal, kLocational, kYesNo };
std::string_view to_string(QuerySlot s);

struct QueryFocus {
  QuerySlot slot = QuerySlot::kYesNo;
  // The wh-word or indefinite pronoun that binds the slot; empty for a
  // plain yes/no question.
  std::string binder;
  bool operator==(const QueryFocus&) const = default;
};

struct ParseTree {
  Node root;
  SentenceKind kind = SentenceKind::kDeclarative;
  std::optional<QueryFocus> focus;

  // Indented bracketed rendering, e.g. (NP (ENP (DET the) (NP2 (N man)))).
  std::string bracketed() const;
  bool operator==(const ParseTree&) const = default;
};

// Throws ContractViolation unless the tree is interrogative.
QueryFocus parse_query_focus(const ParseTree& tree);

class Parser {
 public:
  static constexpr size_t kMaxTrees = 64;

  explicit Parser(const LexicalDatabase& db) : db_(db) {}

  // All trees for one sentence. The time context grounds temporal
  // adjuncts; its direction is overridden by the clause tense.
  std::vector<ParseTree> parse(const TokenStream& ts, const TimeContext& time) const;
  const LexicalDatabase& database() const { return db_; }

 private:
  const LexicalDatabase& db_;
};

// Unknown-word diagnostics, or a single out_of_grammar diagnostic when
// every token is known but no tree exists. Empty means parseable.
std::vector<InputDiagnostic> precheck(const TokenStream& ts, const Parser& parser,
                                      const TimeContext& time);

}  // namespace cnl

#endif  // CNL_PARSER_H_
