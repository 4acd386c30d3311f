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

// Grapher and ambiguity handling: parse trees become labelled graphs of
// clauses, entities and modifiers; competing graphs are ranked under a
// preference profile and held until the user selects one.

#ifndef CNL_DEEP_GRAPH_H_
#define CNL_DEEP_GRAPH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnl/chronos.h"
#include "cnl/lexicon.h"
#include "cnl/parser.h"

namespace cnl {

enum class GraphNodeKind { kClause, kEntity, kModifier, kTime, kConditional, kDirective };
std::string_view to_string(GraphNodeKind k);

struct GraphNode {
  int id = 0;
  GraphNodeKind kind = GraphNodeKind::kEntity;
  std::string lemma;
  FeatureBundle feats;
  std::optional<TimeRef> time;
  int token = -1;

  bool operator==(const GraphNode&) const = default;
};

// Edge labels: subj, obj, iobj, comp, pred, antecedent, consequent, track,
// time, freq, dir, mod, owner, member, adjunct:<prep>, postmod:<prep>.
struct GraphEdge {
  int from = 0;
  std::string label;
  int to = 0;

  bool operator==(const GraphEdge&) const = default;
  auto operator<=>(const GraphEdge&) const = default;
};

struct DeepGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  int root = 0;
  SentenceKind kind = SentenceKind::kDeclarative;
  std::optional<QueryFocus> focus;

  const GraphNode& node(int id) const { return nodes.at(static_cast<size_t>(id)); }
  GraphNode& node(int id) { return nodes.at(static_cast<size_t>(id)); }
  // Targets of edges with exactly this label.
  std::vector<int> targets(int from, std::string_view label) const;
  std::optional<int> target(int from, std::string_view label) const;
  // Edges leaving `from` whose label starts with `prefix`.
  std::vector<GraphEdge> edges_from(int from, std::string_view prefix = "") const;
  std::optional<int> parent(int to, std::string* label = nullptr) const;

  // Canonical text form and its FNV-1a digest.
  std::string serialize() const;
  uint64_t digest() const;
  std::string digest_hex() const;
  // Ambiguity features, e.g. attach:vp, attach:np, scope:wide.
  std::vector<std::string> preference_features() const;

  bool operator==(const DeepGraph&) const = default;
};

DeepGraph to_graph(const ParseTree& tree);

struct PreferenceRule {
  std::string feature;
  int score = 0;
};

struct PreferenceProfile {
  std::vector<PreferenceRule> rules;
  int score(const DeepGraph& g) const;
};

enum class SelectionStatus { kUnique, kAwaitingSelection };
std::string_view to_string(SelectionStatus s);

struct InterpretationSet {
  std::vector<DeepGraph> candidates;
  std::vector<int> scores;
  std::vector<std::string> paraphrases;
  SelectionStatus status = SelectionStatus::kUnique;
  std::string sentence;
};

// Human-readable descriptions of what distinguishes each graph.
std::vector<std::string> paraphrase(const std::vector<DeepGraph>& graphs);

// Stable sort by score; only the top-scoring candidates are retained.
// Throws ContractViolation on an empty list.
InterpretationSet rank(std::vector<DeepGraph> candidates, const PreferenceProfile& prefs);

// Throws ContractViolation on a set that is already unique and
// std::out_of_range on a bad index.
DeepGraph select(InterpretationSet* set, size_t index);

}  // namespace cnl

#endif  // CNL_DEEP_GRAPH_H_
