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

// Discourse context and rule-based anaphora resolution within a
// paragraph.

#ifndef CNL_CONTEXT_H_
#define CNL_CONTEXT_H_

#include <optional>
#include <string>
#include <vector>

#include "cnl/deep_graph.h"
#include "cnl/mephisto.h"

namespace cnl {

enum class AnaphorKind { kPersonal, kReflexive, kReciprocal, kIndefinite, kDemonstrative, kVpDo };
std::string_view to_string(AnaphorKind k);

struct Referent {
  std::string skolem;
  std::string predicate;
  std::vector<std::string> features;
  std::string gender;   // female, male, neuter or empty
  std::string animacy;  // animate, inanimate or empty
  std::string number;
  std::string role;  // subj, obj or oblique
  int sentence = 0;
  int paragraph = 0;
  std::string surface;
};

struct DiscourseContext {
  int paragraph = 0;
  int sentence = 0;  // index of the next sentence in the paragraph
  std::vector<Referent> referents;
  std::optional<EventRecord> last_event;

  void paragraph_break();
  const Referent* find(const std::string& skolem) const;
};

// One graph per equally ranked binding. Throws UnresolvedAnaphor when an
// anaphor has no compatible referent.
std::vector<DeepGraph> resolve(const DeepGraph& g, const DiscourseContext& ctx);

// Records the sentence's referents and event.
void advance(DiscourseContext* ctx, const Translation& t);

}  // namespace cnl

#endif  // CNL_CONTEXT_H_
