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

#include <map>
#include <set>

#include "cnl/context.h"
#include "cnl/errors.h"
#include "doctest.h"
#include "anaphora_suite.h"
#include "test_support.h"

namespace cnl {
namespace {

using testing::Discourse;

TEST_CASE("anaphora suite binds within paragraphs and with agreement") {
  REQUIRE(testing::anaphora_suite().size() == 20);
  int bound = 0;
  for (const auto& c : testing::anaphora_suite()) {
    CAPTURE(c.sentences.back());
    CAPTURE(c.anaphor);
    auto outcome = testing::run_anaphora_case(c);
    CAPTURE(outcome.failure);
    CHECK(outcome.passed);
    bound += outcome.bound;
  }
  CHECK(bound == 15);
}

TEST_CASE("equal-ranked antecedents yield one graph per binding") {
  Discourse d;
  d.say("The man and the boy slept.");
  auto g = to_graph(testing::parse("He slept.").front());
  auto graphs = resolve(g, d.context);
  REQUIRE(graphs.size() == 2);
  std::set<std::string> surfaces;
  for (const auto& h : graphs) {
    const GraphNode* n = testing::anaphor_node(h, "he");
    surfaces.insert(n->feats.get_or("referent_surface", ""));
  }
  CHECK(surfaces == std::set<std::string>{"the man", "the boy"});
  auto set = rank(graphs, {});
  CHECK(set.status == SelectionStatus::kAwaitingSelection);
}

TEST_CASE("resolution is deterministic") {
  Discourse d;
  d.say("The man saw the woman in the car.");
  d.say("The boy read the document.");
  auto g = to_graph(testing::parse("She read it.").front());
  auto a = resolve(g, d.context);
  auto b = resolve(g, d.context);
  CHECK(a == b);
}

TEST_CASE("context holds the sentence's entities after advancing") {
  Discourse d;
  d.say("The woman stood in the house.");
  std::set<std::string> preds;
  for (const auto& r : d.context.referents) preds.insert(r.predicate);
  CHECK(preds == std::set<std::string>{"woman", "house"});
  REQUIRE(d.context.last_event.has_value());
  CHECK(d.context.last_event->functor == "stands");
}

TEST_CASE("paragraph break empties the context") {
  Discourse d;
  d.say("The woman stood in the house.");
  d.say("");
  CHECK(d.context.referents.empty());
  CHECK_FALSE(d.context.last_event.has_value());
  CHECK(d.context.sentence == 0);
}

TEST_CASE("a repeated definite reuses its skolem without a new referent") {
  Discourse d;
  const auto& a = d.say("The woman saw the man.");
  std::string woman = a.entities.front().skolem;
  size_t before = d.context.referents.size();
  const auto& b = d.say("The woman slept.");
  CHECK(b.entities.front().skolem == woman);
  CHECK(d.context.referents.size() == before);
}

TEST_CASE("universals are not referents") {
  Discourse d;
  d.say("Women stand.");
  CHECK(d.context.referents.empty());
  auto g = to_graph(testing::parse("She slept.").front());
  CHECK_THROWS_AS(resolve(g, d.context), UnresolvedAnaphor);
}

TEST_CASE("generic do takes over the previous event") {
  Discourse d;
  const auto& a = d.say("The man gave the woman a document.");
  std::string functor = a.event->functor;
  const auto& b = d.say("He did.");
  REQUIRE(b.event.has_value());
  CHECK(b.event->functor == functor);
  CHECK(b.event->args.size() == 2);
}

TEST_CASE("generic do without an earlier event is unresolved") {
  Discourse d;
  auto g = to_graph(testing::parse("The man did.").front());
  CHECK_THROWS_AS(resolve(g, d.context), UnresolvedAnaphor);
}

TEST_CASE("indefinite pronouns in queries become variables, not anaphors") {
  Discourse d;
  const auto& t = d.say("Did anyone see the car?");
  REQUIRE_FALSE(t.focus_variable.empty());
  CHECK(t.variables.count(t.focus_variable) == 1);
}

TEST_CASE("anaphor kinds have stable names") {
  CHECK(to_string(AnaphorKind::kPersonal) == "personal");
  CHECK(to_string(AnaphorKind::kVpDo) == "vp_do");
}

}  // namespace
}  // namespace cnl
