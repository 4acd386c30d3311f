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

// CNL generation: Mephisto forms back to controlled English sentences,
// validated by re-parsing with the same grammar.

#ifndef CNL_EFFECTOR_H_
#define CNL_EFFECTOR_H_

#include <string>
#include <vector>

#include "cnl/chronos.h"
#include "cnl/lexicon.h"
#include "cnl/parser.h"
#include "cnl/term.h"

namespace cnl {

struct GenerationOptions {
  const LexicalDatabase* db = nullptr;
  int offset_minutes = 0;
};

// One declarative sentence with explicit temporal adjuncts. Throws
// GenerationError on a skolem without a typing clause, an unknown
// functor or a clause shape outside the grammar.
std::string generate(const MephistoForm& form, const GenerationOptions& options);

// Noun phrase for the entity of `at`, described by the clauses of `form`,
// without postmodifiers, e.g. "the message". Throws GenerationError like
// generate.
std::string noun_phrase(const MephistoForm& form, const Term& at, const GenerationOptions& options);

// Temporal phrase for a constraint on an event time, e.g. "before Monday
// the 2nd of June 2014 at 10:33:48 AM", "in June 2014", "from ... to ...".
std::string date_phrase(TemporalRelation relation, const Interval& interval, int offset_minutes);

struct RoundtripResult {
  // Some reading matches, allowing the input's feature lists to be subsets.
  bool ok = false;
  // Some reading matches with identical feature lists.
  bool exact = false;
  std::string text;
  std::string error;
};

// Generates, re-parses every reading, translates each with fresh symbols
// and an empty discourse context, and compares with alpha_equal.
RoundtripResult validate_roundtrip(const MephistoForm& form, const Parser& parser,
                                   const TimeContext& time, const GenerationOptions& options);

// Sentences describing a track from its stored clauses.
std::vector<std::string> render_report(const MephistoForm& clauses, const GenerationOptions& options);

}  // namespace cnl

#endif  // CNL_EFFECTOR_H_
