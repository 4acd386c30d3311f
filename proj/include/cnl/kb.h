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

// Session knowledge base: enveloped assertions, one-step universal rules,
// query answering by unification with temporal filtering, and track
// ingestion for situation reports.

#ifndef CNL_KB_H_
#define CNL_KB_H_

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cnl/chronos.h"
#include "cnl/lexicon.h"
#include "cnl/mephisto.h"
#include "cnl/term.h"

namespace cnl {

struct TrackRecord {
  std::string source;
  int64_t temporal_offset_seconds = 0;
  std::string track_id;
  Timestamp time;  // as recorded, before the offset is applied
  double latitude = 0;
  double longitude = 0;
  double direction = 0;  // degrees
  double speed = 0;      // knots
  std::string track_class;
  std::string type;
  std::string allegiance;
  std::string nationality;

  // Recorded time shifted by the offset.
  Timestamp utc() const;
};

// One CSV line: source,temporal_offset_seconds,track_id,ISO8601-time,lat,lon,
// direction_deg,speed_knots,class,type,allegiance,nationality.
// Throws std::invalid_argument naming the offending field.
TrackRecord parse_track_line(std::string_view line);

struct TrackRejection {
  size_t line = 0;
  std::string reason;
};

struct IngestResult {
  size_t accepted = 0;
  std::vector<TrackRejection> rejected;
};

// A match of a query: values for its variables and the stored clauses
// that support it.
struct QueryResult {
  std::map<std::string, Term> bindings;
  MephistoForm support;
  // Temporal constraints on the matched event time.
  std::vector<Term> temporal;
};

struct Answer {
  std::vector<QueryResult> results;
  std::string focus_variable;
  bool yes() const { return !results.empty(); }
};

struct SituationReport {
  MephistoForm track;                  // latest record's clauses
  std::vector<MephistoForm> related;   // asserted forms naming the track
  std::optional<std::string> diagnostic;
};

struct LogEntry {
  std::string teller;
  Interval utterance;
  SpeechAct act = SpeechAct::kAssert;
  std::string envelope;
};

class KnowledgeBase {
 public:
  explicit KnowledgeBase(const LexicalDatabase& db) : db_(&db) {}

  // Throws ContractViolation unless the envelope is an assertion.
  void assert_form(const Envelope& env);
  void log_envelope(const Envelope& env);

  Answer answer(const Translation& query) const;

  IngestResult ingest_tracks(std::istream& csv, SymbolTable* symbols);
  void ingest(const TrackRecord& record, SymbolTable* symbols);

  SituationReport situation_report(const std::string& track_class,
                                   const std::string& track_id) const;

  const std::set<Term>& facts() const { return facts_; }
  // Clauses one rule application away from the asserted facts.
  const std::set<Term>& derived() const;
  const std::vector<Term>& rules() const { return rules_; }
  const std::vector<LogEntry>& log() const { return log_; }
  size_t track_count() const { return tracks_.size(); }

 private:
  struct Cache;
  struct TrackEntry {
    Timestamp utc;
    std::string track_class;
    MephistoForm clauses;
  };

  void add_fact(const Term& clause);
  const Cache& cache() const;

  const LexicalDatabase* db_;
  std::set<Term> facts_;
  std::vector<Term> rules_;
  std::vector<MephistoForm> payloads_;
  std::vector<LogEntry> log_;
  std::map<std::string, std::string> tracks_;  // id to skolem
  std::map<std::string, std::vector<TrackEntry>> track_records_;
  mutable std::shared_ptr<const Cache> cache_;
};

// Options shared by the matcher and its tests.
struct MatchOptions {
  // Number features are ignored, as universal restrictors are plural.
  bool ignore_number = false;
};

// Unifies `pattern` against the ground `fact`, extending `bindings` for
// symbols in `variables`. Typing functors match through the taxonomy;
// `does` and `location` are wildcards.
bool unify_clause(const Term& pattern, const Term& fact, const std::set<std::string>& variables,
                  std::map<std::string, Term>* bindings, const LexicalDatabase& db,
                  const MatchOptions& options = {});

// Whether a stored constraint on an event time entails a queried one.
bool constraint_entails(const Term& stored, const Term& queried);

}  // namespace cnl

#endif  // CNL_KB_H_
