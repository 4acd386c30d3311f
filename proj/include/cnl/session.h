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

// One operator session: the full pipeline from text to stored facts,
// answers and reports, with an append-only command log that can rebuild
// the session by replay.

#ifndef CNL_SESSION_H_
#define CNL_SESSION_H_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnl/chronos.h"
#include "cnl/context.h"
#include "cnl/deep_graph.h"
#include "cnl/kb.h"
#include "cnl/lexicon.h"
#include "cnl/parser.h"
#include "json.hpp"

namespace cnl {

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() = 0;
};

class SystemClock : public Clock {
 public:
  Timestamp now() override;
};

class ManualClock : public Clock {
 public:
  explicit ManualClock(Timestamp t) : now_(t) {}
  Timestamp now() override { return now_; }
  void set(Timestamp t) { now_ = t; }
  void advance(int64_t seconds) { now_ = from_epoch_seconds(to_epoch_seconds(now_) + seconds); }

 private:
  Timestamp now_;
};

enum class SubmitMode { kAuto, kAssert, kQuery, kDirective };
std::string_view to_string(SubmitMode m);
std::optional<SubmitMode> submit_mode_from_string(std::string_view text);

enum class ResponseType { kDiagnostics, kInterpretations, kResult };
std::string_view to_string(ResponseType t);

enum class ResponseStatus { kOk, kError, kPendingSelection, kAnswer };
std::string_view to_string(ResponseStatus s);

struct Response {
  ResponseType type = ResponseType::kResult;
  ResponseStatus status = ResponseStatus::kOk;
  Timestamp timestamp;  // UTC, also the utterance time of the envelope
  std::string text;
  std::optional<SentenceKind> kind;
  std::vector<InputDiagnostic> diagnostics;
  int sentence_ref = -1;
  std::vector<std::string> paraphrases;
  std::string mephisto;
  std::string envelope;
  std::optional<bool> verdict;       // yes/no questions
  std::vector<std::string> answers;  // generated sentences and report lines
  size_t accepted = 0;               // track records
  std::vector<TrackRejection> rejected;
  std::string message;
};

struct SessionConfig {
  std::string teller;
  int offset_minutes = 0;
};

struct SessionLogEntry {
  size_t seq = 0;
  Timestamp timestamp;
  std::string teller;
  std::string command;  // submit, choose, paragraph, tracks, generate
  nlohmann::json args;
  ResponseStatus status = ResponseStatus::kOk;
  std::string summary;
};

class SessionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Session {
 public:
  // Throws ContractViolation on an empty teller or an offset beyond 14h.
  Session(std::string id, SessionConfig config, const LexicalDatabase& db,
          std::shared_ptr<Clock> clock);

  Response submit(const std::string& text, SubmitMode mode = SubmitMode::kAuto,
                  bool speech = false);
  Response choose(int sentence_ref, size_t index);
  Response paragraph_break();
  Response ingest_tracks(const std::string& lines);
  Response generate(const std::string& term_text);

  // Re-runs every logged command at its logged time.
  static std::unique_ptr<Session> replay(std::string id, SessionConfig config,
                                         const LexicalDatabase& db,
                                         const std::vector<SessionLogEntry>& log);

  // Canonical text of the stored facts, rules, discourse state, symbol
  // counters and pending selections.
  std::string state_digest() const;

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  const std::vector<SessionLogEntry>& log() const { return log_; }
  const KnowledgeBase& kb() const { return kb_; }
  const DiscourseContext& context() const { return context_; }
  size_t pending_count() const { return pending_.size(); }

 private:
  struct Pending {
    InterpretationSet set;
    SubmitMode mode = SubmitMode::kAuto;
    Timestamp time;
    std::string text;
  };

  Timestamp tick();
  Response finish(Response r, std::string command, nlohmann::json args);
  Response complete(const DeepGraph& g, SubmitMode mode, const Timestamp& now, Response r);
  TimeContext time_context(const Timestamp& now) const;

  std::string id_;
  SessionConfig config_;
  const LexicalDatabase* db_;
  Parser parser_;
  std::shared_ptr<Clock> clock_;
  std::optional<Timestamp> last_;
  DiscourseContext context_;
  SymbolTable symbols_;
  KnowledgeBase kb_;
  std::map<int, Pending> pending_;
  int next_ref_ = 1;
  std::vector<SessionLogEntry> log_;
};

// Concurrent sessions; commands within one session run serialized.
class SessionManager {
 public:
  using ClockFactory = std::function<std::shared_ptr<Clock>()>;

  explicit SessionManager(const LexicalDatabase& db, ClockFactory clocks = {});

  std::string create(SessionConfig config);
  // Runs `fn` under the session's lock. Throws SessionError for an
  // unknown id.
  template <typename Fn>
  auto with(const std::string& id, Fn&& fn) {
    std::shared_ptr<Slot> slot = find(id);
    std::lock_guard lock(slot->mu);
    return fn(*slot->session);
  }

 private:
  struct Slot {
    std::mutex mu;
    std::unique_ptr<Session> session;
  };
  std::shared_ptr<Slot> find(const std::string& id);

  const LexicalDatabase* db_;
  ClockFactory clocks_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  int next_id_ = 1;
};

// ISO 8601 UTC, e.g. 2014-06-02T01:03:48Z.
std::string iso8601(const Timestamp& t);

nlohmann::json to_json(const Response& r);
nlohmann::json to_json(const SessionLogEntry& e);
nlohmann::json to_json(const InputDiagnostic& d);
SessionLogEntry log_entry_from_json(const nlohmann::json& j);

}  // namespace cnl

#endif  // CNL_SESSION_H_
