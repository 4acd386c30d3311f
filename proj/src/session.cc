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

#include "cnl/session.h"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "cnl/effector.h"
#include "cnl/errors.h"
#include "cnl/mephisto.h"
#include "cnl/surface.h"

namespace cnl {

namespace {

SpeechAct act_for(SentenceKind k) {
  switch (k) {
    case SentenceKind::kInterrogative: return SpeechAct::kQuery;
    case SentenceKind::kDirective: return SpeechAct::kDirect;
    default: return SpeechAct::kAssert;
  }
}

bool mode_accepts(SubmitMode mode, SpeechAct act) {
  switch (mode) {
    case SubmitMode::kAuto: return true;
    case SubmitMode::kAssert: return act == SpeechAct::kAssert;
    case SubmitMode::kQuery: return act == SpeechAct::kQuery;
    case SubmitMode::kDirective: return act == SpeechAct::kDirect;
  }
  return false;
}

Response error(Response r, std::string message) {
  r.type = ResponseType::kResult;
  r.status = ResponseStatus::kError;
  r.message = std::move(message);
  return r;
}

ResponseStatus status_from_string(std::string_view s) {
  for (auto st : {ResponseStatus::kOk, ResponseStatus::kError, ResponseStatus::kPendingSelection,
                  ResponseStatus::kAnswer})
    if (to_string(st) == s) return st;
  throw SessionError("bad status '" + std::string(s) + "'");
}

// The focused entity as a bare noun phrase, or the support clauses when
// that fails too.
std::string short_answer(const QueryResult& r, const std::string& focus,
                         const GenerationOptions& gen) {
  auto it = r.bindings.find(focus);
  if (it != r.bindings.end() && it->second.is_symbol()) {
    for (const auto& c : r.support) {
      if (c.kind != TermKind::kCompound || c.args.empty() || c.args[0].kind != TermKind::kAt ||
          c.args[0].args[0] != it->second)
        continue;
      try {
        std::string np = noun_phrase(r.support, c.args[0], gen);
        np[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(np[0])));
        return np + ".";
      } catch (const GenerationError&) {
        break;
      }
    }
  }
  return print_form(r.support);
}

}  // namespace

Timestamp SystemClock::now() {
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::system_clock::now().time_since_epoch());
  return from_epoch_seconds(secs.count());
}

std::string_view to_string(SubmitMode m) {
  switch (m) {
    case SubmitMode::kAuto: return "auto";
    case SubmitMode::kAssert: return "assert";
    case SubmitMode::kQuery: return "query";
    case SubmitMode::kDirective: return "directive";
  }
  return "auto";
}

std::optional<SubmitMode> submit_mode_from_string(std::string_view text) {
  for (auto m : {SubmitMode::kAuto, SubmitMode::kAssert, SubmitMode::kQuery, SubmitMode::kDirective})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::string_view to_string(ResponseType t) {
  switch (t) {
    case ResponseType::kDiagnostics: return "diagnostics";
    case ResponseType::kInterpretations: return "interpretations";
    case ResponseType::kResult: return "result";
  }
  return "result";
}

std::string_view to_string(ResponseStatus s) {
  switch (s) {
    case ResponseStatus::kOk: return "ok";
    case ResponseStatus::kError: return "error";
    case ResponseStatus::kPendingSelection: return "pending-selection";
    case ResponseStatus::kAnswer: return "answer";
  }
  return "ok";
}

std::string iso8601(const Timestamp& t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", t.year, t.month, t.day, t.hour,
                t.minute, t.second);
  return buf;
}

Session::Session(std::string id, SessionConfig config, const LexicalDatabase& db,
                 std::shared_ptr<Clock> clock)
    : id_(std::move(id)),
      config_(std::move(config)),
      db_(&db),
      parser_(db),
      clock_(std::move(clock)),
      kb_(db) {
  if (config_.teller.empty()) throw ContractViolation("session needs a teller name");
  if (config_.offset_minutes < -14 * 60 || config_.offset_minutes > 14 * 60)
    throw ContractViolation("UTC offset out of range");
  if (!clock_) clock_ = std::make_shared<SystemClock>();
}

Timestamp Session::tick() {
  Timestamp t = clock_->now();
  if (last_ && t < *last_) t = *last_;
  last_ = t;
  return t;
}

TimeContext Session::time_context(const Timestamp& now) const {
  return TimeContext{now, config_.offset_minutes, TemporalDirection::kPast};
}

Response Session::finish(Response r, std::string command, nlohmann::json args) {
  SessionLogEntry e;
  e.seq = log_.size() + 1;
  e.timestamp = r.timestamp;
  e.teller = config_.teller;
  e.command = std::move(command);
  e.args = std::move(args);
  e.status = r.status;
  e.summary = r.message.empty() ? r.mephisto : r.message;
  log_.push_back(std::move(e));
  return r;
}

Response Session::submit(const std::string& text, SubmitMode mode, bool speech) {
  Response r;
  r.timestamp = tick();
  r.text = text;
  nlohmann::json args = {{"text", text}, {"mode", to_string(mode)}, {"speech", speech}};
  if (speech) return finish(error(r, "speech input is unsupported"), "submit", args);
  size_t sentences = 0;
  for (const auto& p : segment(text, &db_->acronyms)) sentences += p.sentences.size();
  if (sentences == 0) return finish(error(r, "empty input"), "submit", args);
  if (sentences > 1) return finish(error(r, "submit one sentence at a time"), "submit", args);

  TokenStream ts = prepare(text, *db_);
  TimeContext tc = time_context(r.timestamp);
  r.diagnostics = precheck(ts, parser_, tc);
  if (!r.diagnostics.empty()) {
    r.type = ResponseType::kDiagnostics;
    r.status = ResponseStatus::kError;
    r.message = r.diagnostics.front().message;
    return finish(r, "submit", args);
  }
  std::vector<DeepGraph> graphs;
  std::string unresolved;
  for (const auto& tree : parser_.parse(ts, tc)) {
    try {
      for (auto& g : resolve(to_graph(tree), context_)) graphs.push_back(std::move(g));
    } catch (const UnresolvedAnaphor& e) {
      if (unresolved.empty()) unresolved = e.what();
    }
  }
  if (graphs.empty()) return finish(error(r, unresolved), "submit", args);
  InterpretationSet set = rank(std::move(graphs), PreferenceProfile{});
  set.sentence = text;
  if (set.status == SelectionStatus::kAwaitingSelection) {
    r.type = ResponseType::kInterpretations;
    r.status = ResponseStatus::kPendingSelection;
    r.sentence_ref = next_ref_++;
    r.paraphrases = set.paraphrases;
    r.message = std::to_string(set.candidates.size()) + " interpretations";
    pending_.emplace(r.sentence_ref, Pending{std::move(set), mode, r.timestamp, text});
    return finish(r, "submit", args);
  }
  return finish(complete(set.candidates.front(), mode, r.timestamp, r), "submit", args);
}

Response Session::choose(int sentence_ref, size_t index) {
  Response r;
  r.timestamp = tick();
  r.sentence_ref = sentence_ref;
  nlohmann::json args = {{"sentence_ref", sentence_ref}, {"index", index}};
  auto it = pending_.find(sentence_ref);
  if (it == pending_.end())
    return finish(error(r, "no pending selection for sentence " + std::to_string(sentence_ref)),
                  "choose", args);
  r.text = it->second.text;
  if (index >= it->second.set.candidates.size())
    return finish(error(r, "candidate index " + std::to_string(index) + " out of range"), "choose",
                  args);
  DeepGraph g = select(&it->second.set, index);
  SubmitMode mode = it->second.mode;
  pending_.erase(it);
  return finish(complete(g, mode, r.timestamp, r), "choose", args);
}

Response Session::complete(const DeepGraph& g, SubmitMode mode, const Timestamp& now, Response r) {
  SpeechAct act = act_for(g.kind);
  r.kind = g.kind;
  if (!mode_accepts(mode, act))
    return error(r, "mode " + std::string(to_string(mode)) + " does not accept a " +
                        std::string(to_string(g.kind)) + " sentence");
  try {
    Interval utterance = Interval::point(now);
    Translation t = translate(g, &symbols_, {db_, utterance, config_.offset_minutes});
    r.mephisto = print_form(t.form);
    Envelope env = envelope(t.form, config_.teller, act, utterance, &symbols_);
    r.envelope = print_envelope(env);
    GenerationOptions gen{db_, config_.offset_minutes};
    if (act == SpeechAct::kAssert) {
      kb_.assert_form(env);
      advance(&context_, t);
      r.status = ResponseStatus::kOk;
      return r;
    }
    kb_.log_envelope(env);
    r.status = ResponseStatus::kAnswer;
    if (act == SpeechAct::kQuery) {
      Answer a = kb_.answer(t);
      advance(&context_, t);
      if (!t.focus || t.focus->slot == QuerySlot::kYesNo)
        r.verdict = a.yes();
      for (const auto& res : a.results) {
        std::string sentence;
        try {
          sentence = cnl::generate(res.support, gen);
        } catch (const GenerationError&) {
          sentence = short_answer(res, a.focus_variable, gen);
        }
        if (std::find(r.answers.begin(), r.answers.end(), sentence) == r.answers.end())
          r.answers.push_back(sentence);
      }
      if (r.verdict) r.message = *r.verdict ? "yes" : "no";
      if (!r.verdict && r.answers.empty()) r.message = "no answer";
      return r;
    }
    const Term& directive = t.form.front();
    SituationReport report =
        kb_.situation_report(directive.args[0].name, directive.args[1].name);
    if (report.diagnostic) return error(r, *report.diagnostic);
    r.answers = render_report(report.track, gen);
    for (const auto& form : report.related) {
      try {
        r.answers.push_back(cnl::generate(form, gen));
      } catch (const GenerationError&) {
        r.answers.push_back(print_form(form));
      }
    }
    return r;
  } catch (const UnresolvedAnaphor& e) {
    return error(r, e.what());
  } catch (const ContractViolation& e) {
    return error(r, e.what());
  } catch (const GenerationError& e) {
    return error(r, e.what());
  }
}

Response Session::paragraph_break() {
  Response r;
  r.timestamp = tick();
  context_.paragraph_break();
  r.message = "paragraph break";
  return finish(r, "paragraph", nlohmann::json::object());
}

Response Session::ingest_tracks(const std::string& lines) {
  Response r;
  r.timestamp = tick();
  std::istringstream in(lines);
  IngestResult result = kb_.ingest_tracks(in, &symbols_);
  r.accepted = result.accepted;
  r.rejected = result.rejected;
  r.message = "accepted " + std::to_string(result.accepted) + ", rejected " +
              std::to_string(result.rejected.size());
  return finish(r, "tracks", {{"lines", lines}});
}

Response Session::generate(const std::string& term_text) {
  Response r;
  r.timestamp = tick();
  r.text = term_text;
  nlohmann::json args = {{"term", term_text}};
  try {
    MephistoForm form = read_form(term_text);
    r.mephisto = print_form(form);
    r.answers.push_back(cnl::generate(form, GenerationOptions{db_, config_.offset_minutes}));
    r.status = ResponseStatus::kAnswer;
  } catch (const TermSyntaxError& e) {
    r = error(r, e.what());
  } catch (const GenerationError& e) {
    r = error(r, e.what());
  }
  return finish(r, "generate", args);
}

std::unique_ptr<Session> Session::replay(std::string id, SessionConfig config,
                                         const LexicalDatabase& db,
                                         const std::vector<SessionLogEntry>& log) {
  auto clock = std::make_shared<ManualClock>(Timestamp{});
  auto s = std::make_unique<Session>(std::move(id), std::move(config), db, clock);
  for (const auto& e : log) {
    clock->set(e.timestamp);
    const auto& a = e.args;
    if (e.command == "submit") {
      auto mode = submit_mode_from_string(a.at("mode").get<std::string>());
      s->submit(a.at("text").get<std::string>(), mode.value_or(SubmitMode::kAuto),
                a.value("speech", false));
    } else if (e.command == "choose") {
      s->choose(a.at("sentence_ref").get<int>(), a.at("index").get<size_t>());
    } else if (e.command == "paragraph") {
      s->paragraph_break();
    } else if (e.command == "tracks") {
      s->ingest_tracks(a.at("lines").get<std::string>());
    } else if (e.command == "generate") {
      s->generate(a.at("term").get<std::string>());
    } else {
      throw SessionError("unknown logged command '" + e.command + "'");
    }
  }
  return s;
}

std::string Session::state_digest() const {
  std::ostringstream out;
  out << "facts\n";
  for (const auto& f : kb_.facts()) out << print_term(f) << "\n";
  out << "rules\n";
  for (const auto& r : kb_.rules()) out << print_term(r) << "\n";
  out << "envelopes\n";
  for (const auto& e : kb_.log()) out << e.envelope << "\n";
  out << "symbols " << symbols_.skolem_count() << " " << symbols_.time_count() << " "
      << symbols_.space_count() << "\n";
  out << "discourse " << context_.paragraph << " " << context_.sentence << "\n";
  for (const auto& r : context_.referents)
    out << r.skolem << " " << r.predicate << " " << r.role << " " << r.sentence << "\n";
  if (context_.last_event) out << "event " << context_.last_event->functor << "\n";
  out << "pending";
  for (const auto& [ref, p] : pending_) out << " " << ref << ":" << p.set.candidates.size();
  out << "\n";
  return out.str();
}

SessionManager::SessionManager(const LexicalDatabase& db, ClockFactory clocks)
    : db_(&db), clocks_(std::move(clocks)) {}

std::string SessionManager::create(SessionConfig config) {
  std::shared_ptr<Clock> clock = clocks_ ? clocks_() : std::make_shared<SystemClock>();
  std::lock_guard lock(mu_);
  std::string id = "s" + std::to_string(next_id_);
  auto slot = std::make_shared<Slot>();
  slot->session = std::make_unique<Session>(id, std::move(config), *db_, std::move(clock));
  ++next_id_;
  sessions_.emplace(id, std::move(slot));
  return id;
}

std::shared_ptr<SessionManager::Slot> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError("unknown session '" + id + "'");
  return it->second;
}

nlohmann::json to_json(const InputDiagnostic& d) {
  return {{"severity", to_string(d.severity)},
          {"token", d.token},
          {"begin", d.begin},
          {"end", d.end},
          {"message", d.message},
          {"suggestions", d.suggestions}};
}

nlohmann::json to_json(const Response& r) {
  nlohmann::json j = {{"type", to_string(r.type)},
                      {"status", to_string(r.status)},
                      {"timestamp", iso8601(r.timestamp)},
                      {"text", r.text},
                      {"answers", r.answers},
                      {"message", r.message}};
  if (r.kind) j["kind"] = to_string(*r.kind);
  if (!r.diagnostics.empty()) {
    j["diagnostics"] = nlohmann::json::array();
    for (const auto& d : r.diagnostics) j["diagnostics"].push_back(to_json(d));
  }
  if (r.sentence_ref >= 0) j["sentence_ref"] = r.sentence_ref;
  if (!r.paraphrases.empty()) j["paraphrases"] = r.paraphrases;
  if (!r.mephisto.empty()) j["mephisto"] = r.mephisto;
  if (!r.envelope.empty()) j["envelope"] = r.envelope;
  if (r.verdict) j["verdict"] = *r.verdict;
  if (r.accepted || !r.rejected.empty()) {
    j["accepted"] = r.accepted;
    j["rejected"] = nlohmann::json::array();
    for (const auto& x : r.rejected) j["rejected"].push_back({{"line", x.line}, {"reason", x.reason}});
  }
  return j;
}

nlohmann::json to_json(const SessionLogEntry& e) {
  return {{"seq", e.seq},         {"timestamp", iso8601(e.timestamp)},
          {"teller", e.teller},   {"command", e.command},
          {"args", e.args},       {"status", to_string(e.status)},
          {"summary", e.summary}};
}

SessionLogEntry log_entry_from_json(const nlohmann::json& j) {
  SessionLogEntry e;
  e.seq = j.at("seq").get<size_t>();
  try {
    e.timestamp = parse_iso8601(j.at("timestamp").get<std::string>());
  } catch (const std::invalid_argument& x) {
    throw SessionError(x.what());
  }
  e.teller = j.at("teller").get<std::string>();
  e.command = j.at("command").get<std::string>();
  e.args = j.at("args");
  e.status = status_from_string(j.at("status").get<std::string>());
  e.summary = j.value("summary", "");
  return e;
}

}  // namespace cnl
