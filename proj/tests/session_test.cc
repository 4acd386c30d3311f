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

#include <thread>

#include "cnl/errors.h"
#include "doctest.h"
#include "test_support.h"

namespace cnl {
namespace {

constexpr const char* kAmbiguous = "The woman in the car read the message on the sign.";
constexpr const char* kTrack =
    "ais,0,MR41_PAN-EAV,2014-06-02T00:45:00Z,-12.4412,130.7921,280,12,merchant_ship,tanker,neutral,"
    "panama\n";

struct Fixture {
  std::shared_ptr<ManualClock> clock = std::make_shared<ManualClock>(testing::utterance_utc());
  Session session{"s1", SessionConfig{"Duty_Officer", testing::kOffset}, testing::db(), clock};
};

TEST_CASE("asserting a sentence echoes its form inside an envelope stamped with the response time") {
  Fixture f;
  Response r = f.session.submit("The woman stood in the house.");
  CHECK(r.type == ResponseType::kResult);
  CHECK(r.status == ResponseStatus::kOk);
  CHECK(r.kind == SentenceKind::kDeclarative);
  CHECK(r.timestamp == testing::utterance_utc());
  CHECK(alpha_equal(read_form(r.mephisto), read_form(testing::kStoodInHouseForm),
                    golden_tolerance()));
  CHECK(r.envelope.starts_with("perceive(cnl_sensor,tells(teller(@("));
  CHECK(r.envelope.find("Duty_Officer") != std::string::npos);
  CHECK(r.envelope.find(to_string(Interval::point(r.timestamp))) != std::string::npos);
  CHECK(f.session.kb().facts().size() == 7);
  REQUIRE(f.session.log().size() == 1);
  CHECK(f.session.log()[0].teller == "Duty_Officer");
  CHECK(f.session.log()[0].command == "submit");
}

TEST_CASE("a question after an assertion answers with the generated sentence") {
  Fixture f;
  f.session.submit("The woman stood in the house.");
  f.clock->advance(5);
  Response r = f.session.submit("Who stood in the house?");
  CHECK(r.status == ResponseStatus::kAnswer);
  CHECK_FALSE(r.verdict);
  REQUIRE(r.answers.size() == 1);
  CHECK(r.answers[0] ==
        "The woman stood in the house before Monday the 2nd of June 2014 at 10:33:48 AM.");
  Response yes = f.session.submit("Did the woman stand?");
  CHECK(yes.verdict == true);
  CHECK(yes.message == "yes");
  Response no = f.session.submit("Did anyone see the woman?");
  CHECK(no.verdict == false);
  CHECK(no.answers.empty());
}

TEST_CASE("unknown words come back as diagnostics naming the word") {
  Fixture f;
  Response r = f.session.submit("The florgle slept.");
  CHECK(r.type == ResponseType::kDiagnostics);
  CHECK(r.status == ResponseStatus::kError);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].token == "florgle");
  CHECK(f.session.kb().facts().empty());
  CHECK(f.session.log().back().status == ResponseStatus::kError);
}

TEST_CASE("an ambiguous sentence waits for a choice between two paraphrased readings") {
  Fixture f;
  Response r = f.session.submit(kAmbiguous);
  CHECK(r.type == ResponseType::kInterpretations);
  CHECK(r.status == ResponseStatus::kPendingSelection);
  CHECK(r.paraphrases.size() == 2);
  CHECK(f.session.pending_count() == 1);
  CHECK(f.session.kb().facts().empty());

  Response bad = f.session.choose(r.sentence_ref, 2);
  CHECK(bad.status == ResponseStatus::kError);
  CHECK(f.session.pending_count() == 1);

  Response chosen = f.session.choose(r.sentence_ref, 0);
  CHECK(chosen.status == ResponseStatus::kOk);
  CHECK(chosen.text == kAmbiguous);
  CHECK(f.session.pending_count() == 0);
  CHECK_FALSE(f.session.kb().facts().empty());

  Response stale = f.session.choose(r.sentence_ref, 0);
  CHECK(stale.status == ResponseStatus::kError);
  CHECK(f.session.choose(99, 0).status == ResponseStatus::kError);
}

TEST_CASE("the chosen reading decides follow-up answers") {
  auto follow_up = [](const std::string& paraphrase_part) {
    Fixture f;
    Response r = f.session.submit(kAmbiguous);
    size_t index = 0;
    while (index < r.paraphrases.size() &&
           r.paraphrases[index].find(paraphrase_part) == std::string::npos)
      ++index;
    REQUIRE(index < r.paraphrases.size());
    f.session.choose(r.sentence_ref, index);
    return std::pair{f.session.submit("What is on the sign?"),
                     f.session.submit("Where did the woman read the message?")};
  };
  auto [noun_what, noun_where] = follow_up("which is on the sign");
  REQUIRE(noun_what.answers.size() == 1);
  CHECK(noun_what.answers[0] == "The message.");
  CHECK(noun_where.answers.empty());
  auto [verb_what, verb_where] = follow_up("read on the sign");
  CHECK(verb_what.answers.empty());
  REQUIRE(verb_where.answers.size() == 1);
  CHECK(verb_where.answers[0].find("on the sign") != std::string::npos);
}

TEST_CASE("pronouns resolve against earlier sentences and paragraph breaks clear them") {
  Fixture f;
  f.session.submit(kAmbiguous);
  f.session.choose(1, 0);
  Response when = f.session.submit("When did she read it?");
  CHECK(when.status == ResponseStatus::kAnswer);
  REQUIRE(when.answers.size() == 1);
  CHECK(when.answers[0].find("before Monday the 2nd of June 2014 at 10:33:48 AM") !=
        std::string::npos);
  f.session.paragraph_break();
  Response orphan = f.session.submit("She slept.");
  CHECK(orphan.status == ResponseStatus::kError);
  CHECK(f.session.log().back().command == "submit");
}

TEST_CASE("explicit modes must agree with the sentence form") {
  Fixture f;
  CHECK(f.session.submit("Who slept?", SubmitMode::kAssert).status == ResponseStatus::kError);
  CHECK(f.session.submit("The girl slept.", SubmitMode::kQuery).status == ResponseStatus::kError);
  CHECK(f.session.kb().facts().empty());
  CHECK(f.session.submit("The girl slept.", SubmitMode::kAssert).status == ResponseStatus::kOk);
  CHECK(f.session.submit("Who slept?", SubmitMode::kQuery).status == ResponseStatus::kAnswer);
}

TEST_CASE("speech input is reported as unsupported") {
  Fixture f;
  Response r = f.session.submit("The girl slept.", SubmitMode::kAuto, true);
  CHECK(r.status == ResponseStatus::kError);
  CHECK(r.message.find("unsupported") != std::string::npos);
  CHECK(f.session.kb().facts().empty());
}

TEST_CASE("one sentence per submission") {
  Fixture f;
  CHECK(f.session.submit("The girl slept. The boy slept.").status == ResponseStatus::kError);
  CHECK(f.session.submit("   ").status == ResponseStatus::kError);
}

TEST_CASE("directive after track ingestion renders the situation report") {
  Fixture f;
  Response missing = f.session.submit("Show merchant ship situation report on MR41_PAN-EAV.");
  CHECK(missing.status == ResponseStatus::kError);
  CHECK(missing.message.find("no such track") != std::string::npos);
  Response ingest = f.session.ingest_tracks(kTrack);
  CHECK(ingest.accepted == 1);
  Response report = f.session.submit("Show merchant ship situation report on MR41_PAN-EAV.");
  CHECK(report.kind == SentenceKind::kDirective);
  CHECK(report.status == ResponseStatus::kAnswer);
  REQUIRE(report.answers.size() >= 2);
  CHECK(report.answers[0] == "MR41_PAN-EAV is a merchant ship.");
  CHECK(report.answers[1].find("latitude -12.4412 and longitude 130.7921 on Monday the 2nd of June "
                               "2014 at 10:15:00 AM") != std::string::npos);
}

TEST_CASE("generate renders a term or reports why it cannot") {
  Fixture f;
  Response ok = f.session.generate(testing::kStoodInHouseForm);
  CHECK(ok.status == ResponseStatus::kAnswer);
  REQUIRE(ok.answers.size() == 1);
  CHECK(ok.answers[0] ==
        "The woman stood in the house before Monday the 2nd of June 2014 at 10:33:48 AM.");
  CHECK(f.session.generate("stands(@(skc1,t_1,s_1)").status == ResponseStatus::kError);
  CHECK(f.session.generate("florgles(@(skc1,t_1,s_1),[past,state]).").status ==
        ResponseStatus::kError);
}

TEST_CASE("log timestamps never decrease even when the clock goes back") {
  Fixture f;
  f.session.submit("The girl slept.");
  f.clock->advance(-3600);
  Response r = f.session.submit("The boy slept.");
  CHECK(r.timestamp == testing::utterance_utc());
  f.clock->advance(7200);
  f.session.paragraph_break();
  const auto& log = f.session.log();
  REQUIRE(log.size() == 3);
  for (size_t i = 1; i < log.size(); ++i) CHECK(log[i - 1].timestamp <= log[i].timestamp);
  CHECK(log[2].timestamp > log[1].timestamp);
}

// Drives one session through every command kind.
void script(Session& s, ManualClock& clock) {
  s.submit("The woman stood in the house.");
  clock.advance(2);
  s.submit(kAmbiguous);
  clock.advance(3);
  s.submit("Who stood in the house?");
  s.choose(1, 1);
  clock.advance(1);
  s.submit("When did she read it?");
  s.ingest_tracks(kTrack);
  s.submit("Show merchant ship situation report on MR41_PAN-EAV.");
  s.submit("The florgle slept.");
  s.generate(testing::kStoodInHouseForm);
  clock.advance(60);
  s.paragraph_break();
  s.submit("Women stand.");
  s.submit("Does the woman stand?");
  s.submit("The boy gave the girl a book.");
  s.submit(kAmbiguous);
}

TEST_CASE("replaying the log rebuilds the same session state") {
  Fixture f;
  script(f.session, *f.clock);
  std::vector<SessionLogEntry> log;
  for (const auto& e : f.session.log()) log.push_back(log_entry_from_json(to_json(e)));
  auto rebuilt = Session::replay("s1", f.session.config(), testing::db(), log);
  CHECK(rebuilt->state_digest() == f.session.state_digest());
  REQUIRE(rebuilt->log().size() == f.session.log().size());
  for (size_t i = 0; i < log.size(); ++i) {
    CHECK(to_json(rebuilt->log()[i]) == to_json(f.session.log()[i]));
  }
  CHECK(f.session.pending_count() == 1);
}

TEST_CASE("responses serialize to the documented JSON fields") {
  Fixture f;
  auto j = to_json(f.session.submit(kAmbiguous));
  CHECK(j["type"] == "interpretations");
  CHECK(j["status"] == "pending-selection");
  CHECK(j["timestamp"] == "2014-06-02T01:03:48Z");
  CHECK(j["sentence_ref"] == 1);
  CHECK(j["paraphrases"].size() == 2);
  auto d = to_json(f.session.submit("The florgle slept."));
  CHECK(d["diagnostics"][0]["token"] == "florgle");
  CHECK(d["diagnostics"][0]["severity"] == "unknown_word");
  auto t = to_json(f.session.ingest_tracks("bad line\n"));
  CHECK(t["accepted"] == 0);
  CHECK(t["rejected"][0]["line"] == 1);
}

TEST_CASE("sessions are isolated and each runs its commands in order") {
  SessionManager manager(testing::db(), [] {
    return std::make_shared<ManualClock>(testing::utterance_utc());
  });
  std::string a = manager.create({"Duty_Officer", testing::kOffset});
  std::string b = manager.create({"Watch_Keeper", 0});
  CHECK(a != b);
  CHECK_THROWS_AS(manager.create({"", 0}), ContractViolation);
  CHECK_THROWS_AS(manager.with("nope", [](Session& s) { return s.log().size(); }), SessionError);

  std::vector<std::thread> workers;
  const char* sentences[] = {"The girl slept.", "The boy slept.", "The man slept.", "The woman slept."};
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      for (int i = 0; i < 5; ++i)
        manager.with(w % 2 ? b : a, [&](Session& s) { return s.submit(sentences[w]); });
    });
  for (auto& t : workers) t.join();
  size_t a_log = manager.with(a, [](Session& s) { return s.log().size(); });
  size_t b_log = manager.with(b, [](Session& s) { return s.log().size(); });
  CHECK(a_log == 10);
  CHECK(b_log == 10);
  manager.with(a, [](Session& s) {
    for (size_t i = 0; i < s.log().size(); ++i) CHECK(s.log()[i].seq == i + 1);
    for (const auto& e : s.log()) CHECK(e.teller == "Duty_Officer");
    return 0;
  });
}

}  // namespace
}  // namespace cnl
