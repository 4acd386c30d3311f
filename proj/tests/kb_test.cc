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

#include "cnl/kb.h"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "cnl/effector.h"
#include "cnl/errors.h"
#include "doctest.h"
#include "kb_oracle.h"
#include "test_support.h"

namespace cnl {
namespace {

using testing::Discourse;
using testing::derive_by_enumeration;
using testing::entailed_by_endpoints;
using testing::focus_values;
using testing::is_time_constraint;
using testing::kFactPool;
using testing::kQuestionPool;
using testing::Oracle;
using testing::skolem_of;
using testing::store_of;
using Session = testing::KbSession;

GenerationOptions gen() { return GenerationOptions{&testing::db(), testing::kOffset}; }


TEST_CASE("asserting the standing sentence stores its seven clauses") {
  Session s;
  Envelope e = s.tell("The woman stood in the house.");
  CHECK(s.kb.facts().size() == 7);
  s.kb.assert_form(e);
  CHECK(s.kb.facts().size() == 7);
  CHECK(s.kb.log().size() == 2);
  CHECK(s.kb.log()[0].teller == "Duty_Officer");
  CHECK(s.kb.log()[0].envelope == print_envelope(e));
}

TEST_CASE("assert_form rejects queries") {
  Session s;
  const Translation& t = s.discourse.say("Who slept?");
  Envelope e = envelope(t.form, "Duty_Officer", SpeechAct::kQuery,
                        Interval::point(testing::utterance_utc()), &s.discourse.symbols);
  CHECK_THROWS_AS(s.kb.assert_form(e), ContractViolation);
  s.kb.log_envelope(e);
  CHECK(s.kb.log().size() == 1);
  CHECK(s.kb.facts().empty());
}

TEST_CASE("universal reading rule derives a reading fact in one step") {
  Session s;
  s.tell("All women always read all documents.");
  CHECK(s.kb.rules().size() == 1);
  CHECK(s.kb.facts().empty());
  const Envelope e1 = s.tell("A woman saw a document.");
  std::string woman = skolem_of(s.last(), "woman");
  std::string document = skolem_of(s.last(), "document");
  bool found = false;
  for (const auto& d : s.kb.derived())
    if (d.is_compound("reads") && d.args[0].args[0].name == woman &&
        d.args[1].args[0].name == document)
      found = true;
  CHECK(found);
  CHECK(s.kb.derived() == derive_by_enumeration(s.kb));
}

TEST_CASE("who-question binds the woman and renders the supporting sentence") {
  Session s;
  s.tell("The woman stood in the house.");
  std::string woman = skolem_of(s.last(), "woman");
  Answer a = s.ask("Who stood in the house?");
  REQUIRE(a.results.size() == 1);
  CHECK(print_term(a.results[0].bindings.at(a.focus_variable)) == woman);
  CHECK(generate(a.results[0].support, gen()) ==
        "The woman stood in the house before Monday the 2nd of June 2014 at 10:33:48 AM.");
  Oracle oracle(store_of(s.kb));
  CHECK(focus_values(oracle.solve(s.last().form, s.last().variables), a.focus_variable) ==
        focus_values(a));
}

TEST_CASE("question about an absent predicate has no answer") {
  Session s;
  s.tell("The woman stood in the house.");
  CHECK_FALSE(s.ask("Did anyone see the woman?").yes());
}

TEST_CASE("when-question after the ambiguous reading returns the before constraint") {
  Session s;
  s.tell("The woman in the car read the message on the sign.");
  std::string woman = skolem_of(s.last(), "woman");
  std::string message = skolem_of(s.last(), "message");
  Answer a = s.ask("When did she read it?");
  REQUIRE(a.results.size() == 1);
  const QueryResult& r = a.results[0];
  REQUIRE(r.temporal.size() == 1);
  CHECK(r.temporal[0].is_compound("before"));
  CHECK(print_term(r.temporal[0].args[1]) ==
        "invl(timestamp(2014,6,2,1,3,48),timestamp(2014,6,2,1,3,48))");
  CHECK(date_phrase(TemporalRelation::kBefore, *interval_from_term(r.temporal[0].args[1]),
                    testing::kOffset) == "before Monday the 2nd of June 2014 at 10:33:48 AM");
  bool reads = false;
  for (const auto& c : s.last().form)
    if (c.is_compound("reads"))
      reads = c.args[0].args[0].name == woman && c.args[1].args[0].name == message;
  CHECK(reads);
  Oracle oracle(store_of(s.kb));
  CHECK(focus_values(oracle.solve(s.last().form, s.last().variables), a.focus_variable) ==
        focus_values(a));
}

TEST_CASE("yes-no questions, habitual rules and negation") {
  Session s;
  s.tell("The woman stood in the house.");
  CHECK(s.ask("Did the woman stand?").yes());
  CHECK_FALSE(s.ask("Did the man stand?").yes());
  s.tell("Women stand.");
  Answer habitual = s.ask("Does the woman stand?");
  REQUIRE(habitual.yes());
  CHECK(generate(habitual.results[0].support, gen()) == "The woman stands.");
  CHECK(s.ask("Do all women stand?").yes());
  CHECK_FALSE(s.ask("Do all men stand?").yes());
  s.tell("The man did not read the document.");
  CHECK_FALSE(s.ask("Did the man read the document?").yes());
  CHECK(s.ask("Did the man not read the document?").yes());
}

TEST_CASE("wildcard questions reach events and locations") {
  Session s;
  s.tell("The girl slept.");
  s.tell("The ship is in the port.");
  s.tell("The boy gave the girl a book.");
  std::string book = skolem_of(s.last(), "book");
  Answer doing = s.ask("What did the girl do?");
  REQUIRE(doing.results.size() == 1);
  CHECK(generate(doing.results[0].support, gen()) ==
        "The girl slept before Monday the 2nd of June 2014 at 10:33:48 AM.");
  Answer where = s.ask("Where is the ship?");
  REQUIRE(where.results.size() == 1);
  CHECK(generate(where.results[0].support, gen()) == "The ship is in the port.");
  Answer given = s.ask("What did the boy give the girl?");
  REQUIRE(given.results.size() == 1);
  CHECK(print_term(given.results[0].bindings.at(given.focus_variable)) == book);
}

TEST_CASE("stored constraints entail queried ones exactly as closed-interval points do") {
  const int64_t base = to_epoch_seconds(testing::utterance_utc());
  auto interval = [&](int a, int b) {
    return Interval{from_epoch_seconds(base + a), from_epoch_seconds(base + b)};
  };
  auto holds = [](std::string_view rel, int t, int a, int b) {
    if (rel == "before") return t < a;
    if (rel == "after") return t > b;
    return a <= t && t <= b;
  };
  const char* relations[] = {"before", "after", "during"};
  size_t compared = 0;
  for (int sa = 0; sa <= 4; ++sa)
    for (int sb = sa; sb <= 4; ++sb)
      for (int qa = 0; qa <= 4; ++qa)
        for (int qb = qa; qb <= 4; ++qb)
          for (const char* sr : relations)
            for (const char* qr : relations) {
              bool pointwise = true;
              for (int t = -10; t <= 14; ++t)
                if (holds(sr, t, sa, sb) && !holds(qr, t, qa, qb)) pointwise = false;
              Term stored = Term::compound(sr, {Term::symbol("t_1"), to_term(interval(sa, sb))});
              Term queried = Term::compound(qr, {Term::symbol("t_1"), to_term(interval(qa, qb))});
              CHECK(constraint_entails(stored, queried) == pointwise);
              CHECK(entailed_by_endpoints(sr, interval(sa, sb), qr, interval(qa, qb)) == pointwise);
              ++compared;
            }
  CHECK(compared == 225 * 9);
}

TEST_CASE("answers agree with exhaustive enumeration on small random stores") {
  std::mt19937 rng(20140602);
  size_t stores = 0, questions = 0, answered = 0;
  for (int round = 0; round < 40; ++round) {
    Session s;
    for (const char* f : kFactPool)
      if (rng() % 2 && s.kb.facts().size() + s.kb.rules().size() < 43) s.tell(f);
    REQUIRE(s.kb.facts().size() + s.kb.derived().size() + s.kb.rules().size() <= 50);
    CHECK(s.kb.derived() == derive_by_enumeration(s.kb));
    Oracle oracle(store_of(s.kb));
    ++stores;
    for (const char* q : kQuestionPool) {
      Answer a = s.ask(q);
      const Translation& t = s.last();
      auto expected = oracle.solve(t.form, t.variables);
      INFO(q);
      CHECK(a.yes() == !expected.empty());
      if (!t.focus_variable.empty())
        CHECK(focus_values(a) == focus_values(expected, t.focus_variable));
      // Soundness: every binding re-instantiates the query onto the store.
      for (const auto& r : a.results)
        for (const auto& c : t.form)
          if (!is_time_constraint(c)) CHECK(oracle.covered(substitute(c, r.bindings)));
      ++questions;
      answered += a.yes();
    }
  }
  CHECK(stores == 40);
  CHECK(answered > questions / 5);
}

TEST_CASE("answering is deterministic") {
  auto run = [] {
    Session s;
    s.tell("The woman stood in the house.");
    s.tell("The man stood in the car.");
    Answer a = s.ask("Who stood?");
    std::vector<std::string> out;
    for (const auto& r : a.results) out.push_back(print_form(r.support));
    return out;
  };
  CHECK(run() == run());
  CHECK(run().size() == 2);
}

// ---- Tracks ---------------------------------------------------------------

const char* const kMerchantLine =
    "ais,0,MR41_PAN-EAV,2014-06-02T00:45:00Z,-12.4412,130.7921,280,12,merchant_ship,tanker,neutral,"
    "panama";

TEST_CASE("track line fields parse with the offset applied") {
  TrackRecord r = parse_track_line(kMerchantLine);
  CHECK(r.track_id == "MR41_PAN-EAV");
  CHECK(r.latitude == doctest::Approx(-12.4412));
  CHECK(r.speed == doctest::Approx(12));
  CHECK(r.track_class == "merchant_ship");
  CHECK(r.utc() == Timestamp{2014, 6, 2, 0, 45, 0});
  TrackRecord local = parse_track_line(
      "radar,34200,HX07_AUS-NAV,2014-06-02T10:00:00,-12.3,130.5,90,18.25,warship,frigate,friendly,"
      "australia");
  CHECK(local.utc() == Timestamp{2014, 6, 2, 0, 30, 0});
}

TEST_CASE("malformed track lines are rejected with a reason") {
  struct Bad {
    const char* line;
    const char* reason;
  };
  const Bad bad[] = {
      {"ais,0,MR41,2014-06-02T00:45:00Z,-12.4,130.7,280,12,merchant_ship,tanker,neutral", "12 fields"},
      {"ais,0,,2014-06-02T00:45:00Z,-12.4,130.7,280,12,merchant_ship,tanker,neutral,panama", "track_id"},
      {"ais,0,MR41,2014-13-02T00:45:00Z,-12.4,130.7,280,12,merchant_ship,tanker,neutral,panama", "time"},
      {"ais,0,MR41,2014-06-02T00:45:00Z,north,130.7,280,12,merchant_ship,tanker,neutral,panama", "latitude"},
      {"ais,0,MR41,2014-06-02T00:45:00Z,-95,130.7,280,12,merchant_ship,tanker,neutral,panama", "latitude"},
      {"ais,0,MR41,2014-06-02T00:45:00Z,-12.4,130.7,360,12,merchant_ship,tanker,neutral,panama", "direction"},
      {"ais,0,MR41,2014-06-02T00:45:00Z,-12.4,130.7,280,-1,merchant_ship,tanker,neutral,panama", "speed"},
      {"ais,x,MR41,2014-06-02T00:45:00Z,-12.4,130.7,280,12,merchant_ship,tanker,neutral,panama", "offset"},
  };
  for (const auto& b : bad) {
    INFO(b.line);
    try {
      parse_track_line(b.line);
      FAIL("accepted");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(b.reason) != std::string::npos);
    }
  }
  std::stringstream csv;
  csv << bad[0].line << "\n" << kMerchantLine << "\n" << bad[3].line << "\n";
  KnowledgeBase kb(testing::db());
  SymbolTable symbols;
  IngestResult r = kb.ingest_tracks(csv, &symbols);
  CHECK(r.accepted == 1);
  REQUIRE(r.rejected.size() == 2);
  CHECK(r.rejected[0].line == 1);
  CHECK(r.rejected[1].line == 3);
}

TEST_CASE("empty track stream leaves the store unchanged") {
  KnowledgeBase kb(testing::db());
  SymbolTable symbols;
  std::stringstream csv;
  IngestResult r = kb.ingest_tracks(csv, &symbols);
  CHECK(r.accepted == 0);
  CHECK(r.rejected.empty());
  CHECK(kb.facts().empty());
  CHECK(symbols.skolem_count() == 0);
}

TEST_CASE("a merchant ship record becomes typing and attribute clauses") {
  KnowledgeBase kb(testing::db());
  SymbolTable symbols;
  kb.ingest(parse_track_line(kMerchantLine), &symbols);
  std::map<std::string, Term> seen;
  for (const auto& c : kb.facts()) seen.emplace(c.name, c);
  REQUIRE(seen.count("merchant_ship"));
  CHECK(seen.at("merchant_ship").args[0].args[0].name == "skc1");
  CHECK(seen.count("MR41_PAN-EAV"));
  CHECK(print_term(seen.at("position")) == "position(@(skc1,t_1,s_1),-12.4412,130.7921)");
  CHECK(print_term(seen.at("during")) ==
        "during(t_1,invl(timestamp(2014,6,2,0,45,0),timestamp(2014,6,2,0,45,0)))");
  for (const char* attr : {"heading", "speed", "allegiance", "nationality"}) CHECK(seen.count(attr));
}

TEST_CASE("ingesting a thousand records is fast and allocates one skolem per track") {
  std::stringstream csv;
  csv << "source,temporal_offset_seconds,track_id,ISO8601-time,lat,lon,direction_deg,speed_knots,"
         "class,type,allegiance,nationality\n";
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    csv << "ais,0,TRK" << i << ",2014-06-02T00:" << (10 + i % 50) << ":00Z,"
        << -(10 + static_cast<int>(rng() % 80)) / 10.0 << "," << 130 + static_cast<int>(rng() % 9) << ".5,"
        << rng() % 360 << "," << rng() % 30 << ",merchant_ship,tanker,neutral,panama\n";
  }
  KnowledgeBase kb(testing::db());
  SymbolTable symbols;
  auto start = std::chrono::steady_clock::now();
  IngestResult r = kb.ingest_tracks(csv, &symbols);
  auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(r.accepted == 1000);
  CHECK(r.rejected.empty());
  CHECK(kb.track_count() == 1000);
  CHECK(symbols.skolem_count() == 1000);
  CHECK(elapsed < std::chrono::seconds(1));
}

TEST_CASE("situation report uses the latest record and names the track") {
  KnowledgeBase kb(testing::db());
  SymbolTable symbols;
  kb.ingest(parse_track_line(kMerchantLine), &symbols);
  kb.ingest(parse_track_line("ais,0,MR41_PAN-EAV,2014-06-02T00:15:00Z,-12.4634,130.8456,275,11.5,"
                             "merchant_ship,tanker,neutral,panama"),
            &symbols);
  CHECK(symbols.skolem_count() == 1);
  SituationReport report = kb.situation_report("merchant_ship", "MR41_PAN-EAV");
  CHECK_FALSE(report.diagnostic);
  auto lines = render_report(report.track, gen());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "MR41_PAN-EAV is a merchant ship.");
  CHECK(lines[1] ==
        "MR41_PAN-EAV was at latitude -12.4412 and longitude 130.7921 on Monday the 2nd of June "
        "2014 at 10:15:00 AM.");
  CHECK(lines[2] == "MR41_PAN-EAV was heading 280 degrees at 12 knots.");
  CHECK(lines[3] == "MR41_PAN-EAV is neutral.");
  CHECK(lines[4] == "MR41_PAN-EAV has nationality panama.");
}

TEST_CASE("situation report includes asserted sentences naming the track") {
  Session s;
  s.kb.ingest(parse_track_line(kMerchantLine), &s.discourse.symbols);
  s.tell("MR41_PAN-EAV sailed.");
  s.tell("The woman slept.");
  SituationReport report = s.kb.situation_report("vessel", "MR41_PAN-EAV");
  CHECK_FALSE(report.diagnostic);
  REQUIRE(report.related.size() == 1);
  CHECK(generate(report.related[0], gen()).starts_with("MR41_PAN-EAV sailed"));
}

TEST_CASE("situation report diagnoses unknown tracks and class mismatches") {
  KnowledgeBase kb(testing::db());
  SymbolTable symbols;
  SituationReport missing = kb.situation_report("merchant_ship", "ZZ99");
  REQUIRE(missing.diagnostic);
  CHECK(missing.diagnostic->find("no such track") != std::string::npos);
  CHECK(missing.track.empty());
  kb.ingest(parse_track_line(kMerchantLine), &symbols);
  SituationReport wrong = kb.situation_report("aircraft", "MR41_PAN-EAV");
  REQUIRE(wrong.diagnostic);
  CHECK(wrong.track.empty());
}

TEST_CASE("every rendered track field survives ingestion and reporting") {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    std::ostringstream line;
    double lat = -(static_cast<int>(rng() % 8000)) / 100.0;
    int lon = 100 + static_cast<int>(rng() % 70);
    int heading = static_cast<int>(rng() % 360);
    int speed = static_cast<int>(rng() % 40);
    line << "ais,0,T" << i << ",2014-06-02T00:" << (10 + i % 40) << ":00Z," << lat << "," << lon
         << "," << heading << "," << speed << ",warship,frigate,friendly,australia";
    KnowledgeBase kb(testing::db());
    SymbolTable symbols;
    TrackRecord record = parse_track_line(line.str());
    kb.ingest(record, &symbols);
    auto lines = render_report(kb.situation_report("", record.track_id).track, gen());
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    INFO(text);
    std::ostringstream lat_text;
    lat_text << lat;
    CHECK(text.find("is a warship.") != std::string::npos);
    CHECK(text.find("latitude " + lat_text.str() + " ") != std::string::npos);
    CHECK(text.find("longitude " + std::to_string(lon) + " ") != std::string::npos);
    CHECK(text.find("heading " + std::to_string(heading) + " degrees") != std::string::npos);
    CHECK(text.find("at " + std::to_string(speed) + " knots") != std::string::npos);
    CHECK(text.find("is friendly.") != std::string::npos);
    CHECK(text.find("nationality australia.") != std::string::npos);
    CHECK(text.find(date_phrase(TemporalRelation::kDuring, Interval::point(record.utc()), 570)) !=
          std::string::npos);
  }
}

}  // namespace
}  // namespace cnl
