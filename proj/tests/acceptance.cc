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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "allen_oracle.h"
#include "anaphora_suite.h"
#include "cnl/effector.h"
#include "cnl/kb.h"
#include "cnl/session.h"
#include "corpus.h"
#include "kb_oracle.h"
#include "random_corpus.h"
#include "reference_forms.h"
#include "test_support.h"

namespace cnl {
namespace {

using testing::db;
using testing::parser;
using testing::time_context;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Verdict()>& check) {
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
  std::fflush(stdout);
}

Verdict golden_translation() {
  constexpr double kLimit = 1.0;
  auto start = Clock::now();
  size_t matched = 0;
  std::string first_miss;
  for (const auto& r : testing::reference_forms()) {
    auto t = testing::translate_one(r.sentence);
    if (alpha_equal(t.form, read_form(r.form), golden_tolerance())) {
      ++matched;
    } else if (first_miss.empty()) {
      first_miss = r.sentence;
    }
  }
  double elapsed = seconds_since(start);
  size_t total = testing::reference_forms().size();
  std::ostringstream d;
  d << matched << "/" << total << " alpha-equal, " << elapsed << " s (limit " << kLimit << " s)";
  if (!first_miss.empty()) d << ", first mismatch: " << first_miss;
  return {matched == total && total == 6 && elapsed < kLimit, d.str()};
}

Verdict golden_generation() {
  const std::string expected =
      "The woman stood in the house before Monday the 2nd of June 2014 at 10:33:48 AM.";
  std::string got = generate(read_form(testing::kStoodInHouseForm),
                             GenerationOptions{&db(), testing::kOffset});
  return {got == expected, "\"" + got + "\"" + (got == expected ? " byte-identical" : "")};
}

Verdict corpus_coverage() {
  size_t clean = 0;
  std::string first_bad;
  for (const auto& s : testing::kCorpus) {
    TokenStream ts = prepare(s, db());
    bool ok = precheck(ts, parser(), time_context()).empty() &&
              !parser().parse(ts, time_context()).empty();
    clean += ok;
    if (!ok && first_bad.empty()) first_bad = s;
  }
  std::vector<DeepGraph> graphs;
  for (const auto& tree : testing::parse(testing::kAmbiguousSentence))
    graphs.push_back(to_graph(tree));
  InterpretationSet set = rank(std::move(graphs), PreferenceProfile{});
  std::ostringstream d;
  d << clean << "/" << testing::kCorpus.size() << " parse without diagnostics; ambiguous sentence "
    << set.candidates.size() << " interpretations (expected 2)";
  if (!first_bad.empty()) d << ", first failure: " << first_bad;
  return {clean == testing::kCorpus.size() && set.candidates.size() == 2, d.str()};
}

Verdict utc_anchor() {
  const std::string expected = "invl(timestamp(2014,6,2,1,3,48),timestamp(2014,6,2,1,3,48))";
  LocalDateTime local{2014, 6, 2, 10, 33, 48};
  Timestamp utc = utc_normalize(local, parse_utc_offset("+09:30"));
  bool monday = weekday_index(local) == 0;
  testing::Discourse d;
  const Translation& t = d.say("The woman stood in the house.");
  Envelope e = envelope(t.form, "Duty_Officer", SpeechAct::kAssert, Interval::point(utc),
                        &d.symbols);
  std::string printed = print_envelope(e);
  bool anchored = printed.find("," + expected + ",") != std::string::npos;
  bool stable = read_term(printed) == e.term && print_term(read_term(printed)) == printed;
  std::string interval = print_term(to_term(Interval::point(utc)));
  return {monday && anchored && stable && interval == expected,
          "local Mon 2014-06-02 10:33:48 +09:30 -> " + interval +
              (anchored ? " in envelope" : " missing from envelope") +
              (stable ? ", serialization stable" : ", serialization unstable")};
}

Verdict allen_algebra() {
  size_t pairs = 0, agree = 0;
  for (int as = 0; as <= 4; ++as)
    for (int ae = as; ae <= 4; ++ae)
      for (int bs = 0; bs <= 4; ++bs)
        for (int be = bs; be <= 4; ++be) {
          auto expected = testing::allen_oracle(as, ae, bs, be);
          Interval a = testing::unit_interval(as, ae), b = testing::unit_interval(bs, be);
          ++pairs;
          agree += expected.size() == 1 && allen_relation(a, b) == expected[0];
        }
  size_t involutions = 0;
  for (AllenRelation r : kAllAllenRelations) involutions += converse(converse(r)) == r;
  std::ostringstream d;
  d << agree << "/" << pairs << " pairs match the endpoint oracle; converse involution "
    << involutions << "/13";
  return {pairs == 225 && agree == pairs && involutions == 13, d.str()};
}

Verdict roundtrip_property() {
  constexpr size_t kForms = 250;
  constexpr double kLimit = 30.0;
  auto start = Clock::now();
  testing::RandomCorpus corpus(db(), 20140602);
  GenerationOptions gen{&db(), testing::kOffset};
  size_t held = 0;
  std::string first_bad;
  for (const auto& s : corpus.sentences(kForms)) {
    bool ok = false;
    try {
      auto t = testing::translate_one(s);
      ok = validate_roundtrip(t.form, parser(), time_context(), gen).exact;
    } catch (const std::exception&) {
    }
    held += ok;
    if (!ok && first_bad.empty()) first_bad = s;
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << held << "/" << kForms << " generated forms roundtrip, " << elapsed << " s (limit " << kLimit
    << " s)";
  if (!first_bad.empty()) d << ", first failure: " << first_bad;
  return {held == kForms && elapsed < kLimit, d.str()};
}

// Asserts reading `index` of `text` into `s`.
void tell_reading(testing::KbSession* s, const std::string& text, size_t index) {
  testing::Discourse& d = s->discourse;
  std::vector<DeepGraph> graphs;
  for (const auto& tree : testing::parse(text))
    for (auto& g : resolve(to_graph(tree), d.context)) graphs.push_back(std::move(g));
  InterpretationSet set = rank(std::move(graphs), PreferenceProfile{});
  DeepGraph g = select(&set, index);
  Translation t = translate(g, &d.symbols, testing::translation_options());
  advance(&d.context, t);
  s->kb.assert_form(envelope(t.form, "Duty_Officer", SpeechAct::kAssert,
                             Interval::point(testing::utterance_utc()), &d.symbols));
  d.history.push_back(std::move(t));
}

bool agrees_with_oracle(testing::KbSession& s, const Answer& a) {
  testing::Oracle oracle(testing::store_of(s.kb));
  const Translation& t = s.last();
  auto expected = oracle.solve(t.form, t.variables);
  if (a.yes() != !expected.empty()) return false;
  if (!t.focus_variable.empty() &&
      testing::focus_values(a) != testing::focus_values(expected, t.focus_variable))
    return false;
  return true;
}

Verdict query_answering() {
  std::vector<std::string> problems;
  {
    testing::KbSession s;
    s.tell("The woman stood in the house.");
    std::string woman = testing::skolem_of(s.last(), "woman");
    Answer a = s.ask("Who stood in the house?");
    bool bound = a.results.size() == 1 &&
                 print_term(a.results[0].bindings.at(a.focus_variable)) == woman;
    if (!bound) problems.push_back("who-question did not bind the woman");
    if (!agrees_with_oracle(s, a)) problems.push_back("who-question disagrees with oracle");
  }
  for (size_t reading = 0; reading < 2; ++reading) {
    testing::KbSession s;
    tell_reading(&s, testing::kAmbiguousSentence, reading);
    std::string woman = testing::skolem_of(s.last(), "woman");
    std::string message = testing::skolem_of(s.last(), "message");
    Answer a = s.ask("When did she read it?");
    bool resolved = false;
    for (const auto& c : s.last().form)
      if (c.is_compound("reads"))
        resolved = c.args[0].args[0].name == woman && c.args[1].args[0].name == message;
    bool before = a.results.size() == 1 && a.results[0].temporal.size() == 1 &&
                  a.results[0].temporal[0].is_compound("before") &&
                  print_term(a.results[0].temporal[0].args[1]) ==
                      "invl(timestamp(2014,6,2,1,3,48),timestamp(2014,6,2,1,3,48))";
    std::string tag = " (reading " + std::to_string(reading) + ")";
    if (!resolved) problems.push_back("she/it not resolved to woman/message" + tag);
    if (!before) problems.push_back("when-question lacks the before constraint" + tag);
    if (!agrees_with_oracle(s, a)) problems.push_back("when-question disagrees with oracle" + tag);
  }
  std::mt19937 rng(20140602);
  size_t questions = 0, agreed = 0, max_store = 0;
  for (int round = 0; round < 40; ++round) {
    testing::KbSession s;
    for (const char* f : testing::kFactPool)
      if (rng() % 2 && s.kb.facts().size() + s.kb.rules().size() < 43) s.tell(f);
    max_store = std::max(max_store, s.kb.facts().size() + s.kb.derived().size() +
                                        s.kb.rules().size());
    for (const char* q : testing::kQuestionPool) {
      Answer a = s.ask(q);
      ++questions;
      agreed += agrees_with_oracle(s, a);
    }
  }
  if (max_store > 50) problems.push_back("store exceeded 50 clauses");
  std::ostringstream d;
  d << "scripted checks " << (problems.empty() ? "ok" : problems.front()) << "; oracle agreement "
    << agreed << "/" << questions << " over 40 random stores of <= " << max_store << " clauses";
  return {problems.empty() && agreed == questions, d.str()};
}

Verdict anaphora_scoping() {
  size_t passed = 0, bound = 0;
  std::string first_bad;
  for (const auto& c : testing::anaphora_suite()) {
    auto outcome = testing::run_anaphora_case(c);
    passed += outcome.passed;
    bound += outcome.bound;
    if (!outcome.passed && first_bad.empty())
      first_bad = c.sentences.back() + " [" + c.anaphor + "]: " + outcome.failure;
  }
  size_t total = testing::anaphora_suite().size();
  std::ostringstream d;
  d << passed << "/" << total << " cases, " << bound
    << " bindings agree and stay within their paragraph";
  if (!first_bad.empty()) d << ", first failure: " << first_bad;
  return {total == 20 && passed == total, d.str()};
}

Verdict track_pipeline() {
  constexpr double kLimit = 1.0;
  std::stringstream csv;
  csv << "source,temporal_offset_seconds,track_id,ISO8601-time,lat,lon,direction_deg,speed_knots,"
         "class,type,allegiance,nationality\n";
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i)
    csv << "ais,0,TRK" << i << ",2014-06-02T00:" << (10 + i % 50) << ":00Z,"
        << -(10 + static_cast<int>(rng() % 80)) / 10.0 << "," << 130 + static_cast<int>(rng() % 9)
        << ".5," << rng() % 360 << "," << rng() % 30 << ",merchant_ship,tanker,neutral,panama\n";
  KnowledgeBase kb(db());
  SymbolTable symbols;
  auto start = Clock::now();
  IngestResult ingested = kb.ingest_tracks(csv, &symbols);
  double elapsed = seconds_since(start);

  std::stringstream sample;
  sample << "source,temporal_offset_seconds,track_id,ISO8601-time,lat,lon,direction_deg,"
            "speed_knots,class,type,allegiance,nationality\n"
            "ais,0,MR41_PAN-EAV,2014-06-02T00:15:00Z,-12.4634,130.8456,275,11.5,merchant_ship,"
            "tanker,neutral,panama\n"
            "ais,0,MR41_PAN-EAV,2014-06-02T00:45:00Z,-12.4412,130.7921,280,12,merchant_ship,"
            "tanker,neutral,panama\n";
  Session session("acceptance", SessionConfig{"Duty_Officer", testing::kOffset}, db(),
                  std::make_shared<ManualClock>(testing::utterance_utc()));
  session.ingest_tracks(sample.str());
  Response r = session.submit("Show merchant ship situation report on MR41_PAN-EAV");
  std::string text;
  for (const auto& line : r.answers) text += line + "\n";
  auto has = [&](const std::string& s) { return text.find(s) != std::string::npos; };
  bool named = has("MR41_PAN-EAV is a merchant ship.");
  bool latest = has("latitude -12.4412 and longitude 130.7921") &&
                has("on Monday the 2nd of June 2014 at 10:15:00 AM");
  std::ostringstream d;
  d << ingested.accepted << "/1000 records in " << elapsed << " s (limit " << kLimit
    << " s); report " << (named ? "names id and class" : "lacks id or class") << ", "
    << (latest ? "gives latest position and time" : "lacks latest position or time");
  return {ingested.accepted == 1000 && ingested.rejected.empty() && elapsed < kLimit &&
              r.status == ResponseStatus::kAnswer && named && latest,
          d.str()};
}

}  // namespace
}  // namespace cnl

int main() {
  using namespace cnl;
  report("golden_translation", golden_translation);
  report("golden_generation", golden_generation);
  report("corpus_coverage", corpus_coverage);
  report("utc_anchor", utc_anchor);
  report("allen_algebra", allen_algebra);
  report("roundtrip_property", roundtrip_property);
  report("query_answering", query_answering);
  report("anaphora_scoping", anaphora_scoping);
  report("track_pipeline", track_pipeline);
  return failures == 0 ? 0 : 1;
}
