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

// cnl: command-line front end.
//
//   cnl serve --port 8080 --lexicon data/lexicon
//   cnl parse --text "The man read the message." --json
//   cnl repl --teller Duty_Officer --offset +09:30
//   cnl batch --in tests/golden/corpus.in --golden tests/golden/corpus.out

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cnl/chronos.h"
#include "cnl/context.h"
#include "cnl/deep_graph.h"
#include "cnl/errors.h"
#include "cnl/http_service.h"
#include "cnl/lexicon.h"
#include "cnl/mephisto.h"
#include "cnl/parser.h"
#include "cnl/repl.h"
#include "cnl/session.h"
#include "cnl/surface.h"
#include "json.hpp"

namespace {

using cnl::Timestamp;

constexpr const char* kFixedClock = "2014-06-02T01:03:48Z";

std::filesystem::path lexicon_dir(const std::string& flag) {
  return flag.empty() ? cnl::LexicalDatabase::default_dir() : std::filesystem::path(flag);
}

int run_serve(const cnl::LexicalDatabase& db, const std::string& host, int port) {
  cnl::SessionManager sessions(db);
  cnl::HttpService service(sessions);
  int bound = service.bind(host, port);
  if (bound < 0) {
    std::cerr << "cnl: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cout << "listening on " << host << ":" << bound << std::endl;
  return service.serve() ? 0 : 1;
}

int run_parse(const cnl::LexicalDatabase& db, const std::string& text, int offset, bool json) {
  cnl::Parser parser(db);
  Timestamp now = cnl::parse_iso8601(kFixedClock);
  cnl::TimeContext tc{now, offset, cnl::TemporalDirection::kPast};
  cnl::TokenStream ts = cnl::prepare(text, db);
  nlohmann::json out = {{"text", text}};
  auto diagnostics = cnl::precheck(ts, parser, tc);
  if (!diagnostics.empty()) {
    out["diagnostics"] = nlohmann::json::array();
    for (const auto& d : diagnostics) out["diagnostics"].push_back(cnl::to_json(d));
    if (json) {
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& d : diagnostics) std::cout << "diagnostic: " << d.message << "\n";
    }
    return 2;
  }
  cnl::DiscourseContext context;
  cnl::TranslationOptions options{&db, cnl::Interval::point(now), offset};
  out["readings"] = nlohmann::json::array();
  for (const auto& tree : parser.parse(ts, tc)) {
    nlohmann::json reading = {{"tree", tree.bracketed()}, {"kind", cnl::to_string(tree.kind)}};
    try {
      auto graphs = cnl::resolve(cnl::to_graph(tree), context);
      for (const auto& g : graphs) {
        cnl::SymbolTable symbols;
        reading["graph"] = g.serialize();
        reading["mephisto"] = cnl::print_form(cnl::translate(g, &symbols, options).form);
        break;
      }
    } catch (const cnl::UnresolvedAnaphor& e) {
      reading["error"] = e.what();
    }
    out["readings"].push_back(reading);
  }
  if (json) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  size_t i = 0;
  for (const auto& r : out["readings"]) {
    std::cout << "reading " << i++ << "\n" << r["tree"].get<std::string>() << "\n";
    if (r.contains("mephisto")) std::cout << "form: " << r["mephisto"].get<std::string>() << "\n";
    if (r.contains("error")) std::cout << "error: " << r["error"].get<std::string>() << "\n";
  }
  return 0;
}

std::shared_ptr<cnl::Clock> make_clock(const std::string& iso) {
  if (iso.empty()) return std::make_shared<cnl::SystemClock>();
  return std::make_shared<cnl::ManualClock>(cnl::parse_iso8601(iso));
}

int run_repl(const cnl::LexicalDatabase& db, const cnl::SessionConfig& config,
             const std::string& clock) {
  cnl::Session session("repl", config, db, make_clock(clock));
  cnl::Repl repl(session, std::cout, std::filesystem::current_path());
  std::cout << "teller " << config.teller << ", UTC" << cnl::format_utc_offset(config.offset_minutes)
            << "; :quit to exit\n";
  repl.run(std::cin, false, "> ");
  return 0;
}

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open '" + file.string() + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_batch(const cnl::LexicalDatabase& db, const cnl::SessionConfig& config,
              const std::string& input, const std::string& golden, const std::string& base,
              bool update) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "cnl: cannot open '" << input << "'\n";
    return 1;
  }
  cnl::Session session("batch", config, db,
                       std::make_shared<cnl::ManualClock>(cnl::parse_iso8601(kFixedClock)));
  std::ostringstream transcript;
  cnl::Repl repl(session, transcript, base.empty() ? std::filesystem::current_path() : std::filesystem::path(base));
  repl.run(in, true);
  if (golden.empty()) {
    std::cout << transcript.str();
    return 0;
  }
  if (update) {
    std::ofstream(golden) << transcript.str();
    std::cout << "wrote " << golden << "\n";
    return 0;
  }
  std::string expected = slurp(golden);
  if (expected == transcript.str()) {
    std::cout << "transcript matches " << golden << "\n";
    return 0;
  }
  std::istringstream want(expected), got(transcript.str());
  std::string a, b;
  for (size_t line = 1;; ++line) {
    bool ha = static_cast<bool>(std::getline(want, a));
    bool hb = static_cast<bool>(std::getline(got, b));
    if (!ha && !hb) break;
    if (!ha || !hb || a != b) {
      std::cerr << golden << ":" << line << ": transcript differs\n  golden: "
                << (ha ? a : "<end>") << "\n  actual: " << (hb ? b : "<end>") << "\n";
      break;
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled-language knowledge engine"};
  app.require_subcommand(1);
  std::string lexicon;
  app.add_option("--lexicon", lexicon, "Lexicon directory")->check(CLI::ExistingDirectory);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Port, 0 for any free port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--lexicon", lexicon, "Lexicon directory")->check(CLI::ExistingDirectory);

  std::string text;
  bool json = false;
  std::string offset = "+09:30";
  auto* parse = app.add_subcommand("parse", "Parse one sentence");
  parse->add_option("--text", text, "Sentence")->required();
  parse->add_flag("--json", json, "Emit JSON");
  parse->add_option("--offset", offset, "UTC offset, e.g. +09:30");

  cnl::SessionConfig config{"Duty_Officer", 0};
  std::string clock;
  auto* repl = app.add_subcommand("repl", "Interactive session");
  repl->add_option("--teller", config.teller, "Teller name");
  repl->add_option("--offset", offset, "UTC offset, e.g. +09:30");
  repl->add_option("--clock", clock, "Fixed UTC clock, e.g. 2014-06-02T01:03:48Z");

  std::string input, golden, base;
  bool update = false;
  auto* batch = app.add_subcommand("batch", "Replay a script against a golden transcript");
  batch->add_option("--in", input, "Script, one command per line")->required();
  batch->add_option("--golden", golden, "Expected transcript");
  batch->add_option("--base", base, "Directory for relative :tracks paths");
  batch->add_option("--teller", config.teller, "Teller name");
  batch->add_option("--offset", offset, "UTC offset, e.g. +09:30");
  batch->add_flag("--update", update, "Rewrite the golden transcript");

  CLI11_PARSE(app, argc, argv);
  try {
    cnl::LexicalDatabase db = cnl::LexicalDatabase::load(lexicon_dir(lexicon));
    config.offset_minutes = cnl::parse_utc_offset(offset);
    if (*serve) return run_serve(db, host, port);
    if (*parse) return run_parse(db, text, config.offset_minutes, json);
    if (*repl) return run_repl(db, config, clock);
    return run_batch(db, config, input, golden, base, update);
  } catch (const std::exception& e) {
    std::cerr << "cnl: " << e.what() << "\n";
    return 1;
  }
}
