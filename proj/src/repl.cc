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

#include "cnl/repl.h"

#include <fstream>
#include <iostream>
#include <sstream>

namespace cnl {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::string format_response(const Response& r) {
  std::ostringstream out;
  out << "[" << iso8601(r.timestamp) << "] " << to_string(r.status);
  if (r.kind) out << " " << to_string(*r.kind);
  out << "\n";
  for (const auto& d : r.diagnostics) out << "  diagnostic: " << d.message << "\n";
  if (r.type == ResponseType::kInterpretations)
    for (size_t i = 0; i < r.paraphrases.size(); ++i)
      out << "  choose " << r.sentence_ref << " " << i << ": " << r.paraphrases[i] << "\n";
  if (!r.mephisto.empty()) out << "  form: " << r.mephisto << "\n";
  if (r.verdict) out << "  verdict: " << (*r.verdict ? "yes" : "no") << "\n";
  for (const auto& a : r.answers) out << "  answer: " << a << "\n";
  for (const auto& x : r.rejected) out << "  rejected line " << x.line << ": " << x.reason << "\n";
  if (!r.message.empty() && r.type != ResponseType::kDiagnostics)
    out << "  message: " << r.message << "\n";
  return out.str();
}

bool Repl::line(const std::string& input) {
  std::string text = trim(input);
  if (text == ":quit") return false;
  if (text.starts_with("#")) return true;
  if (text.empty() || text == ":para") {
    out_ << format_response(session_.paragraph_break());
    return true;
  }
  if (text.starts_with(":choose")) {
    std::istringstream args(text.substr(7));
    int ref = -1;
    long index = -1;
    if (!(args >> ref >> index) || index < 0) {
      out_ << "error: usage :choose REF INDEX\n";
      return true;
    }
    out_ << format_response(session_.choose(ref, static_cast<size_t>(index)));
    return true;
  }
  if (text.starts_with(":tracks")) {
    std::filesystem::path file = trim(text.substr(7));
    if (file.is_relative() && !base_dir_.empty()) file = base_dir_ / file;
    std::ifstream in(file);
    if (file.empty() || !in) {
      out_ << "error: cannot open track file '" << file.filename().string() << "'\n";
      return true;
    }
    std::stringstream content;
    content << in.rdbuf();
    out_ << format_response(session_.ingest_tracks(content.str()));
    return true;
  }
  if (text.starts_with(":generate")) {
    out_ << format_response(session_.generate(trim(text.substr(9))));
    return true;
  }
  if (text == ":log") {
    for (const auto& e : session_.log()) out_ << to_json(e).dump() << "\n";
    return true;
  }
  if (text.starts_with(":")) {
    out_ << "error: unknown command '" << text << "'\n";
    return true;
  }
  out_ << format_response(session_.submit(text));
  return true;
}

void Repl::run(std::istream& in, bool echo, const std::string& prompt) {
  std::string input;
  while (true) {
    out_ << prompt << std::flush;
    if (!std::getline(in, input)) break;
    if (echo) out_ << "> " << input << "\n";
    if (!line(input)) break;
  }
}

}  // namespace cnl
