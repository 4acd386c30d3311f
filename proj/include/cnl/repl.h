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

// Line-oriented session driver shared by the interactive REPL and the
// batch transcript runner.
//
//   <sentence>          submit
//   (empty line)        paragraph break, as does :para
//   :choose REF INDEX   pick a reading of a pending sentence
//   :tracks FILE        ingest a track file
//   :generate TERM      render a Mephisto form
//   :log                print the session log
//   :quit               stop
//   # ...               comment

#ifndef CNL_REPL_H_
#define CNL_REPL_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cnl/session.h"

namespace cnl {

// Transcript lines for one response, each ending in a newline.
std::string format_response(const Response& r);

class Repl {
 public:
  // Relative :tracks paths resolve against `base_dir`.
  Repl(Session& session, std::ostream& out, std::filesystem::path base_dir = {})
      : session_(session), out_(out), base_dir_(std::move(base_dir)) {}

  // Handles one input line; false after :quit.
  bool line(const std::string& input);
  // Reads until end of input or :quit. Echoes each input line when
  // `echo` is set.
  void run(std::istream& in, bool echo, const std::string& prompt = "");

 private:
  Session& session_;
  std::ostream& out_;
  std::filesystem::path base_dir_;
};

}  // namespace cnl

#endif  // CNL_REPL_H_
