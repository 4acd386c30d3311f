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

// JSON-over-HTTP front end for a SessionManager. Request and response
// schemas are documented in docs/api.md.

#ifndef CNL_HTTP_SERVICE_H_
#define CNL_HTTP_SERVICE_H_

#include <memory>
#include <string>

#include "cnl/session.h"

namespace cnl {

class HttpService {
 public:
  explicit HttpService(SessionManager& sessions);
  ~HttpService();

  // Binds to `port`, or to a free port when `port` is 0. Returns the bound
  // port, or -1 on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); requires a successful bind().
  bool serve();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cnl

#endif  // CNL_HTTP_SERVICE_H_
