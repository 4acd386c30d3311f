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

#include "cnl/http_service.h"

#include "cnl/errors.h"
#include "httplib.h"

namespace cnl {

namespace {

using nlohmann::json;

void reply(httplib::Response& res, int code, const json& body) {
  res.status = code;
  res.set_content(body.dump(), "application/json");
}

// A plain-text body is taken as track lines.
json parse_body(const httplib::Request& req) {
  if (req.get_header_value("Content-Type").starts_with("text/")) return {{"lines", req.body}};
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body);
  if (!j.is_object()) throw json::type_error::create(302, "request body must be an object", nullptr);
  return j;
}

int offset_from(const json& j) {
  if (!j.contains("utc_offset")) return 0;
  const json& v = j.at("utc_offset");
  if (v.is_number_integer()) return v.get<int>();
  return parse_utc_offset(v.get<std::string>());
}

}  // namespace

struct HttpService::Impl {
  SessionManager* sessions;
  httplib::Server server;

  // Runs a session command and maps failures to HTTP errors.
  template <typename Fn>
  void session_call(const httplib::Request& req, httplib::Response& res, Fn&& fn) {
    try {
      json body = parse_body(req);
      std::string id = req.matches[1];
      json out = sessions->with(id, [&](Session& s) { return fn(s, body); });
      reply(res, 200, out);
    } catch (const SessionError& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", std::string("bad request: ") + e.what()}});
    } catch (const std::invalid_argument& e) {
      reply(res, 400, {{"error", e.what()}});
    }
  }

  void routes() {
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        json body = parse_body(req);
        SessionConfig config{body.at("teller").get<std::string>(), offset_from(body)};
        std::string id = sessions->create(config);
        reply(res, 201,
              {{"id", id},
               {"teller", config.teller},
               {"utc_offset", format_utc_offset(config.offset_minutes)}});
      } catch (const json::exception& e) {
        reply(res, 400, {{"error", std::string("bad request: ") + e.what()}});
      } catch (const ContractViolation& e) {
        reply(res, 400, {{"error", e.what()}});
      } catch (const ChronosError& e) {
        reply(res, 400, {{"error", e.what()}});
      }
    });
    server.Post(R"(/sessions/([^/]+)/submit)", [this](const auto& req, auto& res) {
      session_call(req, res, [](Session& s, const json& b) {
        auto mode = submit_mode_from_string(b.value("mode", "auto"));
        if (!mode) throw std::invalid_argument("unknown mode '" + b.value("mode", "") + "'");
        return to_json(s.submit(b.at("text").get<std::string>(), *mode, b.value("speech", false)));
      });
    });
    server.Post(R"(/sessions/([^/]+)/choose)", [this](const auto& req, auto& res) {
      session_call(req, res, [](Session& s, const json& b) {
        int index = b.at("index").get<int>();
        if (index < 0) throw std::invalid_argument("index must be non-negative");
        return to_json(s.choose(b.at("sentence_ref").get<int>(), static_cast<size_t>(index)));
      });
    });
    server.Post(R"(/sessions/([^/]+)/paragraph)", [this](const auto& req, auto& res) {
      session_call(req, res, [](Session& s, const json&) { return to_json(s.paragraph_break()); });
    });
    server.Post(R"(/sessions/([^/]+)/tracks)", [this](const auto& req, auto& res) {
      session_call(req, res, [](Session& s, const json& b) {
        return to_json(s.ingest_tracks(b.at("lines").get<std::string>()));
      });
    });
    server.Post(R"(/sessions/([^/]+)/generate)", [this](const auto& req, auto& res) {
      session_call(req, res, [](Session& s, const json& b) {
        return to_json(s.generate(b.at("term").get<std::string>()));
      });
    });
    server.Get(R"(/sessions/([^/]+)/log)", [this](const auto& req, auto& res) {
      session_call(req, res, [](Session& s, const json&) {
        json entries = json::array();
        for (const auto& e : s.log()) entries.push_back(to_json(e));
        return json{{"session", s.id()}, {"teller", s.config().teller}, {"entries", entries}};
      });
    });
  }
};

HttpService::HttpService(SessionManager& sessions) : impl_(std::make_unique<Impl>()) {
  impl_->sessions = &sessions;
  impl_->routes();
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::serve() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpService::running() const { return impl_->server.is_running(); }

}  // namespace cnl
