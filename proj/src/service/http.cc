// Copyright 2026 The Featherpipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "featherpipe/service/http.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "featherpipe/core/json_codec.h"

namespace featherpipe {
namespace {

HttpReply BadRequest(const std::string& why) {
  return {400, WriteCanonicalJson(Json{{"error", why}})};
}

}  // namespace

HttpReply HandleTransform(const ExecutablePlan& plan, std::string_view body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return BadRequest("malformed JSON at byte " + std::to_string(e.byte));
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    return BadRequest("body must be an object with a \"rows\" list");
  }
  const Json& rows = doc["rows"];
  const BatchResult result =
      plan.ExecuteBatch(rows.get_ref<const Json::array_t&>());
  Json out_rows = Json::array();
  for (const auto& row : result.rows) {
    if (row) out_rows.push_back(plan.OutputToJson(*row));
  }
  Json errors = Json::array();
  for (const RowError& e : result.errors) {
    errors.push_back({{"index", e.index},
                      {"code", std::string(ErrorCodeName(e.error.code()))},
                      {"message", e.error.what()}});
  }
  const bool all_failed = !rows.empty() && result.errors.size() == rows.size();
  return {all_failed ? 422 : 200,
          WriteCanonicalJson(Json{{"rows", std::move(out_rows)},
                                  {"errors", std::move(errors)}})};
}

HttpReply HandleHealth() {
  return {200, WriteCanonicalJson(Json{{"status", "ok"}})};
}

class InferenceServer::Impl {
 public:
  explicit Impl(ExecutablePlan plan) : plan_(std::move(plan)) {
    server_.Post("/v1/transform",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   Reply(HandleTransform(plan_, req.body), res);
                 });
    server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      Reply(HandleHealth(), res);
    });
    server_.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string what = "internal error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            what = e.what();
          } catch (...) {
          }
          spdlog::error("request failed: {}", what);
          Reply({500, WriteCanonicalJson(Json{{"error", what}})}, res);
        });
  }

  static void Reply(const HttpReply& reply, httplib::Response& res) {
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  }

  const ExecutablePlan plan_;
  httplib::Server server_;
};

InferenceServer::InferenceServer(ExecutablePlan plan)
    : impl_(std::make_unique<Impl>(std::move(plan))) {}

InferenceServer::~InferenceServer() = default;

int InferenceServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server_.bind_to_any_port(host);
  return impl_->server_.bind_to_port(host, port) ? port : -1;
}

bool InferenceServer::Run() { return impl_->server_.listen_after_bind(); }

void InferenceServer::Stop() { impl_->server_.stop(); }

void InferenceServer::WaitUntilReady() const { impl_->server_.wait_until_ready(); }

}  // namespace featherpipe
