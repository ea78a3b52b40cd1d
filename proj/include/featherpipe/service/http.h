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
#ifndef FEATHERPIPE_SERVICE_HTTP_H_
#define FEATHERPIPE_SERVICE_HTTP_H_

// Request/response inference endpoint over one immutable plan.
//
//   POST /v1/transform  {"rows": [{...}, ...]}
//     -> {"rows": [{...}, ...], "errors": [{"index": i, "code": c,
//                                           "message": m}, ...]}
//   GET  /healthz       -> {"status": "ok"}
//
// "rows" in the reply holds the successful rows in request order; each
// failed row appears once in "errors" under its request index. Status is
// 200 when at least one row succeeded (or none were sent), 422 when every
// row failed and 400 when the body is not a {"rows": [...]} document.

#include <memory>
#include <string>
#include <string_view>

#include "featherpipe/runtime/plan.h"

namespace featherpipe {

struct HttpReply {
  int status;
  std::string body;
};

HttpReply HandleTransform(const ExecutablePlan& plan, std::string_view body);
HttpReply HandleHealth();

class InferenceServer {
 public:
  explicit InferenceServer(ExecutablePlan plan);
  ~InferenceServer();
  InferenceServer(const InferenceServer&) = delete;
  InferenceServer& operator=(const InferenceServer&) = delete;

  // Returns the bound port (port 0 picks a free one), or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); returns false if the listener failed.
  bool Run();
  // Stops accepting and lets in-flight requests finish. Thread-safe.
  void Stop();
  void WaitUntilReady() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_SERVICE_HTTP_H_
