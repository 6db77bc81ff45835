// Copyright 2026 The Authors.
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

// HTTP/JSON API, versioned under /api/v1:
//
//   GET  /api/v1/places     places with review and gender statistics
//   GET  /api/v1/aspects    aspect labels with seed terms
//   POST /api/v1/summarize  body {place, aspects, length_words,
//                           female_ratio, lambda, candidate_pool}
//
// Status codes: 400 invalid controls (field-level messages), 404 unknown
// place, 500 internal (opaque error id, details logged), 503 before the
// engine is installed.

#ifndef OPSUM_SERVICE_H_
#define OPSUM_SERVICE_H_

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "opsum/engine.h"
#include "opsum/summarizer.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace opsum {

struct HttpResponse {
  int status = 200;
  std::string body;
};

// Parses a summarize request body into controls with defaults applied
// (L = 100, fp = 0.5, all aspects). Type and range problems are returned as
// field errors; an empty vector means `controls` is usable.
std::vector<FieldError> ParseSummarizeRequest(absl::string_view body,
                                              ControlParams* controls);

class ApiService {
 public:
  explicit ApiService(std::shared_ptr<const Engine> engine = nullptr)
      : engine_(std::move(engine)) {}

  // Installs the engine once loading finishes; requests before that get 503.
  void SetEngine(std::shared_ptr<const Engine> engine);

  HttpResponse Places() const;
  HttpResponse Aspects() const;
  HttpResponse Summarize(absl::string_view body) const;

  // Routes the three endpoints on `server`; `this` must outlive it.
  void Register(httplib::Server& server) const;

 private:
  std::shared_ptr<const Engine> engine() const;

  mutable std::mutex mu_;
  std::shared_ptr<const Engine> engine_;
  mutable std::atomic<uint64_t> error_counter_{0};
};

}  // namespace opsum

#endif  // OPSUM_SERVICE_H_
