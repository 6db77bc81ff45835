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

#include "opsum/service.h"

#include <chrono>
#include <cmath>
#include <iostream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "httplib.h"
#include "json.hpp"

namespace opsum {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

HttpResponse JsonResponse(int status, const ordered_json& body) {
  return {status, body.dump(2) + "\n"};
}

HttpResponse ErrorResponse(int status, absl::string_view message) {
  return JsonResponse(status, ordered_json{{"error", message}});
}

HttpResponse FieldErrorResponse(const std::vector<FieldError>& errors) {
  ordered_json fields = ordered_json::array();
  for (const FieldError& e : errors) {
    fields.push_back(ordered_json{{"field", e.field}, {"message", e.message}});
  }
  return JsonResponse(400, ordered_json{{"error", "invalid controls"},
                                        {"fields", std::move(fields)}});
}

}  // namespace

std::vector<FieldError> ParseSummarizeRequest(absl::string_view body,
                                              ControlParams* controls) {
  std::vector<FieldError> errors;
  json request = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (request.is_discarded() || !request.is_object()) {
    errors.push_back({"body", "must be a JSON object"});
    return errors;
  }
  *controls = ControlParams{};

  if (auto it = request.find("place"); it == request.end() || it->is_null()) {
    errors.push_back({"place", "is required"});
  } else if (!it->is_string()) {
    errors.push_back({"place", "must be a string"});
  } else {
    controls->place = it->get<std::string>();
  }

  if (auto it = request.find("aspects"); it != request.end() && !it->is_null()) {
    if (it->is_string()) {
      controls->aspects = AspectRequest::Parse(it->get<std::string>());
    } else if (it->is_array()) {
      std::vector<std::string> labels;
      bool ok = true;
      for (const json& label : *it) {
        if (!label.is_string()) {
          ok = false;
          break;
        }
        labels.push_back(label.get<std::string>());
      }
      if (ok) {
        controls->aspects = AspectRequest::Of(std::move(labels));
      } else {
        errors.push_back({"aspects", "must be \"all\" or a list of labels"});
      }
    } else {
      errors.push_back({"aspects", "must be \"all\" or a list of labels"});
    }
  }

  auto read_int = [&](const char* field, int* out) {
    auto it = request.find(field);
    if (it == request.end() || it->is_null()) return;
    if (!it->is_number_integer()) {
      errors.push_back({field, "must be an integer"});
      return;
    }
    *out = it->get<int>();
  };
  auto read_number = [&](const char* field, double* out) {
    auto it = request.find(field);
    if (it == request.end() || it->is_null()) return;
    if (!it->is_number()) {
      errors.push_back({field, "must be a number"});
      return;
    }
    *out = it->get<double>();
  };
  read_int("length_words", &controls->length_words);
  read_number("female_ratio", &controls->female_ratio);
  read_number("lambda", &controls->penalty_weight);
  read_int("candidate_pool", &controls->candidate_pool);

  for (FieldError& e : ValidateControls(*controls)) {
    errors.push_back(std::move(e));
  }
  return errors;
}

void ApiService::SetEngine(std::shared_ptr<const Engine> engine) {
  std::lock_guard<std::mutex> lock(mu_);
  engine_ = std::move(engine);
}

std::shared_ptr<const Engine> ApiService::engine() const {
  std::lock_guard<std::mutex> lock(mu_);
  return engine_;
}

HttpResponse ApiService::Places() const {
  std::shared_ptr<const Engine> engine = this->engine();
  if (!engine) return ErrorResponse(503, "service is still loading");
  ordered_json places = ordered_json::array();
  for (const std::string& place : engine->corpus().Places()) {
    const CorpusStats& s = engine->corpus().Find(place)->stats();
    places.push_back(ordered_json{{"place", s.place},
                                  {"review_count", s.review_count},
                                  {"female_count", s.female_count},
                                  {"male_count", s.male_count},
                                  {"unknown_count", s.unknown_count},
                                  {"sentence_count", s.sentence_count}});
  }
  return JsonResponse(200, ordered_json{{"places", std::move(places)}});
}

HttpResponse ApiService::Aspects() const {
  std::shared_ptr<const Engine> engine = this->engine();
  if (!engine) return ErrorResponse(503, "service is still loading");
  ordered_json aspects = ordered_json::array();
  for (const AspectClass& c : engine->catalog().classes()) {
    aspects.push_back(ordered_json{{"label", c.label}, {"terms", c.terms}});
  }
  return JsonResponse(200, ordered_json{{"aspects", std::move(aspects)}});
}

HttpResponse ApiService::Summarize(absl::string_view body) const {
  std::shared_ptr<const Engine> engine = this->engine();
  if (!engine) return ErrorResponse(503, "service is still loading");
  ControlParams controls;
  std::vector<FieldError> errors = ParseSummarizeRequest(body, &controls);
  if (errors.empty()) {
    absl::StatusOr<std::vector<AspectClass>> aspects =
        ResolveSelection(engine->catalog(), controls.aspects);
    if (!aspects.ok()) {
      errors.push_back({"aspects", std::string(aspects.status().message())});
    }
  }
  if (!errors.empty()) return FieldErrorResponse(errors);
  if (engine->corpus().Find(controls.place) == nullptr) {
    return ErrorResponse(404,
                         absl::StrCat("unknown place '", controls.place, "'"));
  }
  absl::StatusOr<Summary> summary = engine->summarizer().Summarize(controls);
  if (!summary.ok()) {
    const std::string id = absl::StrFormat(
        "E%08x-%llu",
        static_cast<uint32_t>(
            std::chrono::steady_clock::now().time_since_epoch().count()),
        static_cast<unsigned long long>(++error_counter_));
    std::cerr << "summarize failed [" << id << "]: " << summary.status()
              << "\n";
    return JsonResponse(500, ordered_json{{"error", "internal error"},
                                          {"error_id", id}});
  }
  return {200, SerializeSummary(*summary)};
}

void ApiService::Register(httplib::Server& server) const {
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  server.Get("/api/v1/places",
             [this, reply](const httplib::Request&, httplib::Response& res) {
               reply(res, Places());
             });
  server.Get("/api/v1/aspects",
             [this, reply](const httplib::Request&, httplib::Response& res) {
               reply(res, Aspects());
             });
  server.Post("/api/v1/summarize",
              [this, reply](const httplib::Request& req,
                            httplib::Response& res) {
                reply(res, Summarize(req.body));
              });
  server.Options(R"(/api/v1/.*)",
                 [](const httplib::Request&, httplib::Response& res) {
                   res.set_header("Access-Control-Allow-Origin", "*");
                   res.set_header("Access-Control-Allow-Headers",
                                  "Content-Type");
                   res.set_header("Access-Control-Allow-Methods",
                                  "GET, POST, OPTIONS");
                   res.status = 204;
                 });
}

}  // namespace opsum
