//
// Copyright 2026 The btmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Client for an external COMET scorer.
//
//   POST <endpoint>/score
//   {"sources":[...], "hypotheses":[...], "references":[...]}
//   -> {"scores":[...], "system_score": number}

#ifndef BTMT_COMET_HPP_
#define BTMT_COMET_HPP_

#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "btmt/error.hpp"
#include "btmt/http.hpp"
#include "btmt/metrics.hpp"
#include "json.hpp"

namespace btmt {

struct CometClientConfig {
  std::string endpoint;
  std::chrono::milliseconds timeout{60000};
  std::size_t batch_size = 32;

  void validate() const {
    if (batch_size < 1) {
      throw Error(Errc::kInvalidArgument, "batch_size must be >= 1");
    }
  }
};

struct CometResult {
  std::vector<double> segment_scores;
  double system_score = 0.0;
  /// Set when the scorer's system score disagrees with the mean of its
  /// segment scores by more than 1e-6.
  std::optional<std::string> warning;
};

namespace detail {

struct CometBatch {
  std::vector<double> scores;
  double system_score = 0.0;
};

inline CometBatch comet_request(const http::Endpoint& endpoint,
                                const CometClientConfig& config,
                                std::span<const std::string> sources,
                                std::span<const std::string> hypotheses,
                                std::span<const std::string> references) {
  nlohmann::json body;
  body["sources"] = std::vector<std::string>(sources.begin(), sources.end());
  body["hypotheses"] =
      std::vector<std::string>(hypotheses.begin(), hypotheses.end());
  body["references"] =
      std::vector<std::string>(references.begin(), references.end());

  const auto response =
      http::post_json(endpoint, "/score", body.dump(), config.timeout);
  if (!response) {
    throw Error(Errc::kScorerUnreachable, "no response from " + config.endpoint);
  }
  if (response->status != 200) {
    throw Error(Errc::kScorerProtocolError,
                "HTTP status " + std::to_string(response->status));
  }
  CometBatch batch;
  try {
    const nlohmann::json j = nlohmann::json::parse(response->body);
    batch.scores = j.at("scores").get<std::vector<double>>();
    batch.system_score = j.at("system_score").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kScorerProtocolError, e.what());
  }
  if (batch.scores.size() != sources.size()) {
    throw Error(Errc::kScorerProtocolError,
                "expected " + std::to_string(sources.size()) +
                    " scores, got " + std::to_string(batch.scores.size()));
  }
  return batch;
}

}  // namespace detail

/// Scores in batches of at most batch_size; each failed batch is retried
/// once. The system score is the size-weighted mean of the scorer-reported
/// batch system scores.
inline CometResult comet_score(std::span<const std::string> sources,
                               std::span<const std::string> hypotheses,
                               std::span<const std::string> references,
                               const CometClientConfig& config) {
  config.validate();
  require_parallel(hypotheses.size(), references.size());
  require_parallel(sources.size(), hypotheses.size());
  if (sources.empty()) throw Error(Errc::kEmptyInput, "no segments");
  const http::Endpoint endpoint = http::Endpoint::parse(config.endpoint);

  CometResult result;
  result.segment_scores.reserve(sources.size());
  double weighted = 0.0;
  for (std::size_t begin = 0; begin < sources.size();
       begin += config.batch_size) {
    const std::size_t count =
        std::min(config.batch_size, sources.size() - begin);
    detail::CometBatch batch;
    for (int attempt = 0;; ++attempt) {
      try {
        batch = detail::comet_request(endpoint, config,
                                      sources.subspan(begin, count),
                                      hypotheses.subspan(begin, count),
                                      references.subspan(begin, count));
        break;
      } catch (const Error&) {
        if (attempt >= 1) throw;
      }
    }
    result.segment_scores.insert(result.segment_scores.end(),
                                 batch.scores.begin(), batch.scores.end());
    weighted += batch.system_score * static_cast<double>(count);
  }
  result.system_score = weighted / static_cast<double>(sources.size());

  double mean = 0.0;
  for (double s : result.segment_scores) mean += s;
  mean /= static_cast<double>(result.segment_scores.size());
  if (std::fabs(mean - result.system_score) > 1e-6) {
    result.warning = "scorer system_score " +
                     std::to_string(result.system_score) +
                     " differs from segment mean " + std::to_string(mean);
  }
  return result;
}

}  // namespace btmt

#endif  // BTMT_COMET_HPP_
