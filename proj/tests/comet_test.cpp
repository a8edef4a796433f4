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

#include "btmt/comet.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <string>
#include <vector>

#include "support/mock_server.hpp"

namespace btmt {
namespace {

using Strings = std::vector<std::string>;
using testing::MockServer;

Strings numbered(std::size_t n, const std::string& prefix) {
  Strings out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Scores every segment with `score` and reports their mean.
MockServer::Handler constant_scorer(double score) {
  return [score](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    const std::size_t n = body.at("hypotheses").size();
    nlohmann::json out;
    out["scores"] = std::vector<double>(n, score);
    out["system_score"] = score;
    res.set_content(out.dump(), "application/json");
  };
}

CometClientConfig config_for(const std::string& url, std::size_t batch = 32) {
  CometClientConfig c;
  c.endpoint = url;
  c.batch_size = batch;
  c.timeout = std::chrono::milliseconds(2000);
  return c;
}

TEST(CometScore, ConstantScorer) {
  MockServer server("/score", constant_scorer(0.5));
  const Strings s = numbered(4, "src"), h = numbered(4, "hyp"),
                r = numbered(4, "ref");
  const CometResult result = comet_score(s, h, r, config_for(server.url()));
  EXPECT_EQ(result.segment_scores, std::vector<double>(4, 0.5));
  EXPECT_DOUBLE_EQ(result.system_score, 0.5);
  EXPECT_FALSE(result.warning);

  const auto body = nlohmann::json::parse(server.bodies().at(0));
  EXPECT_EQ(body.at("sources"), nlohmann::json(s));
  EXPECT_EQ(body.at("hypotheses"), nlohmann::json(h));
  EXPECT_EQ(body.at("references"), nlohmann::json(r));
}

TEST(CometScore, TenSegmentsInBatchesOfFour) {
  MockServer server("/score", constant_scorer(0.25));
  const Strings s = numbered(10, "s");
  const CometResult result = comet_score(s, s, s, config_for(server.url(), 4));
  EXPECT_EQ(server.request_count(), 3u);
  std::vector<std::size_t> sizes;
  for (const std::string& b : server.bodies()) {
    sizes.push_back(nlohmann::json::parse(b).at("sources").size());
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 4, 2}));
  EXPECT_EQ(result.segment_scores.size(), 10u);
}

TEST(CometScore, UnreachableAfterOneRetry) {
  const Strings s = {"a"};
  try {
    comet_score(s, s, s, config_for(testing::unused_local_url()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kScorerUnreachable);
  }
}

TEST(CometScore, FailedBatchIsRetriedExactlyOnce) {
  MockServer server("/score", [](const httplib::Request&,
                                 httplib::Response& res) { res.status = 500; });
  const Strings s = {"a", "b"};
  try {
    comet_score(s, s, s, config_for(server.url()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kScorerProtocolError);
  }
  EXPECT_EQ(server.request_count(), 2u);
}

TEST(CometScore, TransientFailureRecovers) {
  std::atomic<int> calls{0};
  const auto ok = constant_scorer(0.7);
  MockServer server("/score", [&](const httplib::Request& req,
                                  httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 503;
      return;
    }
    ok(req, res);
  });
  const Strings s = {"a", "b"};
  EXPECT_DOUBLE_EQ(comet_score(s, s, s, config_for(server.url())).system_score,
                   0.7);
  EXPECT_EQ(server.request_count(), 2u);
}

TEST(CometScore, ProtocolErrors) {
  const Strings s = {"a", "b"};
  MockServer missing_key("/score", [](const httplib::Request&,
                                      httplib::Response& res) {
    res.set_content("{\"scores\":[0.1,0.2]}", "application/json");
  });
  MockServer wrong_count("/score", [](const httplib::Request&,
                                      httplib::Response& res) {
    res.set_content("{\"scores\":[0.1],\"system_score\":0.1}",
                    "application/json");
  });
  MockServer not_json("/score", [](const httplib::Request&,
                                   httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  for (const MockServer* server : {&missing_key, &wrong_count, &not_json}) {
    try {
      comet_score(s, s, s, config_for(server->url()));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kScorerProtocolError) << e.what();
    }
  }
}

TEST(CometScore, SystemScoreDisagreementAddsWarning) {
  MockServer server("/score", [](const httplib::Request&,
                                 httplib::Response& res) {
    res.set_content("{\"scores\":[0.2,0.4],\"system_score\":0.9}",
                    "application/json");
  });
  const Strings s = {"a", "b"};
  const CometResult result = comet_score(s, s, s, config_for(server.url()));
  EXPECT_DOUBLE_EQ(result.system_score, 0.9);
  ASSERT_TRUE(result.warning);
}

TEST(CometScore, InputValidation) {
  const Strings one = {"a"}, two = {"a", "b"};
  EXPECT_THROW(comet_score(one, two, two, config_for("http://127.0.0.1:1")),
               Error);
  EXPECT_THROW(comet_score(Strings{}, Strings{}, Strings{},
                           config_for("http://127.0.0.1:1")),
               Error);
  EXPECT_THROW(comet_score(one, one, one, config_for("http://127.0.0.1:1", 0)),
               Error);
}

}  // namespace
}  // namespace btmt
