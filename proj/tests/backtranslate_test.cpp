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

#include "btmt/backtranslate.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <mutex>
#include <string>
#include <vector>

#include "support/mock_server.hpp"

namespace btmt {
namespace {

using Strings = std::vector<std::string>;
using testing::MockServer;

MonolingualCorpus mono(std::size_t n) {
  std::vector<MonoLine> lines;
  for (std::size_t i = 1; i <= n; ++i) {
    lines.push_back({i * 2, "文" + std::to_string(i)});
  }
  return MonolingualCorpus(std::move(lines), Language::kJapanese);
}

BtJob job_for(MonolingualCorpus input, TranslatorBackend backend,
              std::size_t batch = 16) {
  BtJob job;
  job.input = std::move(input);
  job.backend = std::move(backend);
  job.batch_size = batch;
  return job;
}

// /translate handler that prefixes each text and counts calls per first text.
MockServer::Handler echo_translator(const std::string& prefix) {
  return [prefix](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    Strings out;
    for (const auto& t : body.at("texts")) {
      out.push_back(prefix + t.get<std::string>());
    }
    res.set_content(nlohmann::json{{"translations", out}}.dump(),
                    "application/json");
  };
}

TEST(RunBacktranslation, MockMintsSyntheticPairs) {
  const std::vector<MonoLine> lines = {
      {1, "猫がいる"}, {2, "犬もいる"}, {4, "東京へ行く"}};
  const BtResult r = run_backtranslation(
      job_for(MonolingualCorpus(lines, Language::kJapanese),
              TranslatorBackend::mock()));
  ASSERT_EQ(r.pairs.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.pairs[i].source_text, lines[i].text);
    EXPECT_EQ(r.pairs[i].target_text, "MT:" + lines[i].text);
    EXPECT_EQ(r.pairs[i].provenance, Provenance::synthetic("mock", 1));
  }
  EXPECT_EQ(r.pairs[2].id, "mock:bt:1:4");
  EXPECT_EQ(r.stats, (BtStats{3, 3, 0}));
  EXPECT_TRUE(r.failures.empty());
}

TEST(RunBacktranslation, TenLinesInBatchesOfFour) {
  std::vector<std::size_t> sizes;
  const BatchTranslator logging = [&](std::span<const std::string> texts) {
    sizes.push_back(texts.size());
    return translate_batch(texts, TranslatorBackend::mock());
  };
  const BtResult r =
      run_backtranslation(job_for(mono(10), TranslatorBackend::mock(), 4),
                          logging);
  EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 4, 2}));
  EXPECT_EQ(r.pairs.size(), 10u);

  MockServer server("/translate", echo_translator("EN:"));
  const BtResult remote = run_backtranslation(
      job_for(mono(10), TranslatorBackend::remote(server.url()), 4));
  EXPECT_EQ(server.request_count(), 3u);
  EXPECT_EQ(remote.pairs[9].target_text, "EN:文10");
  EXPECT_EQ(remote.pairs[9].id, "remote:bt:1:20");
}

TEST(RunBacktranslation, FailingBatchRecordsPerLineFailures) {
  std::vector<int> calls(3, 0);
  const BatchTranslator flaky = [&](std::span<const std::string> texts) {
    const std::size_t batch = texts.front() == "文5" ? 1
                              : texts.front() == "文9" ? 2 : 0;
    ++calls[batch];
    if (batch == 1) throw Error(Errc::kProtocolError, "HTTP status 500");
    return translate_batch(texts, TranslatorBackend::mock());
  };
  const BtResult r =
      run_backtranslation(job_for(mono(10), TranslatorBackend::mock(), 4), flaky);
  EXPECT_EQ(r.stats, (BtStats{10, 6, 4}));
  EXPECT_EQ(calls, (std::vector<int>{1, 2, 1}));
  ASSERT_EQ(r.failures.size(), 4u);
  EXPECT_EQ(r.failures[0].line_number, 10u);
  EXPECT_EQ(r.failures[3].line_number, 16u);
  EXPECT_NE(r.failures[0].error.find("500"), std::string::npos);
  ASSERT_EQ(r.pairs.size(), 6u);
  EXPECT_EQ(r.pairs[4].source_text, "文9");
}

TEST(RunBacktranslation, RemoteFaultInjectionOnSecondBatch) {
  const auto ok = echo_translator("EN:");
  std::mutex mu;
  int batch2_calls = 0;
  MockServer server("/translate", [&](const httplib::Request& req,
                                      httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    if (body.at("texts").at(0) == "文5") {
      std::lock_guard<std::mutex> lock(mu);
      ++batch2_calls;
      res.status = 500;
      return;
    }
    ok(req, res);
  });
  BtJob job = job_for(mono(10), TranslatorBackend::remote(server.url()), 4);
  job.max_retries = 1;
  const BtResult r = run_backtranslation(job);
  EXPECT_EQ(r.stats, (BtStats{10, 6, 4}));
  EXPECT_EQ(r.failures.size(), 4u);
  EXPECT_EQ(batch2_calls, 2);
  EXPECT_EQ(server.request_count(), 4u);
}

TEST(RunBacktranslation, ConcurrentBatchesKeepInputOrder) {
  MockServer server("/translate", echo_translator("EN:"));
  BtJob job = job_for(mono(37), TranslatorBackend::remote(server.url()), 3);
  job.max_in_flight = 4;
  const BtResult r = run_backtranslation(job);
  ASSERT_EQ(r.pairs.size(), 37u);
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    EXPECT_EQ(r.pairs[i].source_text, "文" + std::to_string(i + 1));
  }
}

TEST(RunBacktranslation, UnreachableBackendAndEmptyInput) {
  try {
    run_backtranslation(job_for(
        mono(3), TranslatorBackend::remote(testing::unused_local_url())));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kBackendUnreachable);
  }
  EXPECT_THROW(run_backtranslation(job_for(MonolingualCorpus{},
                                           TranslatorBackend::mock())),
               Error);
}

TEST(TranslateBatch, MockAndCardinality) {
  EXPECT_EQ(translate_batch(Strings{"こんにちは"}, TranslatorBackend::mock()),
            Strings{"MT:こんにちは"});
  const Strings five = {"a", "b", "c", "d", "e"};
  const Strings out = translate_batch(five, TranslatorBackend::mock());
  ASSERT_EQ(out.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(out[i], "MT:" + five[i]);

  MockServer short_server("/translate", [](const httplib::Request&,
                                           httplib::Response& res) {
    res.set_content("{\"translations\":[\"x\",\"y\"]}", "application/json");
  });
  try {
    translate_batch(Strings{"a", "b", "c"},
                    TranslatorBackend::remote(short_server.url()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kProtocolError);
  }
}

TEST(TranslateBatch, ForwardsDecodeParamsVerbatim) {
  MockServer server("/translate", echo_translator(""));
  translate_batch(Strings{"猫"}, TranslatorBackend::remote(server.url()));
  const auto body = nlohmann::json::parse(server.bodies().at(0));
  EXPECT_EQ(body.at("texts"), nlohmann::json::array({"猫"}));
  EXPECT_EQ(body.at("src_lang"), "ja");
  EXPECT_EQ(body.at("tgt_lang"), "en");
  EXPECT_EQ(body.at("beam_size"), 3);
  EXPECT_EQ(body.at("max_new_tokens"), 256);
  EXPECT_EQ(body.at("length_penalty"), 1.0);
  EXPECT_EQ(body.at("sampling"), false);
  EXPECT_EQ(translate_request(Strings{"a"}, DecodeParams{}, Direction{}).dump(),
            "{\"texts\":[\"a\"],\"src_lang\":\"ja\",\"tgt_lang\":\"en\","
            "\"beam_size\":3,\"max_new_tokens\":256,\"length_penalty\":1.0,"
            "\"sampling\":false}");
}

TEST(MintPairs, IdsProvenanceAndErrors) {
  const std::vector<MonoLine> src = {{3, "猫"}, {7, "犬"}};
  const auto pairs = mint_pairs(src, Strings{"cat", " dog\nbarks "}, "m", 1);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].id, "m:bt:1:3");
  EXPECT_EQ(pairs[1].id, "m:bt:1:7");
  EXPECT_EQ(pairs[1].target_text, "dog barks");
  EXPECT_EQ(pairs[1].provenance, Provenance::synthetic("m", 1));
  EXPECT_NE(mint_pairs(src, Strings{"a", "b"}, "m", 2)[0].id.find(":bt:2:"),
            std::string::npos);
  try {
    mint_pairs(src, Strings{"a"}, "m", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kLengthMismatch);
  }
}

TEST(BacktranslateProperties, MockIsDeterministicAndComplete) {
  for (std::size_t n : {1u, 5u, 16u, 17u, 100u}) {
    for (std::size_t batch : {1u, 3u, 16u}) {
      const BtJob job = job_for(mono(n), TranslatorBackend::mock("m7"), batch);
      const BtResult a = run_backtranslation(job);
      const BtResult b = run_backtranslation(job);
      EXPECT_EQ(a.pairs, b.pairs);
      EXPECT_EQ(a.stats.requested, a.stats.translated + a.stats.failed);
      for (const SentencePair& p : a.pairs) {
        EXPECT_EQ(p.provenance.kind, ProvenanceKind::kSynthetic);
        EXPECT_EQ(p.provenance.backend_id, "m7");
        EXPECT_EQ(p.provenance.round, 1u);
      }
    }
  }
}

}  // namespace
}  // namespace btmt
