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

#include "btmt/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "support/mock_server.hpp"
#include "support/table2.hpp"
#include "support/temp_dir.hpp"

namespace btmt {
namespace {

using testing::slurp;
using testing::TempDir;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, {out, err});
  o.out = out.str();
  o.err = err.str();
  return o;
}

// Runs the installed binary; returns its exit status and stdout.
Outcome run_binary(const std::string& args) {
  const std::string command = std::string(BTMT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(command.c_str(), "r");
  Outcome o;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) o.out.append(buf, n);
  const int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string seed_tsv(std::size_t n) {
  std::string s;
  for (std::size_t i = 1; i <= n; ++i) {
    s += "これは文" + std::to_string(i) + "です\tThis is sentence " +
         std::to_string(i) + "\n";
  }
  return s;
}

std::string mono_text(std::size_t n) {
  std::string s;
  for (std::size_t i = 1; i <= n; ++i) s += "猫が" + std::to_string(i) + "匹いる\n";
  return s;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(CliIngest, WritesSplitsAndIsDeterministic) {
  TempDir dir;
  const auto tsv = dir.write("seed.tsv", seed_tsv(10));
  const std::string out_a = (dir / "a").string(), out_b = (dir / "b").string();
  const Outcome a = run_cli({"ingest", "--parallel", tsv.string(), "--split",
                             "0.9", "--seed", "42", "--out-dir", out_a});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, "pairs=10 train=9 valid=1\n");
  EXPECT_EQ(line_count(slurp(dir / "a" / "train.jsonl")), 9u);
  EXPECT_EQ(line_count(slurp(dir / "a" / "valid.jsonl")), 1u);
  ASSERT_EQ(run_cli({"ingest", "--parallel", tsv.string(), "--split", "0.9",
                     "--seed", "42", "--out-dir", out_b})
                .code,
            0);
  for (const char* f : {"seed.jsonl", "train.jsonl", "valid.jsonl"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

TEST(CliIngest, MissingFileNamesThePath) {
  TempDir dir;
  const std::string missing = (dir / "nope.tsv").string();
  const Outcome o = run_cli({"ingest", "--parallel", missing, "--out-dir",
                             dir.path().string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find(missing), std::string::npos) << o.err;
}

TEST(CliIngest, MalformedLineIsReported) {
  TempDir dir;
  const auto tsv = dir.write("bad.tsv", "a\tb\nc\td\te\n");
  const Outcome o = run_cli({"ingest", "--parallel", tsv.string(), "--out-dir",
                             dir.path().string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("MalformedRecord at line 2"), std::string::npos) << o.err;
}

TEST(CliBacktranslate, MockProducesSyntheticPairs) {
  TempDir dir;
  const auto mono = dir.write("ja.txt", mono_text(10));
  const Outcome o = run_cli({"backtranslate", "--mono", mono.string(),
                             "--backend", "mock", "--out-dir",
                             dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "requested=10 translated=10 failed=0\n");
  const ParallelCorpus syn =
      load_parallel(dir / "synthetic.jsonl", CorpusFormat::kJsonl, "s");
  ASSERT_EQ(syn.size(), 10u);
  EXPECT_EQ(syn.pairs()[0].target_text, "MT:猫が1匹いる");
  EXPECT_EQ(syn.pairs()[0].id, "mock:bt:1:1");
}

TEST(CliBacktranslate, UnreachableUrlExitsTwo) {
  TempDir dir;
  const auto mono = dir.write("ja.txt", mono_text(3));
  const Outcome o = run_cli({"backtranslate", "--mono", mono.string(),
                             "--backend", testing::unused_local_url(),
                             "--out-dir", dir.path().string()});
  EXPECT_EQ(o.code, 2) << o.err;
  EXPECT_NE(o.err.find("BackendUnreachable"), std::string::npos) << o.err;
}

TEST(CliBacktranslate, RemoteBackendReceivesConfiguredDecodeParams) {
  TempDir dir;
  testing::MockServer server("/translate", [](const httplib::Request& req,
                                              httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    std::vector<std::string> out;
    for (const auto& t : body.at("texts")) out.push_back("EN " + t.get<std::string>());
    res.set_content(nlohmann::json{{"translations", out}}.dump(),
                    "application/json");
  });
  const auto mono = dir.write("ja.txt", mono_text(3));
  const auto config = dir.write("run.json", R"({"decoding": {"beam_size": 5}})");
  const Outcome o = run_cli({"backtranslate", "--mono", mono.string(),
                             "--backend", server.url(), "--config",
                             config.string(), "--out-dir", dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto body = nlohmann::json::parse(server.bodies().at(0));
  EXPECT_EQ(body.at("beam_size"), 5);
  EXPECT_EQ(body.at("max_new_tokens"), 256);
}

std::string jsonl_pair(const std::string& id, const std::string& src,
                       const std::string& tgt) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["src"] = src;
  j["tgt"] = tgt;
  j["provenance"] = {{"kind", "synthetic"}, {"backend_id", "m"}, {"round", 1}};
  return j.dump() + "\n";
}

TEST(CliFilter, SummaryLines) {
  TempDir dir;
  const auto input = dir.write(
      "syn.jsonl", jsonl_pair("a", "こんにちは", "Hello there") +
                       jsonl_pair("b", "猫", "") +
                       jsonl_pair("c", "こんにちは", "Hello there"));
  const Outcome o = run_cli({"filter", "--input", input.string(), "--out-dir",
                             dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "kept=1 rejected=2\nreject.Empty=1\nreject.Duplicate=1\n");
  EXPECT_EQ(line_count(slurp(dir / "decisions.jsonl")), 3u);

  const auto clean = dir.write("clean.jsonl",
                               jsonl_pair("a", "こんにちは", "Hello there") +
                                   jsonl_pair("b", "猫です", "It is a cat"));
  const Outcome all = run_cli({"filter", "--input", clean.string(),
                               "--out-dir", (dir / "c").string()});
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_EQ(all.out, "kept=2 rejected=0\n");
  EXPECT_EQ(line_count(slurp(dir / "c" / "kept.jsonl")), 2u);
}

TEST(CliAssemble, CapsSyntheticAndIsByteStable) {
  TempDir dir;
  const auto seed = dir.write("seed.tsv", seed_tsv(100));
  std::string syn;
  for (int i = 1; i <= 500; ++i) {
    syn += jsonl_pair("m:bt:1:" + std::to_string(i), "行" + std::to_string(i),
                      "Line " + std::to_string(i));
  }
  const auto synthetic = dir.write("syn.jsonl", syn);
  const std::vector<std::string> base = {
      "assemble", "--parallel", seed.string(), "--synthetic",
      synthetic.string(), "--ratio", "2.0", "--seed", "42"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--out-dir", (dir / "a").string()});
  args_b.insert(args_b.end(), {"--out-dir", (dir / "b").string()});
  const Outcome a = run_cli(args_a);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, "records=300 seed=100 synthetic=200\n");
  ASSERT_EQ(run_cli(args_b).code, 0);
  const std::string file = slurp(dir / "a" / "training.jsonl");
  EXPECT_EQ(line_count(file), 300u);
  EXPECT_EQ(file, slurp(dir / "b" / "training.jsonl"));
}

TEST(CliAssemble, InvalidTemplateExitsOne) {
  TempDir dir;
  const auto seed = dir.write("seed.tsv", seed_tsv(3));
  const auto tmpl = dir.write("t.txt", "Japanese: {src}\n");
  const Outcome o = run_cli({"assemble", "--parallel", seed.string(),
                             "--template-file", tmpl.string(), "--out-dir",
                             dir.path().string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("TemplateInvalid"), std::string::npos) << o.err;
}

TEST(CliEvaluate, IdentityScoresHundred) {
  TempDir dir;
  const auto ref = dir.write("ref.txt", "The cat sat.\nA dog ran home.\n");
  const Outcome o = run_cli({"evaluate", "--hyp", ref.string(), "--ref",
                             ref.string(), "--name", "sys", "--out-dir",
                             dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  EXPECT_EQ(report.at("bleu"), 100.0);
  EXPECT_EQ(report.at("chrf"), 100.0);
  EXPECT_FALSE(report.contains("comet"));
  EXPECT_EQ(report.at("segment_count"), 2);
}

TEST(CliEvaluate, MismatchedLineCountsExitOne) {
  TempDir dir;
  const auto hyp = dir.write("hyp.txt", "a\n");
  const auto ref = dir.write("ref.txt", "a\nb\n");
  const Outcome o = run_cli({"evaluate", "--hyp", hyp.string(), "--ref",
                             ref.string(), "--out-dir", dir.path().string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("LengthMismatch"), std::string::npos);
}

TEST(CliEvaluate, CometEndpointFillsReport) {
  TempDir dir;
  testing::MockServer server("/score", [](const httplib::Request& req,
                                          httplib::Response& res) {
    const std::size_t n =
        nlohmann::json::parse(req.body).at("hypotheses").size();
    res.set_content(nlohmann::json{{"scores", std::vector<double>(n, 0.6)},
                                   {"system_score", 0.6}}
                        .dump(),
                    "application/json");
  });
  const auto src = dir.write("src.txt", "猫\n犬\n");
  const auto ref = dir.write("ref.txt", "cat\ndog\n");
  const Outcome o = run_cli({"evaluate", "--hyp", ref.string(), "--ref",
                             ref.string(), "--src", src.string(),
                             "--comet-endpoint", server.url(), "--out-dir",
                             dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "report.json")).at("comet"), 0.6);
}

void write_table2_reports(const TempDir& dir, std::vector<std::string>& paths) {
  for (const auto& [id, report] : testing::table2_reports()) {
    paths.push_back(
        dir.write(id + ".json", report_to_json(report).dump(2)).string());
  }
}

TEST(CliReport, Table2SelectsFtBt) {
  TempDir dir;
  std::vector<std::string> args = {"report", "--reports"};
  write_table2_reports(dir, args);
  args.insert(args.end(), {"--out-dir", dir.path().string()});
  const Outcome o = run_cli(args);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, std::string(testing::kTable2Markdown) + "best=ftbt\n");
  EXPECT_EQ(slurp(dir / "report_table.md"), testing::kTable2Markdown);

  args.insert(args.end(), {"--criterion", "chrf"});
  const Outcome missing = run_cli(args);
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("MissingMetric"), std::string::npos);
}

TEST(CliReport, SingleReportIsSelected) {
  TempDir dir;
  EvaluationReport r;
  r.system_name = "only";
  r.bleu = 1.0;
  r.chrf = 2.0;
  r.segment_count = 3;
  const auto path = dir.write("only.json", report_to_json(r).dump());
  const Outcome o = run_cli({"report", "--reports", path.string(),
                             "--criterion", "bleu", "--format", "tsv",
                             "--out-dir", dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "System\tBLEU\tchrF\tCOMET\nonly\t1.00\t2.00\t--\nbest=only\n");
}

TEST(CliManifest, RecordsStageDigests) {
  TempDir dir;
  const auto tsv = dir.write("seed.tsv", seed_tsv(10));
  const auto mono = dir.write("ja.txt", mono_text(5));
  ASSERT_EQ(run_cli({"ingest", "--parallel", tsv.string(), "--mono",
                     mono.string(), "--out-dir", (dir / "o").string()})
                .code,
            0);
  ASSERT_EQ(run_cli({"backtranslate", "--mono",
                     (dir / "o" / "mono.jsonl").string(), "--out-dir",
                     (dir / "o").string()})
                .code,
            0);
  const auto m = nlohmann::json::parse(slurp(dir / "o" / "manifest.json"));
  const auto& ingest = m.at("stages").at("ingest");
  EXPECT_EQ(ingest.at("outputs").at(0).at("path"), "seed.jsonl");
  EXPECT_EQ(ingest.at("outputs").at(0).at("digest"),
            sha256_digest(slurp(dir / "o" / "seed.jsonl")));
  EXPECT_TRUE(m.at("stages").contains("backtranslate"));
  EXPECT_EQ(m.at("config_digest").get<std::string>().rfind("sha256:", 0), 0u);
}

TEST(CliRunAll, RunsEveryStage) {
  TempDir dir;
  const auto tsv = dir.write("seed.tsv", seed_tsv(10));
  const auto mono = dir.write("mono.txt", mono_text(6));
  const Outcome o = run_cli({"run-all", "--parallel", tsv.string(), "--mono",
                             mono.string(), "--out-dir", dir.path().string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("| identity | 100.00 | 100.00 | -- |\nbest=report\n"),
            std::string::npos)
      << o.out;
  // Pure Japanese mock output fails the English check, so only seed remains.
  EXPECT_EQ(line_count(slurp(dir / "synthetic.jsonl")), 6u);
  EXPECT_EQ(line_count(slurp(dir / "kept.jsonl")), 0u);
  EXPECT_EQ(line_count(slurp(dir / "training.jsonl")), 10u);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest.at("stages").size(), 6u);
}

TEST(CliBinary, ExitCodesAndHelp) {
  TempDir dir;
  const Outcome help = run_binary("--help");
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("backtranslate"), std::string::npos);
  EXPECT_EQ(run_binary("ingest --parallel " + (dir / "x.tsv").string() +
                       " --out-dir " + dir.path().string())
                .code,
            1);
  EXPECT_EQ(run_binary("frobnicate").code, 1);
  const auto mono = dir.write("ja.txt", mono_text(2));
  EXPECT_EQ(run_binary("backtranslate --mono " + mono.string() + " --backend " +
                       testing::unused_local_url() + " --out-dir " +
                       dir.path().string())
                .code,
            2);
}

}  // namespace
}  // namespace btmt
