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

// Pipeline subcommands behind the `btmt` executable. Exit codes:
//   0 success, 1 input or configuration error, 2 backend or network error.

#ifndef BTMT_CLI_HPP_
#define BTMT_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btmt/assemble.hpp"
#include "btmt/backtranslate.hpp"
#include "btmt/comet.hpp"
#include "btmt/config.hpp"
#include "btmt/corpus.hpp"
#include "btmt/error.hpp"
#include "btmt/filters.hpp"
#include "btmt/io.hpp"
#include "btmt/manifest.hpp"
#include "btmt/metrics.hpp"
#include "json.hpp"

namespace btmt::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitBackend = 2;

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kBackendUnreachable:
    case Errc::kProtocolError:
    case Errc::kScorerUnreachable:
    case Errc::kScorerProtocolError:
    case Errc::kAnalyzerUnavailable:
      return kExitBackend;
    default:
      return kExitInput;
  }
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct IngestArgs {
  std::optional<std::string> parallel;
  std::optional<std::string> mono;
  std::optional<std::string> format;
  std::optional<std::string> name;
  std::optional<double> split;
  std::optional<uint64_t> seed;
};

struct BacktranslateArgs {
  std::string mono;
  std::string backend = "mock";
  std::optional<std::string> backend_id;
  std::optional<std::size_t> batch_size;
  std::optional<std::size_t> max_retries;
  std::optional<uint32_t> round;
  std::optional<std::size_t> max_in_flight;
  int64_t timeout_ms = 120000;
};

struct FilterArgs {
  std::string input;
};

struct AssembleArgs {
  std::string parallel;
  std::optional<std::string> synthetic;
  std::optional<double> ratio;
  std::optional<std::size_t> upsample;
  std::optional<uint64_t> seed;
  std::optional<std::string> template_file;
};

struct EvaluateArgs {
  std::string hyp;
  std::string ref;
  std::optional<std::string> src;
  std::optional<std::string> comet_endpoint;
  std::size_t comet_batch_size = 32;
  std::string name = "system";
  std::optional<std::string> out;
  std::optional<double> smooth_k;
};

struct ReportArgs {
  std::vector<std::string> reports;
  std::vector<std::string> ids;
  std::optional<std::string> criterion;
  std::string format = "markdown";
};

struct RunAllArgs {
  std::string parallel;
  std::string mono;
  std::string backend = "mock";
  std::optional<std::string> hyp;
};

struct Context {
  fs::path out_dir = ".";
  std::optional<std::string> config_path;
  RunConfig config;
  std::string config_digest;

  void load() {
    if (config_path) config = load_config(*config_path);
    config_digest = sha256_digest(config_to_json(config).dump());
  }

  void record(const std::string& stage, std::vector<fs::path> inputs,
              std::vector<fs::path> outputs) const {
    Manifest manifest(out_dir);
    std::vector<fs::path> all_inputs = std::move(inputs);
    if (config_path) all_inputs.emplace_back(*config_path);
    manifest.record({stage, all_inputs, outputs, config_digest});
    manifest.save();
  }
};

// ---------------------------------------------------------------------------
// Helpers

inline CorpusFormat format_for(const fs::path& path,
                               const std::optional<std::string>& explicit_format) {
  std::string f = explicit_format ? *explicit_format : path.extension().string();
  if (!f.empty() && f.front() == '.') f.erase(0, 1);
  if (f == "tsv" || f == "txt") return CorpusFormat::kTsv;
  if (f == "jsonl" || f == "json") return CorpusFormat::kJsonl;
  throw Error(Errc::kInvalidArgument, "cannot infer corpus format of " +
                                          path.string() + "; pass --format");
}

inline std::string mono_jsonl(const MonolingualCorpus& corpus) {
  std::string out;
  for (const MonoLine& line : corpus.lines()) {
    nlohmann::ordered_json j;
    j["line"] = line.line_number;
    j["text"] = line.text;
    out += j.dump() + "\n";
  }
  return out;
}

/// Plain text, or the JSONL form written by `ingest --mono`.
inline MonolingualCorpus read_mono(const fs::path& path) {
  if (path.extension() != ".jsonl") {
    return load_monolingual(path, Language::kJapanese);
  }
  const std::string data = io::read_file(path);
  std::vector<MonoLine> lines;
  const auto raw = io::split_lines(data);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].empty()) continue;
    try {
      const auto j = nlohmann::json::parse(raw[i]);
      lines.push_back({j.at("line").get<std::size_t>(),
                       unicode::canonicalize(j.at("text").get<std::string>())});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kMalformedRecord, path.string() + ": " + e.what(), i + 1);
    }
  }
  if (lines.empty()) throw Error(Errc::kEmptyCorpus, path.string());
  return MonolingualCorpus(std::move(lines), Language::kJapanese);
}

/// One segment per physical line; a trailing newline does not add one.
inline std::vector<std::string> read_segments(const fs::path& path) {
  const std::string data = io::read_file(path);
  std::vector<std::string> segments;
  for (std::string_view line : io::split_lines(data)) {
    if (!unicode::is_valid_utf8(line)) {
      throw Error(Errc::kEncodingError, path.string());
    }
    std::string s(line);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    segments.push_back(std::move(s));
  }
  return segments;
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_ingest(const Context& ctx, const IngestArgs& args, Streams io) {
  if (!args.parallel && !args.mono) {
    throw Error(Errc::kInvalidArgument, "ingest needs --parallel and/or --mono");
  }
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  if (args.parallel) {
    const fs::path path = *args.parallel;
    const std::string name = args.name ? *args.name : path.stem().string();
    const ParallelCorpus corpus =
        load_parallel(path, format_for(path, args.format), name);
    SplitSpec spec = ctx.config.split;
    if (args.split) spec.train_fraction = *args.split;
    if (args.seed) spec.shuffle_seed = *args.seed;
    const auto [train, valid] = split(corpus, spec);

    const fs::path seed_out = ctx.out_dir / "seed.jsonl";
    const fs::path train_out = ctx.out_dir / "train.jsonl";
    const fs::path valid_out = ctx.out_dir / "valid.jsonl";
    save_parallel(corpus, seed_out, CorpusFormat::kJsonl);
    save_parallel(train, train_out, CorpusFormat::kJsonl);
    save_parallel(valid, valid_out, CorpusFormat::kJsonl);
    inputs.push_back(path);
    outputs.insert(outputs.end(), {seed_out, train_out, valid_out});
    io.out << "pairs=" << corpus.size() << " train=" << train.size()
           << " valid=" << valid.size() << "\n";
  }
  if (args.mono) {
    const fs::path path = *args.mono;
    const MonolingualCorpus mono = load_monolingual(path, Language::kJapanese);
    const fs::path mono_out = ctx.out_dir / "mono.jsonl";
    io::write_file(mono_out, mono_jsonl(mono));
    inputs.push_back(path);
    outputs.push_back(mono_out);
    io.out << "mono_lines=" << mono.size() << "\n";
  }
  ctx.record("ingest", inputs, outputs);
  return kExitOk;
}

inline int cmd_backtranslate(const Context& ctx, const BacktranslateArgs& args,
                             Streams io) {
  const fs::path mono_path = args.mono;
  BtJob job;
  job.input = read_mono(mono_path);
  if (args.backend == "mock") {
    job.backend = TranslatorBackend::mock(args.backend_id.value_or("mock"));
  } else {
    job.backend = TranslatorBackend::remote(
        args.backend, args.backend_id.value_or("remote"), ctx.config.decode);
    job.backend.timeout = std::chrono::milliseconds(args.timeout_ms);
    // Validates the URL before any work is done.
    (void)http::Endpoint::parse(args.backend);
  }
  job.backend.decode_params = ctx.config.decode;
  const BtSettings& bt = ctx.config.backtranslation;
  job.batch_size = args.batch_size.value_or(bt.batch_size);
  job.max_retries = args.max_retries.value_or(bt.max_retries);
  job.round = args.round.value_or(bt.round);
  job.max_in_flight = args.max_in_flight.value_or(bt.max_in_flight);

  const BtResult result = run_backtranslation(job);

  const fs::path synthetic_out = ctx.out_dir / "synthetic.jsonl";
  const fs::path failures_out = ctx.out_dir / "failures.jsonl";
  save_parallel(ParallelCorpus(job.backend.backend_id, result.pairs),
                synthetic_out, CorpusFormat::kJsonl);
  std::string failures;
  for (const BtFailure& f : result.failures) {
    failures += failure_to_json(f).dump() + "\n";
  }
  io::write_file(failures_out, failures);
  ctx.record("backtranslate", {mono_path}, {synthetic_out, failures_out});
  io.out << "requested=" << result.stats.requested
         << " translated=" << result.stats.translated
         << " failed=" << result.stats.failed << "\n";
  return kExitOk;
}

inline int cmd_filter(const Context& ctx, const FilterArgs& args, Streams io) {
  const fs::path input = args.input;
  const ParallelCorpus corpus = load_parallel(input, format_for(input, {}),
                                              input.stem().string());
  const FilterResult result = apply_filters(corpus.pairs(), ctx.config.filter);

  const fs::path kept_out = ctx.out_dir / "kept.jsonl";
  const fs::path decisions_out = ctx.out_dir / "decisions.jsonl";
  const std::string kept =
      serialize_parallel(ParallelCorpus(corpus.name(), result.kept),
                         CorpusFormat::kJsonl);
  io::write_file(kept_out, kept);
  io::write_file(decisions_out, serialize_decisions(result.decisions));
  ctx.record("filter", {input}, {kept_out, decisions_out});

  std::map<FilterKind, std::size_t> rejects;
  for (const FilterDecision& d : result.decisions) {
    if (d.reason) ++rejects[*d.reason];
  }
  io.out << "kept=" << result.kept.size()
         << " rejected=" << result.decisions.size() - result.kept.size()
         << "\n";
  for (const auto& [kind, count] : rejects) {
    io.out << "reject." << to_string(kind) << "=" << count << "\n";
  }
  return kExitOk;
}

inline int cmd_assemble(const Context& ctx, const AssembleArgs& args,
                        Streams io) {
  const fs::path seed_path = args.parallel;
  const ParallelCorpus seed =
      load_parallel(seed_path, format_for(seed_path, {}), seed_path.stem().string());
  ParallelCorpus synthetic;
  std::vector<fs::path> inputs = {seed_path};
  if (args.synthetic) {
    const fs::path syn_path = *args.synthetic;
    // Filtering may legitimately keep nothing; that is zero synthetic
    // pairs, not an unreadable corpus.
    try {
      synthetic = load_parallel(syn_path, format_for(syn_path, {}),
                                syn_path.stem().string());
    } catch (const Error& e) {
      if (e.code() != Errc::kEmptyCorpus) throw;
    }
    inputs.push_back(syn_path);
  }

  PromptTemplate tmpl = ctx.config.prompt_template;
  if (args.template_file) {
    std::string text = io::read_file(*args.template_file);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    if (!text.empty() && text.back() == '\r') text.pop_back();
    tmpl = PromptTemplate(std::move(text), tmpl.direction_label());
    inputs.emplace_back(*args.template_file);
  }

  MixPolicy policy = ctx.config.mix;
  if (args.ratio) policy.max_synthetic_ratio = *args.ratio;
  if (args.upsample) policy.seed_upsample = *args.upsample;
  if (args.seed) policy.shuffle_seed = *args.seed;

  const ParallelCorpus mixed = mix(seed, synthetic, policy);
  const std::vector<TrainingRecord> records =
      render_training_records(mixed, tmpl);
  const fs::path out = ctx.out_dir / "training.jsonl";
  export_training_file(records, out);
  ctx.record("assemble", inputs, {out});

  std::size_t synthetic_count = 0;
  for (const SentencePair& p : mixed.pairs()) {
    synthetic_count += !p.provenance.is_seed();
  }
  io.out << "records=" << records.size()
         << " seed=" << records.size() - synthetic_count
         << " synthetic=" << synthetic_count << "\n";
  return kExitOk;
}

inline EvaluationReport evaluate_segments(const std::vector<std::string>& hyps,
                                          const std::vector<std::string>& refs,
                                          const std::vector<std::string>* srcs,
                                          const EvaluateArgs& args) {
  require_parallel(hyps.size(), refs.size());
  if (hyps.empty()) throw Error(Errc::kEmptyInput, "no segments to score");
  EvaluationReport report;
  report.system_name = args.name;
  report.segment_count = hyps.size();
  BleuConfig bleu;
  bleu.add_k = args.smooth_k;
  report.bleu = corpus_bleu(hyps, refs, bleu);
  report.chrf = chrf_score(hyps, refs, ChrfConfig::chrf());
  report.chrf_pp = chrf_score(hyps, refs, ChrfConfig::chrf_plus_plus());
  if (args.comet_endpoint) {
    if (!srcs) {
      throw Error(Errc::kInvalidArgument, "COMET scoring needs --src");
    }
    require_parallel(srcs->size(), hyps.size());
    CometClientConfig client;
    client.endpoint = *args.comet_endpoint;
    client.batch_size = args.comet_batch_size;
    const CometResult comet = comet_score(*srcs, hyps, refs, client);
    report.comet = comet.system_score;
    report.comet_warning = comet.warning;
  }
  return report;
}

inline int cmd_evaluate(const Context& ctx, const EvaluateArgs& args,
                        Streams io) {
  const std::vector<std::string> hyps = read_segments(args.hyp);
  const std::vector<std::string> refs = read_segments(args.ref);
  std::vector<fs::path> inputs = {args.hyp, args.ref};
  std::optional<std::vector<std::string>> srcs;
  if (args.src) {
    srcs = read_segments(*args.src);
    inputs.emplace_back(*args.src);
  }
  const EvaluationReport report =
      evaluate_segments(hyps, refs, srcs ? &*srcs : nullptr, args);
  const std::string json = report_to_json(report).dump(2) + "\n";
  const fs::path out = args.out ? fs::path(*args.out) : ctx.out_dir / "report.json";
  io::write_file(out, json);
  ctx.record("evaluate", inputs, {out});
  io.out << json;
  if (report.comet_warning) io.err << "warning: " << *report.comet_warning << "\n";
  return kExitOk;
}

inline int cmd_report(const Context& ctx, const ReportArgs& args, Streams io) {
  if (args.reports.empty()) throw Error(Errc::kEmptyInput, "no --reports given");
  if (!args.ids.empty() && args.ids.size() != args.reports.size()) {
    throw Error(Errc::kLengthMismatch, "--ids must match --reports");
  }
  std::vector<NamedReport> reports;
  std::vector<fs::path> inputs;
  for (std::size_t i = 0; i < args.reports.size(); ++i) {
    const fs::path path = args.reports[i];
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::kMalformedRecord, path.string() + ": " + e.what());
    }
    const std::string id = args.ids.empty() ? path.stem().string() : args.ids[i];
    reports.emplace_back(id, report_from_json(j));
    inputs.push_back(path);
  }
  const Criterion criterion = args.criterion ? parse_criterion(*args.criterion)
                                             : ctx.config.selection_metric;
  TableFormat format;
  if (args.format == "markdown" || args.format == "md") {
    format = TableFormat::kMarkdown;
  } else if (args.format == "tsv") {
    format = TableFormat::kTsv;
  } else {
    throw Error(Errc::kInvalidArgument, "unknown --format " + args.format);
  }
  const std::string best = select_best_checkpoint(reports, criterion);
  const std::string table = render_report_table(reports, format);
  const fs::path out = ctx.out_dir / (format == TableFormat::kMarkdown
                                          ? "report_table.md"
                                          : "report_table.tsv");
  io::write_file(out, table);
  ctx.record("report", inputs, {out});
  io.out << table << "best=" << best << "\n";
  return kExitOk;
}

inline int cmd_run_all(Context ctx, const RunAllArgs& args, Streams io) {
  const fs::path out = ctx.out_dir;
  IngestArgs ingest;
  ingest.parallel = args.parallel;
  ingest.mono = args.mono;
  if (int rc = cmd_ingest(ctx, ingest, io); rc != kExitOk) return rc;

  BacktranslateArgs bt;
  bt.mono = (out / "mono.jsonl").string();
  bt.backend = args.backend;
  if (int rc = cmd_backtranslate(ctx, bt, io); rc != kExitOk) return rc;

  if (int rc = cmd_filter(ctx, {(out / "synthetic.jsonl").string()}, io);
      rc != kExitOk) {
    return rc;
  }

  AssembleArgs assemble;
  assemble.parallel = (out / "seed.jsonl").string();
  assemble.synthetic = (out / "kept.jsonl").string();
  if (int rc = cmd_assemble(ctx, assemble, io); rc != kExitOk) return rc;

  // Without model hypotheses the validation references score themselves.
  const ParallelCorpus valid =
      load_parallel(out / "valid.jsonl", CorpusFormat::kJsonl, "valid");
  std::string refs;
  for (const SentencePair& p : valid.pairs()) refs += p.target_text + "\n";
  io::write_file(out / "valid.ref.txt", refs);
  EvaluateArgs eval;
  eval.hyp = args.hyp ? *args.hyp : (out / "valid.ref.txt").string();
  eval.ref = (out / "valid.ref.txt").string();
  eval.name = args.hyp ? fs::path(*args.hyp).stem().string() : "identity";
  if (int rc = cmd_evaluate(ctx, eval, io); rc != kExitOk) return rc;

  ReportArgs report;
  report.reports = {(out / "report.json").string()};
  report.criterion = "chrf";
  return cmd_report(ctx, report, io);
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& argv, Streams io) {
  CLI::App app{"Backtranslation and fine-tuning data pipeline", "btmt"};
  app.require_subcommand(1);

  Context ctx;
  auto add_common = [&ctx](CLI::App* sub) {
    sub->add_option("--out-dir", ctx.out_dir, "Directory for outputs and manifest.json");
    sub->add_option("--config", ctx.config_path, "Run configuration (JSON)");
  };

  IngestArgs ingest;
  CLI::App* ingest_cmd = app.add_subcommand("ingest", "Load, normalize and split corpora");
  ingest_cmd->add_option("--parallel", ingest.parallel, "Seed parallel corpus (TSV or JSONL)");
  ingest_cmd->add_option("--mono", ingest.mono, "Monolingual Japanese text");
  ingest_cmd->add_option("--format", ingest.format, "tsv or jsonl (default: by extension)");
  ingest_cmd->add_option("--name", ingest.name, "Corpus name used in generated ids");
  ingest_cmd->add_option("--split", ingest.split, "Training fraction in (0,1)");
  ingest_cmd->add_option("--seed", ingest.seed, "Shuffle seed");
  add_common(ingest_cmd);

  BacktranslateArgs bt;
  CLI::App* bt_cmd = app.add_subcommand("backtranslate", "Generate synthetic pairs");
  bt_cmd->add_option("--mono", bt.mono, "Monolingual input (text or mono.jsonl)")->required();
  bt_cmd->add_option("--backend", bt.backend, "'mock' or translator URL");
  bt_cmd->add_option("--backend-id", bt.backend_id, "Identifier recorded in provenance");
  bt_cmd->add_option("--batch-size", bt.batch_size);
  bt_cmd->add_option("--max-retries", bt.max_retries);
  bt_cmd->add_option("--round", bt.round);
  bt_cmd->add_option("--max-in-flight", bt.max_in_flight);
  bt_cmd->add_option("--timeout-ms", bt.timeout_ms);
  add_common(bt_cmd);

  FilterArgs filter;
  CLI::App* filter_cmd = app.add_subcommand("filter", "Apply quality filters");
  filter_cmd->add_option("--input", filter.input, "Pairs to filter (JSONL or TSV)")->required();
  add_common(filter_cmd);

  AssembleArgs assemble;
  CLI::App* assemble_cmd = app.add_subcommand("assemble", "Build the training file");
  assemble_cmd->add_option("--parallel", assemble.parallel, "Seed pairs")->required();
  assemble_cmd->add_option("--synthetic", assemble.synthetic, "Filtered synthetic pairs");
  assemble_cmd->add_option("--ratio", assemble.ratio, "Max synthetic:seed ratio");
  assemble_cmd->add_option("--upsample", assemble.upsample, "Seed repetitions");
  assemble_cmd->add_option("--seed", assemble.seed, "Shuffle seed");
  assemble_cmd->add_option("--template-file", assemble.template_file, "Prompt template");
  add_common(assemble_cmd);

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score hypotheses against references");
  eval_cmd->add_option("--hyp", eval.hyp, "Hypotheses, one per line")->required();
  eval_cmd->add_option("--ref", eval.ref, "References, one per line")->required();
  eval_cmd->add_option("--src", eval.src, "Sources, one per line (for COMET)");
  eval_cmd->add_option("--comet-endpoint", eval.comet_endpoint, "COMET scorer URL");
  eval_cmd->add_option("--comet-batch-size", eval.comet_batch_size);
  eval_cmd->add_option("--name", eval.name, "System name");
  eval_cmd->add_option("--out", eval.out, "Report path (default <out-dir>/report.json)");
  eval_cmd->add_option("--smooth-k", eval.smooth_k, "BLEU add-k smoothing for n >= 2");
  add_common(eval_cmd);

  ReportArgs report;
  CLI::App* report_cmd = app.add_subcommand("report", "Tabulate reports and pick the best");
  report_cmd->add_option("--reports", report.reports, "Report JSON files")->required();
  report_cmd->add_option("--ids", report.ids, "Checkpoint ids (default: file stems)");
  report_cmd->add_option("--criterion", report.criterion, "comet, chrf or bleu");
  report_cmd->add_option("--format", report.format, "markdown or tsv");
  add_common(report_cmd);

  RunAllArgs run_all;
  CLI::App* run_all_cmd = app.add_subcommand("run-all", "Run every stage in order");
  run_all_cmd->add_option("--parallel", run_all.parallel)->required();
  run_all_cmd->add_option("--mono", run_all.mono)->required();
  run_all_cmd->add_option("--backend", run_all.backend);
  run_all_cmd->add_option("--hyp", run_all.hyp, "Hypotheses for the validation split");
  add_common(run_all_cmd);

  std::vector<const char*> raw;
  raw.reserve(argv.size() + 1);
  raw.push_back("btmt");
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    ctx.load();
    if (*ingest_cmd) return cmd_ingest(ctx, ingest, io);
    if (*bt_cmd) return cmd_backtranslate(ctx, bt, io);
    if (*filter_cmd) return cmd_filter(ctx, filter, io);
    if (*assemble_cmd) return cmd_assemble(ctx, assemble, io);
    if (*eval_cmd) return cmd_evaluate(ctx, eval, io);
    if (*report_cmd) return cmd_report(ctx, report, io);
    if (*run_all_cmd) return cmd_run_all(ctx, run_all, io);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace btmt::cli

#endif  // BTMT_CLI_HPP_
