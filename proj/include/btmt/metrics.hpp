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

// Corpus-level BLEU, chrF and chrF++, evaluation reports, checkpoint
// selection and report tables. Single reference per segment.

#ifndef BTMT_METRICS_HPP_
#define BTMT_METRICS_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btmt/error.hpp"
#include "btmt/segmenter.hpp"
#include "json.hpp"

namespace btmt {

// ---------------------------------------------------------------------------
// BLEU

struct NGramMatches {
  std::size_t clipped = 0;
  std::size_t total = 0;

  friend bool operator==(const NGramMatches&, const NGramMatches&) = default;
};

enum class BleuTokenization { kEnglish13aLike, kPretokenized };

struct BleuConfig {
  std::size_t max_order = 4;
  /// Additive smoothing constant for orders >= 2; nullopt disables smoothing.
  std::optional<double> add_k;
  BleuTokenization tokenization = BleuTokenization::kEnglish13aLike;

  void validate() const {
    if (max_order < 1 || max_order > 9) {
      throw Error(Errc::kInvalidArgument, "max_order must be in 1..9");
    }
    if (add_k && !(*add_k > 0.0)) {
      throw Error(Errc::kInvalidArgument, "smoothing k must be > 0");
    }
  }
};

inline void require_parallel(std::size_t hyps, std::size_t refs) {
  if (hyps != refs) {
    throw Error(Errc::kLengthMismatch, std::to_string(hyps) +
                                           " hypotheses vs " +
                                           std::to_string(refs) +
                                           " references");
  }
}

/// Clipped n-gram matches for one segment pair.
inline NGramMatches segment_matches(const NGramProfile& hyp,
                                    const NGramProfile& ref) {
  NGramMatches m;
  for (const auto& [gram, count] : hyp.counts) {
    m.total += count;
    if (const auto it = ref.counts.find(gram); it != ref.counts.end()) {
      m.clipped += std::min(count, it->second);
    }
  }
  return m;
}

inline NGramMatches modified_precision(
    std::span<const TokenSequence> hypotheses,
    std::span<const TokenSequence> references, std::size_t n) {
  require_parallel(hypotheses.size(), references.size());
  NGramMatches sum;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const NGramMatches m =
        segment_matches(word_ngrams(hypotheses[i].tokens, n),
                        word_ngrams(references[i].tokens, n));
    sum.clipped += m.clipped;
    sum.total += m.total;
  }
  return sum;
}

/// 1 when hyp_length >= ref_length, exp(1 - r/c) otherwise, exactly 0 for
/// an empty hypothesis.
inline double brevity_penalty(std::size_t hyp_length, std::size_t ref_length) {
  if (hyp_length >= ref_length) return 1.0;
  if (hyp_length == 0) return 0.0;
  return std::exp(1.0 - static_cast<double>(ref_length) /
                            static_cast<double>(hyp_length));
}

struct BleuStats {
  std::vector<NGramMatches> orders;  // index n-1
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

inline TokenSequence bleu_tokens(std::string_view text,
                                 BleuTokenization tokenization) {
  return tokenization == BleuTokenization::kEnglish13aLike
             ? tokenize_english(text)
             : split_whitespace(text);
}

/// Sufficient statistics, accumulated in segment order.
inline BleuStats bleu_stats(std::span<const std::string> hypotheses,
                            std::span<const std::string> references,
                            const BleuConfig& config) {
  config.validate();
  require_parallel(hypotheses.size(), references.size());
  if (hypotheses.empty()) throw Error(Errc::kEmptyInput, "no segments");

  BleuStats stats;
  stats.orders.resize(config.max_order);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const TokenSequence hyp = bleu_tokens(hypotheses[i], config.tokenization);
    const TokenSequence ref = bleu_tokens(references[i], config.tokenization);
    stats.hyp_length += hyp.size();
    stats.ref_length += ref.size();
    for (std::size_t n = 1; n <= config.max_order; ++n) {
      const NGramMatches m = segment_matches(word_ngrams(hyp.tokens, n),
                                             word_ngrams(ref.tokens, n));
      stats.orders[n - 1].clipped += m.clipped;
      stats.orders[n - 1].total += m.total;
    }
  }
  return stats;
}

inline double bleu_from_stats(const BleuStats& stats, const BleuConfig& config) {
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= stats.orders.size(); ++n) {
    double matches = static_cast<double>(stats.orders[n - 1].clipped);
    double total = static_cast<double>(stats.orders[n - 1].total);
    if (config.add_k && n >= 2) {
      matches += *config.add_k;
      total += *config.add_k;
    }
    if (matches <= 0.0 || total <= 0.0) return 0.0;
    log_sum += std::log(matches / total);
  }
  const double precision =
      std::exp(log_sum / static_cast<double>(stats.orders.size()));
  const double score =
      100.0 * brevity_penalty(stats.hyp_length, stats.ref_length) * precision;
  return std::clamp(score, 0.0, 100.0);
}

inline double corpus_bleu(std::span<const std::string> hypotheses,
                          std::span<const std::string> references,
                          const BleuConfig& config = {}) {
  return bleu_from_stats(bleu_stats(hypotheses, references, config), config);
}

// ---------------------------------------------------------------------------
// chrF / chrF++

struct ChrfConfig {
  std::size_t char_order = 6;
  std::size_t word_order = 0;
  double beta = 2.0;
  bool strip_whitespace = true;

  static ChrfConfig chrf() { return {}; }
  static ChrfConfig chrf_plus_plus() { return {6, 2, 2.0, true}; }

  void validate() const {
    if (char_order < 1) throw Error(Errc::kInvalidOrder, "char_order >= 1");
    if (!(beta > 0.0)) throw Error(Errc::kInvalidArgument, "beta must be > 0");
  }
};

/// Corpus-aggregated counts for one n-gram order.
struct OrderCounts {
  std::size_t matches = 0;
  std::size_t hyp_total = 0;
  std::size_t ref_total = 0;
};

inline double f_beta(const OrderCounts& c, double beta) {
  if (c.hyp_total == 0 || c.ref_total == 0) return 0.0;
  const double precision =
      static_cast<double>(c.matches) / static_cast<double>(c.hyp_total);
  const double recall =
      static_cast<double>(c.matches) / static_cast<double>(c.ref_total);
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom <= 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

/// Per-order counts: character orders first, then word orders.
inline std::vector<OrderCounts> chrf_stats(
    std::span<const std::string> hypotheses,
    std::span<const std::string> references, const ChrfConfig& config) {
  config.validate();
  require_parallel(hypotheses.size(), references.size());
  if (hypotheses.empty()) throw Error(Errc::kEmptyInput, "no segments");

  std::vector<OrderCounts> counts(config.char_order + config.word_order);
  auto accumulate = [](OrderCounts& into, const NGramProfile& hyp,
                       const NGramProfile& ref) {
    const NGramMatches m = segment_matches(hyp, ref);
    into.matches += m.clipped;
    into.hyp_total += m.total;
    into.ref_total += ref.total();
  };

  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    for (std::size_t n = 1; n <= config.char_order; ++n) {
      accumulate(counts[n - 1],
                 char_ngrams(hypotheses[i], n, config.strip_whitespace),
                 char_ngrams(references[i], n, config.strip_whitespace));
    }
    if (config.word_order > 0) {
      const TokenSequence hyp = tokenize_english(hypotheses[i]);
      const TokenSequence ref = tokenize_english(references[i]);
      for (std::size_t n = 1; n <= config.word_order; ++n) {
        accumulate(counts[config.char_order + n - 1],
                   word_ngrams(hyp.tokens, n), word_ngrams(ref.tokens, n));
      }
    }
  }
  return counts;
}

/// Mean F-beta over orders with any n-grams on either side, times 100.
inline double chrf_from_stats(const std::vector<OrderCounts>& counts,
                              double beta) {
  double sum = 0.0;
  std::size_t used = 0;
  for (const OrderCounts& c : counts) {
    if (c.hyp_total + c.ref_total == 0) continue;
    sum += f_beta(c, beta);
    ++used;
  }
  if (used == 0) return 0.0;
  return std::clamp(100.0 * sum / static_cast<double>(used), 0.0, 100.0);
}

inline double chrf_score(std::span<const std::string> hypotheses,
                         std::span<const std::string> references,
                         const ChrfConfig& config = {}) {
  return chrf_from_stats(chrf_stats(hypotheses, references, config),
                         config.beta);
}

// ---------------------------------------------------------------------------
// Reports

enum class Criterion { kComet, kChrf, kBleu };

inline std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::kComet: return "comet";
    case Criterion::kChrf: return "chrf";
    case Criterion::kBleu: return "bleu";
  }
  return "comet";
}

inline Criterion parse_criterion(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "comet") return Criterion::kComet;
  if (lower == "chrf") return Criterion::kChrf;
  if (lower == "bleu") return Criterion::kBleu;
  throw Error(Errc::kInvalidArgument,
              "unknown criterion '" + std::string(name) + "'");
}

/// Scores for one system. Metrics are optional so that published tables
/// with missing cells can be represented.
struct EvaluationReport {
  std::string system_name;
  std::optional<double> bleu;
  std::optional<double> chrf;
  std::optional<double> chrf_pp;
  std::optional<double> comet;
  std::size_t segment_count = 0;
  std::optional<std::string> comet_warning;

  std::optional<double> metric(Criterion c) const {
    switch (c) {
      case Criterion::kComet: return comet;
      case Criterion::kChrf: return chrf;
      case Criterion::kBleu: return bleu;
    }
    return std::nullopt;
  }

  void validate() const {
    for (const auto& v : {bleu, chrf, chrf_pp}) {
      if (v && !(*v >= 0.0 && *v <= 100.0)) {
        throw Error(Errc::kInvalidArgument, "score outside [0,100]");
      }
    }
    if (segment_count == 0) {
      throw Error(Errc::kInvalidArgument, "segment_count must be positive");
    }
  }
};

inline nlohmann::ordered_json report_to_json(const EvaluationReport& r) {
  nlohmann::ordered_json j;
  j["system_name"] = r.system_name;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("bleu", r.bleu);
  put("chrf", r.chrf);
  put("chrf_pp", r.chrf_pp);
  put("comet", r.comet);
  j["segment_count"] = r.segment_count;
  if (r.comet_warning) j["comet_warning"] = *r.comet_warning;
  return j;
}

inline EvaluationReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw Error(Errc::kMalformedRecord, "report must be a JSON object");
  }
  EvaluationReport r;
  try {
    r.system_name = j.at("system_name").get<std::string>();
    auto get = [&](const char* key) -> std::optional<double> {
      const auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      return it->get<double>();
    };
    r.bleu = get("bleu");
    r.chrf = get("chrf");
    r.chrf_pp = get("chrf_pp");
    r.comet = get("comet");
    r.segment_count = j.at("segment_count").get<std::size_t>();
    if (const auto w = j.find("comet_warning"); w != j.end()) {
      r.comet_warning = w->get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformedRecord, e.what());
  }
  return r;
}

using NamedReport = std::pair<std::string, EvaluationReport>;

/// Argmax of the criterion; ties go to the earliest report.
inline std::string select_best_checkpoint(std::span<const NamedReport> reports,
                                          Criterion criterion) {
  if (reports.empty()) throw Error(Errc::kEmptyInput, "no reports");
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::optional<double> value = reports[i].second.metric(criterion);
    if (!value) {
      throw Error(Errc::kMissingMetric, "report '" + reports[i].first +
                                            "' has no " +
                                            std::string(to_string(criterion)));
    }
    if (i == 0 || *value > best_value) {
      best = i;
      best_value = *value;
    }
  }
  return reports[best].first;
}

enum class TableFormat { kMarkdown, kTsv };

namespace detail {

inline std::string fixed(const std::optional<double>& value, int decimals) {
  if (!value) return "--";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, *value);
  return buf;
}

}  // namespace detail

/// Columns System | BLEU | chrF | COMET. BLEU and chrF use two decimals,
/// COMET three; missing values print as "--".
inline std::string render_report_table(std::span<const NamedReport> reports,
                                       TableFormat format) {
  if (reports.empty()) throw Error(Errc::kEmptyInput, "no reports");
  std::string out;
  if (format == TableFormat::kMarkdown) {
    out += "| System | BLEU | chrF | COMET |\n";
    out += "|---|---:|---:|---:|\n";
  } else {
    out += "System\tBLEU\tchrF\tCOMET\n";
  }
  for (const auto& [id, report] : reports) {
    const std::string cells[] = {report.system_name,
                                 detail::fixed(report.bleu, 2),
                                 detail::fixed(report.chrf, 2),
                                 detail::fixed(report.comet, 3)};
    if (format == TableFormat::kMarkdown) {
      out += "| " + cells[0] + " | " + cells[1] + " | " + cells[2] + " | " +
             cells[3] + " |\n";
    } else {
      out += cells[0] + "\t" + cells[1] + "\t" + cells[2] + "\t" + cells[3] +
             "\n";
    }
  }
  return out;
}

}  // namespace btmt

#endif  // BTMT_METRICS_HPP_
