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

// Backtranslation: monolingual Japanese lines are sent through a JA->EN
// translator in batches and minted into synthetic pairs.
//
// Remote wire protocol:
//   POST <endpoint>/translate
//   {"texts":[...], "src_lang":"ja", "tgt_lang":"en", "beam_size":3,
//    "max_new_tokens":256, "length_penalty":1.0, "sampling":false}
//   -> {"translations":[...]}   (same cardinality as "texts")
//
// The built-in mock translates t to "MT:" + t.

#ifndef BTMT_BACKTRANSLATE_HPP_
#define BTMT_BACKTRANSLATE_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btmt/corpus.hpp"
#include "btmt/document.hpp"
#include "btmt/error.hpp"
#include "btmt/http.hpp"
#include "btmt/unicode.hpp"
#include "json.hpp"

namespace btmt {

struct DecodeParams {
  uint32_t beam_size = 3;
  uint32_t max_new_tokens = 256;
  double length_penalty = 1.0;
  bool sampling = false;

  void validate() const {
    if (beam_size < 1) throw Error(Errc::kInvalidConfig, "beam_size >= 1");
    if (max_new_tokens < 1) {
      throw Error(Errc::kInvalidConfig, "max_new_tokens >= 1");
    }
  }

  friend bool operator==(const DecodeParams&, const DecodeParams&) = default;
};

enum class BackendKind { kMock, kRemote };

struct TranslatorBackend {
  BackendKind kind = BackendKind::kMock;
  std::optional<std::string> endpoint;
  DecodeParams decode_params;
  std::string backend_id = "mock";
  std::chrono::milliseconds timeout{120000};

  static TranslatorBackend mock(std::string id = "mock") {
    TranslatorBackend b;
    b.backend_id = std::move(id);
    return b;
  }

  static TranslatorBackend remote(std::string url, std::string id = "remote",
                                  DecodeParams params = {}) {
    TranslatorBackend b;
    b.kind = BackendKind::kRemote;
    b.endpoint = std::move(url);
    b.backend_id = std::move(id);
    b.decode_params = params;
    return b;
  }

  void validate() const {
    if (kind == BackendKind::kRemote && !endpoint) {
      throw Error(Errc::kInvalidConfig, "remote backend requires an endpoint");
    }
    if (backend_id.empty()) {
      throw Error(Errc::kInvalidConfig, "backend_id must not be empty");
    }
    decode_params.validate();
  }
};

struct Direction {
  std::string src_lang = "ja";
  std::string tgt_lang = "en";
};

inline constexpr std::string_view kMockPrefix = "MT:";

/// Wire request body for a batch; exposed for protocol conformance tests.
inline nlohmann::ordered_json translate_request(
    std::span<const std::string> texts, const DecodeParams& params,
    const Direction& direction) {
  nlohmann::ordered_json j;
  j["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  j["src_lang"] = direction.src_lang;
  j["tgt_lang"] = direction.tgt_lang;
  j["beam_size"] = params.beam_size;
  j["max_new_tokens"] = params.max_new_tokens;
  j["length_penalty"] = params.length_penalty;
  j["sampling"] = params.sampling;
  return j;
}

inline std::vector<std::string> translate_batch(
    std::span<const std::string> texts, const TranslatorBackend& backend,
    const Direction& direction = {}) {
  backend.validate();
  if (texts.empty()) throw Error(Errc::kInvalidArgument, "empty batch");
  for (const std::string& t : texts) {
    if (t.empty()) throw Error(Errc::kInvalidArgument, "empty text in batch");
  }

  if (backend.kind == BackendKind::kMock) {
    std::vector<std::string> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(std::string(kMockPrefix) + t);
    return out;
  }

  const http::Endpoint endpoint = http::Endpoint::parse(*backend.endpoint);
  const std::string body =
      translate_request(texts, backend.decode_params, direction).dump();
  const auto response =
      http::post_json(endpoint, "/translate", body, backend.timeout);
  if (!response) {
    throw Error(Errc::kBackendUnreachable, "no response from " +
                                               *backend.endpoint);
  }
  if (response->status != 200) {
    throw Error(Errc::kProtocolError,
                "HTTP status " + std::to_string(response->status));
  }
  std::vector<std::string> translations;
  try {
    const nlohmann::json j = nlohmann::json::parse(response->body);
    translations = j.at("translations").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kProtocolError, e.what());
  }
  if (translations.size() != texts.size()) {
    throw Error(Errc::kProtocolError,
                "requested " + std::to_string(texts.size()) +
                    " translations, got " +
                    std::to_string(translations.size()));
  }
  for (const std::string& t : translations) {
    if (!unicode::is_valid_utf8(t)) {
      throw Error(Errc::kProtocolError, "translation is not valid UTF-8");
    }
  }
  return translations;
}

/// Zips sources with translations into Synthetic pairs with ids
/// `<backend_id>:bt:<round>:<line_number>`. Translations are canonicalized
/// and line breaks folded to spaces; nothing is filtered.
inline std::vector<SentencePair> mint_pairs(std::span<const MonoLine> sources,
                                            std::span<const std::string> translations,
                                            const std::string& backend_id,
                                            uint32_t round) {
  if (sources.size() != translations.size()) {
    throw Error(Errc::kLengthMismatch,
                std::to_string(sources.size()) + " sources vs " +
                    std::to_string(translations.size()) + " translations");
  }
  if (round < 1) throw Error(Errc::kInvalidArgument, "round must be >= 1");
  std::vector<SentencePair> pairs;
  pairs.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    std::string target = translations[i];
    std::replace(target.begin(), target.end(), '\n', ' ');
    std::replace(target.begin(), target.end(), '\r', ' ');
    SentencePair pair;
    pair.id = backend_id + ":bt:" + std::to_string(round) + ":" +
              std::to_string(sources[i].line_number);
    pair.source_text = sources[i].text;
    pair.target_text = unicode::canonicalize(target);
    pair.provenance = Provenance::synthetic(backend_id, round);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

struct BtJob {
  MonolingualCorpus input;
  TranslatorBackend backend;
  std::size_t batch_size = 16;
  std::size_t max_retries = 1;
  uint32_t round = 1;
  /// Batches sent concurrently; results are reassembled in input order.
  std::size_t max_in_flight = 1;
  Direction direction;

  void validate() const {
    if (batch_size < 1) throw Error(Errc::kInvalidConfig, "batch_size >= 1");
    if (round < 1) throw Error(Errc::kInvalidConfig, "round >= 1");
    if (max_in_flight < 1) {
      throw Error(Errc::kInvalidConfig, "max_in_flight >= 1");
    }
    backend.validate();
  }
};

struct BtFailure {
  std::size_t line_number = 0;
  std::string error;

  friend bool operator==(const BtFailure&, const BtFailure&) = default;
};

struct BtStats {
  std::size_t requested = 0;
  std::size_t translated = 0;
  std::size_t failed = 0;

  friend bool operator==(const BtStats&, const BtStats&) = default;
};

struct BtResult {
  std::vector<SentencePair> pairs;
  std::vector<BtFailure> failures;
  BtStats stats;
};

/// Translates one batch of texts. Injected by tests; the default sends the
/// batch to the job's backend.
using BatchTranslator =
    std::function<std::vector<std::string>(std::span<const std::string>)>;

namespace detail {

struct BatchOutcome {
  std::optional<std::vector<std::string>> translations;
  std::string error;
};

inline BatchOutcome run_batch(const BatchTranslator& translate,
                              std::span<const std::string> texts,
                              std::size_t max_retries) {
  BatchOutcome outcome;
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    try {
      std::vector<std::string> out = translate(texts);
      if (out.size() != texts.size()) {
        throw Error(Errc::kProtocolError, "translation count mismatch");
      }
      outcome.translations = std::move(out);
      outcome.error.clear();
      return outcome;
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
  }
  return outcome;
}

}  // namespace detail

inline BtResult run_backtranslation(const BtJob& job,
                                    const BatchTranslator& translate) {
  job.validate();
  if (job.input.empty()) throw Error(Errc::kEmptyCorpus, "no input lines");

  const std::vector<MonoLine>& lines = job.input.lines();
  std::vector<std::string> texts;
  texts.reserve(lines.size());
  for (const MonoLine& line : lines) texts.push_back(line.text);

  const std::size_t batches = (lines.size() + job.batch_size - 1) / job.batch_size;
  std::vector<detail::BatchOutcome> outcomes(batches);
  auto batch_span = [&](std::size_t b) {
    const std::size_t begin = b * job.batch_size;
    const std::size_t count = std::min(job.batch_size, texts.size() - begin);
    return std::span<const std::string>(texts).subspan(begin, count);
  };

  if (job.max_in_flight == 1) {
    for (std::size_t b = 0; b < batches; ++b) {
      outcomes[b] = detail::run_batch(translate, batch_span(b), job.max_retries);
    }
  } else {
    for (std::size_t start = 0; start < batches; start += job.max_in_flight) {
      const std::size_t stop = std::min(batches, start + job.max_in_flight);
      std::vector<std::future<detail::BatchOutcome>> pending;
      for (std::size_t b = start; b < stop; ++b) {
        pending.push_back(std::async(std::launch::async, [&, b] {
          return detail::run_batch(translate, batch_span(b), job.max_retries);
        }));
      }
      for (std::size_t b = start; b < stop; ++b) {
        outcomes[b] = pending[b - start].get();
      }
    }
  }

  BtResult result;
  result.stats.requested = lines.size();
  std::string last_error;
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t begin = b * job.batch_size;
    const std::size_t count = batch_span(b).size();
    const std::span<const MonoLine> sources(lines.data() + begin, count);
    if (outcomes[b].translations) {
      std::vector<SentencePair> minted = mint_pairs(
          sources, *outcomes[b].translations, job.backend.backend_id, job.round);
      result.pairs.insert(result.pairs.end(),
                          std::make_move_iterator(minted.begin()),
                          std::make_move_iterator(minted.end()));
      result.stats.translated += count;
    } else {
      last_error = outcomes[b].error;
      for (const MonoLine& line : sources) {
        result.failures.push_back({line.line_number, outcomes[b].error});
      }
      result.stats.failed += count;
    }
  }
  if (result.stats.translated == 0) {
    throw Error(Errc::kBackendUnreachable,
                "no batch succeeded; last error: " + last_error);
  }
  return result;
}

inline BtResult run_backtranslation(const BtJob& job) {
  const TranslatorBackend backend = job.backend;
  const Direction direction = job.direction;
  return run_backtranslation(job, [backend, direction](
                                      std::span<const std::string> texts) {
    return translate_batch(texts, backend, direction);
  });
}

inline nlohmann::ordered_json failure_to_json(const BtFailure& f) {
  nlohmann::ordered_json j;
  j["line"] = f.line_number;
  j["error"] = f.error;
  return j;
}

// ---------------------------------------------------------------------------
// Paragraph-level document translation

struct DocumentTranslation {
  std::string merged;
  ParityVerdict parity;
};

/// Translates each paragraph as one unit, merges the outputs with blank
/// lines and checks paragraph-count parity against the source.
inline DocumentTranslation translate_document(const Document& doc,
                                              const BatchTranslator& translate) {
  const std::vector<std::string> texts = doc.texts();
  const std::vector<std::string> outputs = translate(texts);
  if (outputs.size() != texts.size()) {
    throw Error(Errc::kProtocolError, "paragraph translation count mismatch");
  }
  DocumentTranslation result;
  for (const std::string& out : outputs) {
    if (!result.merged.empty()) result.merged += "\n\n";
    result.merged += out;
  }
  try {
    const Document translated = split_paragraphs(result.merged, doc.doc_id());
    result.parity = check_parity(doc, translated);
  } catch (const Error& e) {
    if (e.code() != Errc::kEmptyDocument) throw;
    result.parity = {false, doc.size(), 0, doc.doc_id()};
  }
  return result;
}

}  // namespace btmt

#endif  // BTMT_BACKTRANSLATE_HPP_
