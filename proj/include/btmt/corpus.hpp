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

// Corpus data model: sentence pairs with provenance, parallel and
// monolingual corpora, TSV/JSONL loaders and writers, and the seeded
// train/validation split.
//
// Formats:
//   TSV   one record per line, "source<TAB>target", no header, no id column.
//   JSONL {"id":?, "src":..., "tgt":..., "provenance":?{"kind":"seed"|
//         "synthetic", "backend_id":?, "round":?}}
//   Monolingual text: one sentence per line, blank lines skipped.

#ifndef BTMT_CORPUS_HPP_
#define BTMT_CORPUS_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "btmt/error.hpp"
#include "btmt/io.hpp"
#include "btmt/shuffle.hpp"
#include "btmt/unicode.hpp"
#include "json.hpp"

namespace btmt {

enum class Language { kJapanese, kEnglish, kUnknown };

enum class ProvenanceKind { kSeed, kSynthetic };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::kSeed;
  std::optional<std::string> backend_id;
  std::optional<uint32_t> round;

  static Provenance seed() { return {}; }
  static Provenance synthetic(std::string backend,
                              std::optional<uint32_t> bt_round = std::nullopt) {
    return {ProvenanceKind::kSynthetic, std::move(backend), bt_round};
  }

  bool is_seed() const { return kind == ProvenanceKind::kSeed; }

  void validate() const {
    if (kind == ProvenanceKind::kSynthetic && !backend_id) {
      throw Error(Errc::kInvalidArgument,
                  "synthetic provenance requires backend_id");
    }
    if (kind == ProvenanceKind::kSeed && (backend_id || round)) {
      throw Error(Errc::kInvalidArgument,
                  "seed provenance must not carry backend_id or round");
    }
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SentencePair {
  std::string id;
  std::string source_text;
  std::string target_text;
  Provenance provenance;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

/// Checks the per-pair invariants; returns an empty string when valid.
inline std::string pair_violation(const SentencePair& pair) {
  if (pair.source_text.find('\n') != std::string::npos ||
      pair.target_text.find('\n') != std::string::npos) {
    return "text contains a newline";
  }
  if (pair.provenance.kind == ProvenanceKind::kSynthetic &&
      !pair.provenance.backend_id) {
    return "synthetic provenance requires backend_id";
  }
  if (pair.provenance.kind == ProvenanceKind::kSeed) {
    if (pair.provenance.backend_id || pair.provenance.round) {
      return "seed provenance must not carry backend_id or round";
    }
    if (unicode::is_blank(pair.source_text)) return "empty source text";
    if (unicode::is_blank(pair.target_text)) return "empty target text";
  }
  return {};
}

/// Ordered pairs with unique ids. Immutable after construction.
class ParallelCorpus {
 public:
  ParallelCorpus() = default;
  ParallelCorpus(std::string name, std::vector<SentencePair> pairs)
      : name_(std::move(name)), pairs_(std::move(pairs)) {
    std::unordered_set<std::string_view> seen;
    for (const SentencePair& pair : pairs_) {
      if (!seen.insert(pair.id).second) {
        throw Error(Errc::kDuplicateId, "duplicate pair id '" + pair.id + "'");
      }
      if (std::string why = pair_violation(pair); !why.empty()) {
        throw Error(Errc::kInvalidArgument, "pair '" + pair.id + "': " + why);
      }
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<SentencePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

 private:
  std::string name_;
  std::vector<SentencePair> pairs_;
};

struct MonoLine {
  std::size_t line_number = 0;
  std::string text;

  friend bool operator==(const MonoLine&, const MonoLine&) = default;
};

class MonolingualCorpus {
 public:
  MonolingualCorpus() = default;
  MonolingualCorpus(std::vector<MonoLine> lines, Language hint)
      : lines_(std::move(lines)), language_hint_(hint) {
    std::size_t previous = 0;
    for (const MonoLine& line : lines_) {
      if (line.line_number <= previous) {
        throw Error(Errc::kInvalidArgument,
                    "line numbers must be strictly increasing");
      }
      if (unicode::is_blank(line.text)) {
        throw Error(Errc::kInvalidArgument, "blank monolingual entry",
                    line.line_number);
      }
      previous = line.line_number;
    }
  }

  const std::vector<MonoLine>& lines() const { return lines_; }
  Language language_hint() const { return language_hint_; }
  std::size_t size() const { return lines_.size(); }
  bool empty() const { return lines_.empty(); }

 private:
  std::vector<MonoLine> lines_;
  Language language_hint_ = Language::kUnknown;
};

struct SplitSpec {
  double train_fraction = 0.9;
  uint64_t shuffle_seed = 42;

  void validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
      throw Error(Errc::kInvalidArgument,
                  "train_fraction must be strictly between 0 and 1");
    }
  }
};

enum class CorpusFormat { kTsv, kJsonl };

// ---------------------------------------------------------------------------
// Provenance JSON

inline nlohmann::ordered_json provenance_to_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["kind"] = p.is_seed() ? "seed" : "synthetic";
  if (p.backend_id) j["backend_id"] = *p.backend_id;
  if (p.round) j["round"] = *p.round;
  return j;
}

/// Throws kMalformedRecord on schema violations.
inline Provenance provenance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw Error(Errc::kMalformedRecord, "provenance must be an object");
  }
  Provenance p;
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) {
    throw Error(Errc::kMalformedRecord, "provenance.kind missing");
  }
  if (*kind == "seed") {
    p.kind = ProvenanceKind::kSeed;
  } else if (*kind == "synthetic") {
    p.kind = ProvenanceKind::kSynthetic;
  } else {
    throw Error(Errc::kMalformedRecord,
                "unknown provenance kind " + kind->dump());
  }
  if (const auto b = j.find("backend_id"); b != j.end() && !b->is_null()) {
    if (!b->is_string()) {
      throw Error(Errc::kMalformedRecord, "backend_id must be a string");
    }
    p.backend_id = b->get<std::string>();
  }
  if (const auto r = j.find("round"); r != j.end() && !r->is_null()) {
    if (!r->is_number_unsigned()) {
      throw Error(Errc::kMalformedRecord, "round must be a non-negative int");
    }
    p.round = r->get<uint32_t>();
  }
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(Errc::kMalformedRecord, e.what());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Loading

namespace detail {

inline std::string canonical_field(std::string_view raw, std::size_t line) {
  if (!unicode::is_valid_utf8(raw)) {
    throw Error(Errc::kEncodingError, "invalid UTF-8", line);
  }
  std::string text = unicode::canonicalize(raw);
  if (text.find('\n') != std::string::npos) {
    throw Error(Errc::kMalformedRecord, "text contains a newline", line);
  }
  return text;
}

inline void check_encoding(const std::vector<std::string_view>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!unicode::is_valid_utf8(lines[i])) {
      throw Error(Errc::kEncodingError, "invalid UTF-8", i + 1);
    }
  }
}

inline std::string jsonl_line(const SentencePair& pair) {
  nlohmann::ordered_json j;
  j["id"] = pair.id;
  j["src"] = pair.source_text;
  j["tgt"] = pair.target_text;
  j["provenance"] = provenance_to_json(pair.provenance);
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

}  // namespace detail

/// Parses parallel data already in memory. Ids default to
/// `<name>:<1-based record index>`.
inline ParallelCorpus parse_parallel(std::string_view data, CorpusFormat format,
                                     const std::string& name = "") {
  const std::vector<std::string_view> lines = io::split_lines(data);
  detail::check_encoding(lines);

  std::vector<SentencePair> pairs;
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (unicode::is_blank(line)) continue;

    SentencePair pair;
    pair.id = name + ":" + std::to_string(pairs.size() + 1);
    if (format == CorpusFormat::kTsv) {
      const std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos ||
          line.find('\t', tab + 1) != std::string_view::npos) {
        std::size_t fields = 1;
        for (char c : line) fields += (c == '\t');
        throw Error(Errc::kMalformedRecord,
                    "expected 2 tab-separated fields, found " +
                        std::to_string(fields),
                    line_no);
      }
      pair.source_text = detail::canonical_field(line.substr(0, tab), line_no);
      pair.target_text = detail::canonical_field(line.substr(tab + 1), line_no);
    } else {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::kMalformedRecord, e.what(), line_no);
      }
      if (!j.is_object()) {
        throw Error(Errc::kMalformedRecord, "record is not an object", line_no);
      }
      const auto src = j.find("src");
      const auto tgt = j.find("tgt");
      if (src == j.end() || !src->is_string() || tgt == j.end() ||
          !tgt->is_string()) {
        throw Error(Errc::kMalformedRecord, "missing string src/tgt", line_no);
      }
      pair.source_text =
          detail::canonical_field(src->get_ref<const std::string&>(), line_no);
      pair.target_text =
          detail::canonical_field(tgt->get_ref<const std::string&>(), line_no);
      if (const auto id = j.find("id"); id != j.end() && !id->is_null()) {
        if (!id->is_string()) {
          throw Error(Errc::kMalformedRecord, "id must be a string", line_no);
        }
        pair.id = id->get<std::string>();
      }
      if (const auto p = j.find("provenance"); p != j.end() && !p->is_null()) {
        try {
          pair.provenance = provenance_from_json(*p);
        } catch (const Error& e) {
          throw Error(Errc::kMalformedRecord, e.what(), line_no);
        }
      }
    }

    if (std::string why = pair_violation(pair); !why.empty()) {
      throw Error(Errc::kMalformedRecord, why, line_no);
    }
    if (!ids.insert(pair.id).second) {
      throw Error(Errc::kMalformedRecord, "duplicate id '" + pair.id + "'",
                  line_no);
    }
    pairs.push_back(std::move(pair));
  }
  if (pairs.empty()) throw Error(Errc::kEmptyCorpus, "no records");
  return ParallelCorpus(name, std::move(pairs));
}

inline ParallelCorpus load_parallel(const std::filesystem::path& path,
                                    CorpusFormat format,
                                    const std::string& name = "") {
  const std::string data = io::read_file(path);
  try {
    return parse_parallel(data, format, name);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message(), e.line());
  }
}

inline std::string serialize_parallel(const ParallelCorpus& corpus,
                                      CorpusFormat format) {
  std::string out;
  for (const SentencePair& pair : corpus.pairs()) {
    if (format == CorpusFormat::kTsv) {
      if (pair.source_text.find('\t') != std::string::npos ||
          pair.target_text.find('\t') != std::string::npos) {
        throw Error(Errc::kUnrepresentableInTsv,
                    "pair '" + pair.id + "' contains a tab");
      }
      out += pair.source_text;
      out += '\t';
      out += pair.target_text;
    } else {
      out += detail::jsonl_line(pair);
    }
    out += '\n';
  }
  return out;
}

/// TSV drops ids and provenance; only JSONL round-trips a corpus exactly.
inline void save_parallel(const ParallelCorpus& corpus,
                          const std::filesystem::path& path,
                          CorpusFormat format) {
  io::write_file(path, serialize_parallel(corpus, format));
}

inline MonolingualCorpus parse_monolingual(std::string_view data,
                                           Language hint) {
  const std::vector<std::string_view> lines = io::split_lines(data);
  detail::check_encoding(lines);
  std::vector<MonoLine> entries;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string text = unicode::canonicalize(lines[i]);
    if (text.empty()) continue;
    entries.push_back({i + 1, std::move(text)});
  }
  if (entries.empty()) throw Error(Errc::kEmptyCorpus, "no non-blank lines");
  return MonolingualCorpus(std::move(entries), hint);
}

inline MonolingualCorpus load_monolingual(const std::filesystem::path& path,
                                          Language hint) {
  const std::string data = io::read_file(path);
  try {
    return parse_monolingual(data, hint);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message(), e.line());
  }
}

// ---------------------------------------------------------------------------
// Splitting

/// Number of training pairs for a corpus of size n: floor(fraction * n),
/// clamped so each side keeps at least one pair. The 1e-9 slack absorbs
/// binary rounding of decimal fractions such as 0.29 * 100.
inline std::size_t train_size(std::size_t n, double fraction) {
  auto k = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 1e-9));
  if (k < 1) k = 1;
  if (k > n - 1) k = n - 1;
  return k;
}

/// Seeded Fisher-Yates over pair indices; train takes the first
/// train_size() shuffled pairs, valid the rest, both in shuffled order.
inline std::pair<ParallelCorpus, ParallelCorpus> split(
    const ParallelCorpus& corpus, const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = corpus.size();
  if (n < 2) {
    throw Error(Errc::kCorpusTooSmall,
                "need at least 2 pairs, got " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  fisher_yates(std::span<std::size_t>(order), spec.shuffle_seed);

  const std::size_t k = train_size(n, spec.train_fraction);
  std::vector<SentencePair> train;
  std::vector<SentencePair> valid;
  train.reserve(k);
  valid.reserve(n - k);
  for (std::size_t i = 0; i < n; ++i) {
    (i < k ? train : valid).push_back(corpus.pairs()[order[i]]);
  }
  return {ParallelCorpus(corpus.name(), std::move(train)),
          ParallelCorpus(corpus.name(), std::move(valid))};
}

}  // namespace btmt

#endif  // BTMT_CORPUS_HPP_
