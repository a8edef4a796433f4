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

// Quality gates for synthetic pairs. Every pair gets exactly one decision;
// the reason is the first enabled filter, in configured order, that fails.

#ifndef BTMT_FILTERS_HPP_
#define BTMT_FILTERS_HPP_

#include <array>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btmt/corpus.hpp"
#include "btmt/error.hpp"
#include "btmt/unicode.hpp"
#include "json.hpp"

namespace btmt {

enum class FilterKind { kEmpty, kLengthRatio, kLangIdSource, kLangIdTarget,
                        kDuplicate };

inline constexpr std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::kEmpty: return "Empty";
    case FilterKind::kLengthRatio: return "LengthRatio";
    case FilterKind::kLangIdSource: return "LangIdSource";
    case FilterKind::kLangIdTarget: return "LangIdTarget";
    case FilterKind::kDuplicate: return "Duplicate";
  }
  return "Empty";
}

inline FilterKind parse_filter_kind(std::string_view name) {
  for (FilterKind k : {FilterKind::kEmpty, FilterKind::kLengthRatio,
                       FilterKind::kLangIdSource, FilterKind::kLangIdTarget,
                       FilterKind::kDuplicate}) {
    if (to_string(k) == name) return k;
  }
  throw Error(Errc::kInvalidConfig, "unknown filter '" + std::string(name) + "'");
}

struct FilterConfig {
  double min_len_ratio = 0.5;
  double max_len_ratio = 6.0;
  double min_script_confidence = 0.5;
  std::size_t min_chars = 1;
  std::vector<FilterKind> enabled_filters = {
      FilterKind::kEmpty, FilterKind::kLengthRatio, FilterKind::kLangIdSource,
      FilterKind::kLangIdTarget, FilterKind::kDuplicate};

  void validate() const {
    if (!(min_len_ratio > 0.0) || !(max_len_ratio > 0.0)) {
      throw Error(Errc::kInvalidConfig, "length-ratio bounds must be positive");
    }
    if (!(min_len_ratio < max_len_ratio)) {
      throw Error(Errc::kInvalidConfig, "min_len_ratio must be < max_len_ratio");
    }
    if (!(min_script_confidence > 0.0 && min_script_confidence <= 1.0)) {
      throw Error(Errc::kInvalidConfig,
                  "min_script_confidence must be in (0, 1]");
    }
    if (min_chars < 1) throw Error(Errc::kInvalidConfig, "min_chars >= 1");
    std::set<FilterKind> seen;
    for (FilterKind k : enabled_filters) {
      if (!seen.insert(k).second) {
        throw Error(Errc::kInvalidConfig,
                    "filter listed twice: " + std::string(to_string(k)));
      }
    }
  }
};

enum class Verdict { kPass, kReject };

struct FilterDecision {
  std::string pair_id;
  Verdict verdict = Verdict::kPass;
  std::optional<FilterKind> reason;
  std::string detail;

  friend bool operator==(const FilterDecision&, const FilterDecision&) = default;
};

struct ScriptHistogram {
  std::array<std::size_t, 6> counts{};  // indexed by unicode::Script
  std::size_t total_classified = 0;

  std::size_t operator[](unicode::Script s) const {
    return counts[static_cast<std::size_t>(s)];
  }
};

/// Non-whitespace character count of the NFC form.
inline std::size_t visible_length(std::string_view text) {
  return unicode::strip_whitespace(unicode::decode(unicode::nfc(text))).size();
}

/// Target over source character count, whitespace excluded.
inline double length_ratio(const SentencePair& pair) {
  const std::size_t source = visible_length(pair.source_text);
  if (source == 0) {
    throw Error(Errc::kEmptySource, "pair '" + pair.id + "' has empty source");
  }
  return static_cast<double>(visible_length(pair.target_text)) /
         static_cast<double>(source);
}

inline ScriptHistogram classify_script(std::string_view text) {
  ScriptHistogram hist;
  for (char32_t c : unicode::decode(text)) {
    if (unicode::is_whitespace(c) || unicode::is_punctuation(c)) continue;
    ++hist.counts[static_cast<std::size_t>(unicode::script_of(c))];
    ++hist.total_classified;
  }
  return hist;
}

inline double lang_confidence(const ScriptHistogram& hist, Language language) {
  if (hist.total_classified == 0) return 0.0;
  std::size_t hits = 0;
  if (language == Language::kJapanese) {
    hits = hist[unicode::Script::kHiragana] + hist[unicode::Script::kKatakana] +
           hist[unicode::Script::kHan];
  } else if (language == Language::kEnglish) {
    hits = hist[unicode::Script::kLatin];
  }
  return static_cast<double>(hits) /
         static_cast<double>(hist.total_classified);
}

namespace detail {

inline std::string two_decimals(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

}  // namespace detail

struct FilterResult {
  std::vector<SentencePair> kept;
  std::vector<FilterDecision> decisions;
};

inline FilterResult apply_filters(std::span<const SentencePair> pairs,
                                  const FilterConfig& config) {
  config.validate();
  FilterResult result;
  result.decisions.reserve(pairs.size());
  std::set<std::pair<std::string, std::string>> seen;

  for (const SentencePair& pair : pairs) {
    FilterDecision decision{pair.id, Verdict::kPass, std::nullopt, ""};
    auto reject = [&](FilterKind kind, std::string detail) {
      decision.verdict = Verdict::kReject;
      decision.reason = kind;
      decision.detail = std::move(detail);
    };

    for (FilterKind kind : config.enabled_filters) {
      switch (kind) {
        case FilterKind::kEmpty: {
          const std::size_t src = visible_length(pair.source_text);
          const std::size_t tgt = visible_length(pair.target_text);
          if (src < config.min_chars || tgt < config.min_chars) {
            reject(kind, "src_chars=" + std::to_string(src) +
                             " tgt_chars=" + std::to_string(tgt));
          }
          break;
        }
        case FilterKind::kLengthRatio: {
          if (visible_length(pair.source_text) == 0) {
            reject(kind, "empty source");
            break;
          }
          const double ratio = length_ratio(pair);
          if (ratio < config.min_len_ratio || ratio > config.max_len_ratio) {
            reject(kind, detail::two_decimals(ratio));
          }
          break;
        }
        case FilterKind::kLangIdSource: {
          const double conf = lang_confidence(classify_script(pair.source_text),
                                              Language::kJapanese);
          if (conf < config.min_script_confidence) {
            reject(kind, "ja=" + detail::two_decimals(conf));
          }
          break;
        }
        case FilterKind::kLangIdTarget: {
          const double conf = lang_confidence(classify_script(pair.target_text),
                                              Language::kEnglish);
          if (conf < config.min_script_confidence) {
            reject(kind, "en=" + detail::two_decimals(conf));
          }
          break;
        }
        case FilterKind::kDuplicate: {
          auto key = std::make_pair(unicode::nfc(pair.source_text),
                                    unicode::nfc(pair.target_text));
          if (!seen.insert(std::move(key)).second) {
            reject(kind, "duplicate of an earlier pair");
          }
          break;
        }
      }
      if (decision.verdict == Verdict::kReject) break;
    }

    if (decision.verdict == Verdict::kPass) result.kept.push_back(pair);
    result.decisions.push_back(std::move(decision));
  }
  return result;
}

inline nlohmann::ordered_json decision_to_json(const FilterDecision& d) {
  nlohmann::ordered_json j;
  j["id"] = d.pair_id;
  j["verdict"] = d.verdict == Verdict::kPass ? "pass" : "reject";
  if (d.reason) j["reason"] = std::string(to_string(*d.reason));
  j["detail"] = d.detail;
  return j;
}

/// One JSON object per line, in decision order.
inline std::string serialize_decisions(std::span<const FilterDecision> ds) {
  std::string out;
  for (const FilterDecision& d : ds) {
    out += decision_to_json(d).dump();
    out += '\n';
  }
  return out;
}

}  // namespace btmt

#endif  // BTMT_FILTERS_HPP_
