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

// Training-set assembly: seed/synthetic mixing under a ratio cap, prompt
// rendering and the JSONL handoff file for the trainer.
//
// Training file, one object per line:
//   {"prompt":..., "completion":..., "id":..., "provenance":{...}}

#ifndef BTMT_ASSEMBLE_HPP_
#define BTMT_ASSEMBLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btmt/corpus.hpp"
#include "btmt/error.hpp"
#include "btmt/io.hpp"
#include "btmt/shuffle.hpp"
#include "json.hpp"

namespace btmt {

struct MixPolicy {
  double max_synthetic_ratio = 2.0;
  std::size_t seed_upsample = 1;
  uint64_t shuffle_seed = 42;

  void validate() const {
    if (!(max_synthetic_ratio > 0.0)) {
      throw Error(Errc::kInvalidConfig, "max_synthetic_ratio must be > 0");
    }
    if (seed_upsample < 1) {
      throw Error(Errc::kInvalidConfig, "seed_upsample must be >= 1");
    }
  }
};

/// Synthetic pairs admitted for a seed side of `seed_count` copies.
inline std::size_t synthetic_cap(std::size_t seed_count, double ratio) {
  return static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(seed_count) + 1e-9));
}

/// Seed pairs repeated seed_upsample times (copies k >= 2 get id suffix
/// "#k"), followed by the synthetic prefix that fits under the cap, then
/// shuffled with the policy seed.
inline ParallelCorpus mix(const ParallelCorpus& seed,
                          const ParallelCorpus& synthetic,
                          const MixPolicy& policy) {
  policy.validate();
  if (seed.empty()) throw Error(Errc::kEmptySeed, "seed corpus is empty");
  for (const SentencePair& pair : synthetic.pairs()) {
    if (pair.provenance.is_seed()) {
      throw Error(Errc::kProvenanceViolation,
                  "seed-tagged pair '" + pair.id + "' in synthetic input");
    }
  }

  const std::size_t seed_total = seed.size() * policy.seed_upsample;
  const std::size_t take = std::min(
      synthetic.size(), synthetic_cap(seed_total, policy.max_synthetic_ratio));

  std::vector<SentencePair> out;
  out.reserve(seed_total + take);
  for (std::size_t k = 1; k <= policy.seed_upsample; ++k) {
    for (const SentencePair& pair : seed.pairs()) {
      SentencePair copy = pair;
      if (k >= 2) copy.id += "#" + std::to_string(k);
      out.push_back(std::move(copy));
    }
  }
  out.insert(out.end(), synthetic.pairs().begin(),
             synthetic.pairs().begin() + static_cast<std::ptrdiff_t>(take));
  fisher_yates(std::span<SentencePair>(out), policy.shuffle_seed);
  return ParallelCorpus(seed.name(), std::move(out));
}

inline constexpr std::string_view kSrcSlot = "{src}";
inline constexpr std::string_view kTgtSlot = "{tgt}";

/// Prompt format with one "{src}" slot followed by one "{tgt}" slot.
class PromptTemplate {
 public:
  PromptTemplate(std::string text, std::string direction_label = "ja-en")
      : text_(std::move(text)), direction_label_(std::move(direction_label)) {
    src_pos_ = text_.find(kSrcSlot);
    tgt_pos_ = text_.find(kTgtSlot);
    if (src_pos_ == std::string::npos || tgt_pos_ == std::string::npos) {
      throw Error(Errc::kTemplateInvalid, "template needs {src} and {tgt}");
    }
    if (text_.find(kSrcSlot, src_pos_ + 1) != std::string::npos ||
        text_.find(kTgtSlot, tgt_pos_ + 1) != std::string::npos) {
      throw Error(Errc::kTemplateInvalid,
                  "{src} and {tgt} must each appear exactly once");
    }
    if (src_pos_ > tgt_pos_) {
      throw Error(Errc::kTemplateInvalid, "{src} must precede {tgt}");
    }
  }

  static PromptTemplate default_ja_en() {
    return PromptTemplate(
        "Translate Japanese to English.\nJapanese: {src}\nEnglish: {tgt}",
        "ja-en");
  }

  const std::string& text() const { return text_; }
  const std::string& direction_label() const { return direction_label_; }

  /// Everything before the target slot, with the source substituted.
  std::string prompt(std::string_view source) const {
    std::string out = text_.substr(0, src_pos_);
    out += source;
    out += text_.substr(src_pos_ + kSrcSlot.size(),
                        tgt_pos_ - src_pos_ - kSrcSlot.size());
    return out;
  }

  /// The target followed by any template text after the target slot.
  std::string completion(std::string_view target) const {
    std::string out(target);
    out += text_.substr(tgt_pos_ + kTgtSlot.size());
    return out;
  }

  std::string render(std::string_view source, std::string_view target) const {
    return prompt(source) + completion(target);
  }

 private:
  std::string text_;
  std::string direction_label_;
  std::size_t src_pos_ = 0;
  std::size_t tgt_pos_ = 0;
};

struct TrainingRecord {
  std::string prompt;
  std::string completion;
  std::string pair_id;
  Provenance provenance;

  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

inline std::vector<TrainingRecord> render_training_records(
    const ParallelCorpus& corpus, const PromptTemplate& tmpl) {
  std::vector<TrainingRecord> records;
  records.reserve(corpus.size());
  for (const SentencePair& pair : corpus.pairs()) {
    records.push_back({tmpl.prompt(pair.source_text),
                       tmpl.completion(pair.target_text), pair.id,
                       pair.provenance});
  }
  return records;
}

inline std::string serialize_training_records(
    std::span<const TrainingRecord> records) {
  if (records.empty()) throw Error(Errc::kEmptyInput, "no training records");
  std::string out;
  for (const TrainingRecord& r : records) {
    nlohmann::ordered_json j;
    j["prompt"] = r.prompt;
    j["completion"] = r.completion;
    j["id"] = r.pair_id;
    j["provenance"] = provenance_to_json(r.provenance);
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline void export_training_file(std::span<const TrainingRecord> records,
                                 const std::filesystem::path& path) {
  io::write_file(path, serialize_training_records(records));
}

inline std::vector<TrainingRecord> parse_training_file(std::string_view data) {
  std::vector<TrainingRecord> records;
  const std::vector<std::string_view> lines = io::split_lines(data);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(lines[i]);
      records.push_back({j.at("prompt").get<std::string>(),
                         j.at("completion").get<std::string>(),
                         j.at("id").get<std::string>(),
                         provenance_from_json(j.at("provenance"))});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kMalformedRecord, e.what(), i + 1);
    } catch (const Error& e) {
      throw Error(Errc::kMalformedRecord, e.what(), i + 1);
    }
  }
  return records;
}

inline std::vector<TrainingRecord> load_training_file(
    const std::filesystem::path& path) {
  return parse_training_file(io::read_file(path));
}

}  // namespace btmt

#endif  // BTMT_ASSEMBLE_HPP_
