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

// Run configuration. Trainer fields (learning rate, warmup, ...) are
// validated and carried through unchanged for the fine-tuning backend; the
// pipeline itself consumes decoding, filter, mix, split and template.

#ifndef BTMT_CONFIG_HPP_
#define BTMT_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include "btmt/assemble.hpp"
#include "btmt/backtranslate.hpp"
#include "btmt/corpus.hpp"
#include "btmt/error.hpp"
#include "btmt/filters.hpp"
#include "btmt/io.hpp"
#include "btmt/metrics.hpp"
#include "json.hpp"

namespace btmt {

struct EpochRange {
  uint32_t min = 5;
  uint32_t max = 8;
};

struct BtSettings {
  std::size_t batch_size = 16;
  std::size_t max_retries = 1;
  uint32_t round = 1;
  std::size_t max_in_flight = 1;
};

struct RunConfig {
  std::string model_name = "mistralai/Mistral-7B-v0.3";
  EpochRange epochs;
  uint32_t batch_size = 128;
  uint32_t per_device_batch = 4;
  double learning_rate = 2e-5;
  double max_learning_rate = 3e-5;
  uint32_t warmup_steps = 500;
  std::string optimizer = "AdamW";
  double weight_decay = 0.01;
  double dropout = 0.1;
  double grad_clip = 1.0;
  std::string precision = "float16";
  uint32_t number_of_updates = 10000;
  DecodeParams decode;
  Criterion selection_metric = Criterion::kComet;
  FilterConfig filter;
  MixPolicy mix;
  SplitSpec split;
  BtSettings backtranslation;
  PromptTemplate prompt_template = PromptTemplate::default_ja_en();

  void validate() const {
    if (model_name.empty()) throw Error(Errc::kInvalidConfig, "model is empty");
    if (epochs.min < 1 || epochs.min > epochs.max) {
      throw Error(Errc::kInvalidConfig, "training_epochs needs 1 <= min <= max");
    }
    if (batch_size < 1 || per_device_batch < 1) {
      throw Error(Errc::kInvalidConfig, "batch sizes must be positive");
    }
    if (!(learning_rate > 0.0) || !(max_learning_rate > 0.0)) {
      throw Error(Errc::kInvalidConfig, "learning rates must be positive");
    }
    if (learning_rate > max_learning_rate) {
      throw Error(Errc::kInvalidConfig,
                  "learning_rate must not exceed max_learning_rate");
    }
    if (weight_decay < 0.0 || dropout < 0.0 || dropout >= 1.0 ||
        !(grad_clip > 0.0)) {
      throw Error(Errc::kInvalidConfig,
                  "weight_decay >= 0, 0 <= dropout < 1, gradient_clipping > 0");
    }
    if (number_of_updates < 1) {
      throw Error(Errc::kInvalidConfig, "number_of_updates must be positive");
    }
    if (backtranslation.batch_size < 1 || backtranslation.round < 1 ||
        backtranslation.max_in_flight < 1) {
      throw Error(Errc::kInvalidConfig,
                  "backtranslation batch_size, round and max_in_flight >= 1");
    }
    decode.validate();
    filter.validate();
    mix.validate();
    try {
      split.validate();
    } catch (const Error& e) {
      throw Error(Errc::kInvalidConfig, e.what());
    }
  }
};

inline nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["model"] = c.model_name;
  j["training_epochs"] = {{"min", c.epochs.min}, {"max", c.epochs.max}};
  j["batch_size"] = c.batch_size;
  j["minibatch_size"] = c.per_device_batch;
  j["learning_rate"] = c.learning_rate;
  j["max_learning_rate"] = c.max_learning_rate;
  j["warmup_steps"] = c.warmup_steps;
  j["optimizer"] = c.optimizer;
  j["weight_decay"] = c.weight_decay;
  j["dropout"] = c.dropout;
  j["gradient_clipping"] = c.grad_clip;
  j["precision"] = c.precision;
  j["decoding"] = {{"beam_size", c.decode.beam_size},
                   {"max_new_tokens", c.decode.max_new_tokens},
                   {"length_penalty", c.decode.length_penalty},
                   {"sampling", c.decode.sampling}};
  j["number_of_updates"] = c.number_of_updates;
  j["selection_metric"] = std::string(to_string(c.selection_metric));

  nlohmann::ordered_json filters = nlohmann::ordered_json::array();
  for (FilterKind k : c.filter.enabled_filters) {
    filters.push_back(std::string(to_string(k)));
  }
  j["filter"] = {{"min_len_ratio", c.filter.min_len_ratio},
                 {"max_len_ratio", c.filter.max_len_ratio},
                 {"min_script_confidence", c.filter.min_script_confidence},
                 {"min_chars", c.filter.min_chars},
                 {"enabled_filters", filters}};
  j["mix"] = {{"max_synthetic_ratio", c.mix.max_synthetic_ratio},
              {"seed_upsample", c.mix.seed_upsample},
              {"shuffle_seed", c.mix.shuffle_seed}};
  j["split"] = {{"train_fraction", c.split.train_fraction},
                {"shuffle_seed", c.split.shuffle_seed}};
  j["backtranslation"] = {{"batch_size", c.backtranslation.batch_size},
                          {"max_retries", c.backtranslation.max_retries},
                          {"round", c.backtranslation.round},
                          {"max_in_flight", c.backtranslation.max_in_flight}};
  j["template"] = {{"text", c.prompt_template.text()},
                   {"direction_label", c.prompt_template.direction_label()}};
  return j;
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, std::string_view where,
                                std::initializer_list<std::string_view> known) {
  if (!j.is_object()) {
    throw Error(Errc::kInvalidConfig, std::string(where) + " must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (std::string_view k : known) ok = ok || key == k;
    if (!ok) {
      throw Error(Errc::kInvalidConfig,
                  "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (const auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace detail

/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig config_from_json(const nlohmann::json& j) {
  using detail::read_opt;
  RunConfig c;
  try {
    detail::reject_unknown_keys(
        j, "config",
        {"model", "training_epochs", "batch_size",
         "minibatch_size", "learning_rate", "max_learning_rate", "warmup_steps",
         "optimizer", "weight_decay", "dropout", "gradient_clipping",
         "precision", "decoding", "number_of_updates", "selection_metric",
         "filter", "mix", "split", "backtranslation", "template"});
    read_opt(j, "model", c.model_name);
    if (const auto e = j.find("training_epochs"); e != j.end()) {
      detail::reject_unknown_keys(*e, "training_epochs", {"min", "max"});
      read_opt(*e, "min", c.epochs.min);
      read_opt(*e, "max", c.epochs.max);
    }
    read_opt(j, "batch_size", c.batch_size);
    read_opt(j, "minibatch_size", c.per_device_batch);
    read_opt(j, "learning_rate", c.learning_rate);
    read_opt(j, "max_learning_rate", c.max_learning_rate);
    read_opt(j, "warmup_steps", c.warmup_steps);
    read_opt(j, "optimizer", c.optimizer);
    read_opt(j, "weight_decay", c.weight_decay);
    read_opt(j, "dropout", c.dropout);
    read_opt(j, "gradient_clipping", c.grad_clip);
    read_opt(j, "precision", c.precision);
    read_opt(j, "number_of_updates", c.number_of_updates);
    if (const auto d = j.find("decoding"); d != j.end()) {
      detail::reject_unknown_keys(
          *d, "decoding",
          {"beam_size", "max_new_tokens", "length_penalty", "sampling"});
      read_opt(*d, "beam_size", c.decode.beam_size);
      read_opt(*d, "max_new_tokens", c.decode.max_new_tokens);
      read_opt(*d, "length_penalty", c.decode.length_penalty);
      read_opt(*d, "sampling", c.decode.sampling);
    }
    if (const auto m = j.find("selection_metric"); m != j.end()) {
      c.selection_metric = parse_criterion(m->get<std::string>());
    }
    if (const auto f = j.find("filter"); f != j.end()) {
      detail::reject_unknown_keys(
          *f, "filter",
          {"min_len_ratio", "max_len_ratio", "min_script_confidence",
           "min_chars", "enabled_filters"});
      read_opt(*f, "min_len_ratio", c.filter.min_len_ratio);
      read_opt(*f, "max_len_ratio", c.filter.max_len_ratio);
      read_opt(*f, "min_script_confidence", c.filter.min_script_confidence);
      read_opt(*f, "min_chars", c.filter.min_chars);
      if (const auto e = f->find("enabled_filters"); e != f->end()) {
        c.filter.enabled_filters.clear();
        for (const auto& name : *e) {
          c.filter.enabled_filters.push_back(
              parse_filter_kind(name.get<std::string>()));
        }
      }
    }
    if (const auto m = j.find("mix"); m != j.end()) {
      detail::reject_unknown_keys(
          *m, "mix", {"max_synthetic_ratio", "seed_upsample", "shuffle_seed"});
      read_opt(*m, "max_synthetic_ratio", c.mix.max_synthetic_ratio);
      read_opt(*m, "seed_upsample", c.mix.seed_upsample);
      read_opt(*m, "shuffle_seed", c.mix.shuffle_seed);
    }
    if (const auto s = j.find("split"); s != j.end()) {
      detail::reject_unknown_keys(*s, "split", {"train_fraction", "shuffle_seed"});
      read_opt(*s, "train_fraction", c.split.train_fraction);
      read_opt(*s, "shuffle_seed", c.split.shuffle_seed);
    }
    if (const auto b = j.find("backtranslation"); b != j.end()) {
      detail::reject_unknown_keys(
          *b, "backtranslation",
          {"batch_size", "max_retries", "round", "max_in_flight"});
      read_opt(*b, "batch_size", c.backtranslation.batch_size);
      read_opt(*b, "max_retries", c.backtranslation.max_retries);
      read_opt(*b, "round", c.backtranslation.round);
      read_opt(*b, "max_in_flight", c.backtranslation.max_in_flight);
    }
    if (const auto t = j.find("template"); t != j.end()) {
      detail::reject_unknown_keys(*t, "template", {"text", "direction_label"});
      std::string text = c.prompt_template.text();
      std::string label = c.prompt_template.direction_label();
      read_opt(*t, "text", text);
      read_opt(*t, "direction_label", label);
      c.prompt_template = PromptTemplate(std::move(text), std::move(label));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidConfig, e.what());
  }
  c.validate();
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  const std::string data = io::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(data);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::kInvalidConfig, path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace btmt

#endif  // BTMT_CONFIG_HPP_
