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

// Run manifest: per-stage input/output content digests plus the digest of
// the run configuration, stored as <out-dir>/manifest.json.

#ifndef BTMT_MANIFEST_HPP_
#define BTMT_MANIFEST_HPP_

#include <openssl/evp.h>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "btmt/error.hpp"
#include "btmt/io.hpp"
#include "json.hpp"

namespace btmt {

inline constexpr std::string_view kManifestName = "manifest.json";

/// Lowercase hex SHA-256, prefixed "sha256:".
inline std::string sha256_digest(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &md_len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(Errc::kIoError, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < md_len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

inline std::string file_digest(const std::filesystem::path& path) {
  return sha256_digest(io::read_file(path));
}

struct StageRecord {
  std::string stage;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  std::string config_digest;
};

class Manifest {
 public:
  explicit Manifest(std::filesystem::path out_dir)
      : out_dir_(std::move(out_dir)) {
    const auto path = out_dir_ / kManifestName;
    if (std::filesystem::exists(path)) {
      try {
        json_ = nlohmann::ordered_json::parse(io::read_file(path));
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::kMalformedRecord,
                    path.string() + ": " + e.what());
      }
    }
    if (!json_.is_object()) json_ = nlohmann::ordered_json::object();
    if (!json_.contains("stages")) {
      json_["stages"] = nlohmann::ordered_json::object();
    }
  }

  void record(const StageRecord& rec) {
    nlohmann::ordered_json entry;
    entry["inputs"] = describe(rec.inputs);
    entry["outputs"] = describe(rec.outputs);
    entry["config_digest"] = rec.config_digest;
    json_["config_digest"] = rec.config_digest;
    json_["stages"][rec.stage] = std::move(entry);
  }

  void save() const {
    io::write_file(out_dir_ / kManifestName, json_.dump(2) + "\n");
  }

  const nlohmann::ordered_json& json() const { return json_; }

 private:
  nlohmann::ordered_json describe(
      const std::vector<std::filesystem::path>& paths) const {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& p : paths) {
      std::filesystem::path shown = p;
      const auto rel = p.lexically_relative(out_dir_);
      if (!rel.empty() && *rel.begin() != "..") shown = rel;
      list.push_back({{"path", shown.generic_string()},
                      {"digest", file_digest(p)}});
    }
    return list;
  }

  std::filesystem::path out_dir_;
  nlohmann::ordered_json json_;
};

}  // namespace btmt

#endif  // BTMT_MANIFEST_HPP_
