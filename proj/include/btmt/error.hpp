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

#ifndef BTMT_ERROR_HPP_
#define BTMT_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace btmt {

/// Machine-readable error codes shared by every module.
enum class Errc {
  kMalformedRecord,
  kEncodingError,
  kEmptyCorpus,
  kIoError,
  kUnrepresentableInTsv,
  kCorpusTooSmall,
  kDuplicateId,
  kInvalidOrder,
  kEmptyDocument,
  kAnalyzerUnavailable,
  kLengthMismatch,
  kEmptyInput,
  kScorerUnreachable,
  kScorerProtocolError,
  kMissingMetric,
  kEmptySource,
  kBackendUnreachable,
  kProtocolError,
  kProvenanceViolation,
  kEmptySeed,
  kTemplateInvalid,
  kInvalidConfig,
  kInvalidArgument,
};

inline constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kMalformedRecord: return "MalformedRecord";
    case Errc::kEncodingError: return "EncodingError";
    case Errc::kEmptyCorpus: return "EmptyCorpus";
    case Errc::kIoError: return "IoError";
    case Errc::kUnrepresentableInTsv: return "UnrepresentableInTsv";
    case Errc::kCorpusTooSmall: return "CorpusTooSmall";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kInvalidOrder: return "InvalidOrder";
    case Errc::kEmptyDocument: return "EmptyDocument";
    case Errc::kAnalyzerUnavailable: return "AnalyzerUnavailable";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kScorerUnreachable: return "ScorerUnreachable";
    case Errc::kScorerProtocolError: return "ScorerProtocolError";
    case Errc::kMissingMetric: return "MissingMetric";
    case Errc::kEmptySource: return "EmptySource";
    case Errc::kBackendUnreachable: return "BackendUnreachable";
    case Errc::kProtocolError: return "ProtocolError";
    case Errc::kProvenanceViolation: return "ProvenanceViolation";
    case Errc::kEmptySeed: return "EmptySeed";
    case Errc::kTemplateInvalid: return "TemplateInvalid";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// The single exception type thrown by the library. `code()` identifies
/// the failure; `line()` is set for record-level input errors.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(format(code, message, line)),
        code_(code),
        message_(message),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  /// The detail text without the code and line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(Errc code, const std::string& message,
                            std::optional<std::size_t> line) {
    std::string out(to_string(code));
    if (line) out += " at line " + std::to_string(*line);
    if (!message.empty()) out += ": " + message;
    return out;
  }

  Errc code_;
  std::string message_;
  std::optional<std::size_t> line_;
};

}  // namespace btmt

#endif  // BTMT_ERROR_HPP_
