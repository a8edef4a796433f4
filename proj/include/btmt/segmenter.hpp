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

// Word tokenization and n-gram extraction.
//
// English rule set (pinned, BLEU scores depend on it):
//   1. NFC-normalize.
//   2. Split on Unicode whitespace.
//   3. For each chunk, repeatedly detach a leading or trailing character of
//      general category P* or S* as its own token. Only edge characters are
//      ever detached, so interior hyphens and apostrophes stay put.
//
// Japanese fallback: split at every change of script class (Hiragana,
// Katakana, Han, Latin, Digit, Other) and emit each Han character alone.

#ifndef BTMT_SEGMENTER_HPP_
#define BTMT_SEGMENTER_HPP_

#include <fcntl.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "btmt/corpus.hpp"
#include "btmt/error.hpp"
#include "btmt/unicode.hpp"

namespace btmt {

struct TokenSequence {
  std::vector<std::string> tokens;
  Language language = Language::kEnglish;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Multiset of n-grams. Character n-gram keys are the UTF-8 encoding of
/// `order` scalars; word n-gram keys are the tokens joined by single spaces
/// (tokens never contain whitespace, so the join is unambiguous).
struct NGramProfile {
  std::size_t order = 1;
  std::unordered_map<std::string, std::size_t> counts;

  std::size_t total() const {
    std::size_t sum = 0;
    for (const auto& [gram, count] : counts) sum += count;
    return sum;
  }
  bool empty() const { return counts.empty(); }
};

inline TokenSequence tokenize_english(std::string_view text) {
  TokenSequence out;
  out.language = Language::kEnglish;
  const std::u32string scalars = unicode::decode(unicode::nfc(text));

  auto detachable = [](char32_t c) {
    return unicode::is_punctuation(c) || unicode::is_symbol(c);
  };

  std::size_t i = 0;
  while (i < scalars.size()) {
    while (i < scalars.size() && unicode::is_whitespace(scalars[i])) ++i;
    std::size_t end = i;
    while (end < scalars.size() && !unicode::is_whitespace(scalars[end])) ++end;
    if (end == i) break;

    std::size_t begin = i;
    std::size_t stop = end;
    std::vector<std::string> trailing;
    while (begin < stop && detachable(scalars[begin])) {
      out.tokens.push_back(unicode::encode(std::u32string(1, scalars[begin])));
      ++begin;
    }
    while (stop > begin && detachable(scalars[stop - 1])) {
      trailing.push_back(unicode::encode(std::u32string(1, scalars[stop - 1])));
      --stop;
    }
    if (stop > begin) {
      out.tokens.push_back(unicode::encode(
          std::u32string_view(scalars).substr(begin, stop - begin)));
    }
    out.tokens.insert(out.tokens.end(), trailing.rbegin(), trailing.rend());
    i = end;
  }
  return out;
}

/// Plain whitespace split, for already tokenized text.
inline TokenSequence split_whitespace(std::string_view text) {
  TokenSequence out;
  const std::u32string scalars = unicode::decode(text);
  std::size_t i = 0;
  while (i < scalars.size()) {
    while (i < scalars.size() && unicode::is_whitespace(scalars[i])) ++i;
    std::size_t end = i;
    while (end < scalars.size() && !unicode::is_whitespace(scalars[end])) ++end;
    if (end > i) {
      out.tokens.push_back(
          unicode::encode(std::u32string_view(scalars).substr(i, end - i)));
    }
    i = end;
  }
  return out;
}

namespace detail {

inline bool is_case_particle(char32_t c) {
  return std::u32string_view(U"がはをにでとのへも").find(c) !=
         std::u32string_view::npos;
}

}  // namespace detail

/// Script-boundary segmentation. Each Han character is its own token, and a
/// single-character case particle opening a Hiragana run right after Han or
/// Katakana is split off ("猫がいる" -> 猫 / が / いる).
inline std::vector<std::string> tokenize_japanese_fallback(
    std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string scalars = unicode::decode(unicode::nfc(text));
  std::u32string current;
  std::optional<unicode::Script> current_script;
  std::optional<unicode::Script> previous_script;

  auto flush = [&] {
    if (!current.empty()) tokens.push_back(unicode::encode(current));
    current.clear();
    current_script.reset();
  };

  for (char32_t c : scalars) {
    if (unicode::is_whitespace(c)) {
      flush();
      previous_script.reset();
      continue;
    }
    const unicode::Script script = unicode::script_of(c);
    if (script == unicode::Script::kHan) {
      flush();
      tokens.push_back(unicode::encode(std::u32string(1, c)));
      previous_script = script;
      continue;
    }
    if (current_script && *current_script != script) flush();
    const bool opens_run = current.empty();
    current.push_back(c);
    current_script = script;
    if (opens_run && script == unicode::Script::kHiragana &&
        (previous_script == unicode::Script::kHan ||
         previous_script == unicode::Script::kKatakana) &&
        detail::is_case_particle(c)) {
      flush();
    }
    previous_script = script;
  }
  flush();
  return tokens;
}

// ---------------------------------------------------------------------------
// External morphological analyzer

/// A child process speaking the analyzer line protocol: one sentence per
/// line on stdin, tab-separated surface forms per line on stdout. Requests
/// on one connection are serialized; open several connections for
/// parallelism.
class AnalyzerConnection {
 public:
  /// `command` is run through /bin/sh -c. Throws kAnalyzerUnavailable when
  /// the process cannot be started.
  explicit AnalyzerConnection(const std::string& command) {
    // A dead analyzer must surface as an error, not kill the process.
    ::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0) {
      throw Error(Errc::kAnalyzerUnavailable, "pipe() failed");
    }
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw Error(Errc::kAnalyzerUnavailable, "pipe() failed");
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
      for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
        ::close(fd);
      }
      throw Error(Errc::kAnalyzerUnavailable, "fork() failed");
    }
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
        ::close(fd);
      }
      ::execl("/bin/sh", "sh", "-c", command.c_str(),
              static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    pid_ = pid;
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
  }

  AnalyzerConnection(const AnalyzerConnection&) = delete;
  AnalyzerConnection& operator=(const AnalyzerConnection&) = delete;

  ~AnalyzerConnection() {
    if (write_fd_ >= 0) ::close(write_fd_);
    if (read_fd_ >= 0) ::close(read_fd_);
    if (pid_ > 0) {
      int status = 0;
      if (::waitpid(pid_, &status, WNOHANG) == 0) {
        ::kill(pid_, SIGTERM);
        ::waitpid(pid_, &status, 0);
      }
    }
  }

  std::vector<std::string> analyze(std::string_view sentence) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::string request(sentence);
    for (char& c : request) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    request.push_back('\n');
    write_all(request);
    const std::string line = read_line();

    std::vector<std::string> forms;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) tab = line.size();
      if (tab > start) forms.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    return forms;
  }

 private:
  void write_all(std::string_view data) {
    while (!data.empty()) {
      const ssize_t n = ::write(write_fd_, data.data(), data.size());
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw Error(Errc::kAnalyzerUnavailable, "analyzer closed its input");
      }
      data.remove_prefix(static_cast<std::size_t>(n));
    }
  }

  std::string read_line() {
    while (true) {
      const std::size_t newline = buffer_.find('\n');
      if (newline != std::string::npos) {
        std::string line = buffer_.substr(0, newline);
        buffer_.erase(0, newline + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char chunk[4096];
      const ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw Error(Errc::kAnalyzerUnavailable, "analyzer closed its output");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  pid_t pid_ = -1;
  int write_fd_ = -1;
  int read_fd_ = -1;
  std::string buffer_;
  std::mutex mutex_;
};

enum class SegmenterKind { kScriptFallback, kExternalAnalyzer };

/// Value-semantic backend description. For kExternalAnalyzer the endpoint
/// is a shell command; the connection is opened lazily and shared between
/// copies.
class SegmenterBackend {
 public:
  static SegmenterBackend script_fallback() { return SegmenterBackend(); }

  static SegmenterBackend external(std::string endpoint) {
    if (endpoint.empty()) {
      throw Error(Errc::kInvalidArgument,
                  "external analyzer requires an endpoint");
    }
    SegmenterBackend backend;
    backend.kind_ = SegmenterKind::kExternalAnalyzer;
    backend.endpoint_ = std::move(endpoint);
    backend.state_ = std::make_shared<Lazy>();
    return backend;
  }

  SegmenterKind kind() const { return kind_; }
  const std::optional<std::string>& analyzer_endpoint() const {
    return endpoint_;
  }

  std::vector<std::string> analyze(std::string_view text) const {
    std::call_once(state_->once, [&] {
      try {
        state_->connection = std::make_unique<AnalyzerConnection>(*endpoint_);
      } catch (const Error&) {
        state_->connection.reset();
      }
    });
    if (!state_->connection) {
      throw Error(Errc::kAnalyzerUnavailable, "cannot start " + *endpoint_);
    }
    return state_->connection->analyze(text);
  }

 private:
  struct Lazy {
    std::once_flag once;
    std::unique_ptr<AnalyzerConnection> connection;
  };

  SegmenterBackend() = default;

  SegmenterKind kind_ = SegmenterKind::kScriptFallback;
  std::optional<std::string> endpoint_;
  std::shared_ptr<Lazy> state_;
};

inline TokenSequence tokenize_japanese(std::string_view text,
                                       const SegmenterBackend& backend) {
  TokenSequence out;
  out.language = Language::kJapanese;
  if (backend.kind() == SegmenterKind::kScriptFallback) {
    out.tokens = tokenize_japanese_fallback(text);
  } else if (!unicode::is_blank(text)) {
    out.tokens = backend.analyze(text);
  }
  return out;
}

// ---------------------------------------------------------------------------
// N-grams

inline NGramProfile char_ngrams(std::string_view text, std::size_t n,
                                bool strip_whitespace) {
  if (n == 0) throw Error(Errc::kInvalidOrder, "n-gram order must be >= 1");
  NGramProfile profile;
  profile.order = n;
  std::u32string scalars = unicode::decode(text);
  if (strip_whitespace) scalars = unicode::strip_whitespace(scalars);
  if (scalars.size() < n) return profile;
  const std::u32string_view view(scalars);
  for (std::size_t i = 0; i + n <= view.size(); ++i) {
    ++profile.counts[unicode::encode(view.substr(i, n))];
  }
  return profile;
}

inline NGramProfile word_ngrams(const std::vector<std::string>& tokens,
                                std::size_t n) {
  if (n == 0) throw Error(Errc::kInvalidOrder, "n-gram order must be >= 1");
  NGramProfile profile;
  profile.order = n;
  if (tokens.size() < n) return profile;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    ++profile.counts[std::move(key)];
  }
  return profile;
}

}  // namespace btmt

#endif  // BTMT_SEGMENTER_HPP_
