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

// Blank-line document structure for paragraph-level translation.
// A blank line is a line that is empty after trimming whitespace.

#ifndef BTMT_DOCUMENT_HPP_
#define BTMT_DOCUMENT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btmt/error.hpp"
#include "btmt/io.hpp"
#include "btmt/unicode.hpp"

namespace btmt {

struct Paragraph {
  std::string text;
  std::size_t index = 0;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

class Document {
 public:
  /// Every paragraph must be non-empty and free of blank lines, including
  /// leading or trailing ones.
  Document(std::string doc_id, std::vector<std::string> paragraph_texts)
      : doc_id_(std::move(doc_id)) {
    paragraphs_.reserve(paragraph_texts.size());
    for (std::size_t i = 0; i < paragraph_texts.size(); ++i) {
      std::string& text = paragraph_texts[i];
      if (text.empty() || text.back() == '\n') {
        throw Error(Errc::kInvalidArgument,
                    "paragraph " + std::to_string(i) + " is empty or ends "
                    "with a newline");
      }
      for (std::string_view line : io::split_lines(text)) {
        if (unicode::is_blank(line)) {
          throw Error(Errc::kInvalidArgument,
                      "paragraph " + std::to_string(i) +
                          " contains a blank line");
        }
      }
      paragraphs_.push_back({std::move(text), i});
    }
  }

  const std::string& doc_id() const { return doc_id_; }
  const std::vector<Paragraph>& paragraphs() const { return paragraphs_; }
  std::size_t size() const { return paragraphs_.size(); }

  std::vector<std::string> texts() const {
    std::vector<std::string> out;
    out.reserve(paragraphs_.size());
    for (const Paragraph& p : paragraphs_) out.push_back(p.text);
    return out;
  }

 private:
  std::string doc_id_;
  std::vector<Paragraph> paragraphs_;
};

inline Document split_paragraphs(std::string_view raw, std::string doc_id) {
  std::vector<std::string> texts;
  std::string current;
  bool open = false;
  for (std::string_view line : io::split_lines(raw)) {
    if (unicode::is_blank(line)) {
      if (open) texts.push_back(std::move(current));
      current.clear();
      open = false;
      continue;
    }
    if (open) current += '\n';
    current += line;
    open = true;
  }
  if (open) texts.push_back(std::move(current));
  if (texts.empty()) {
    throw Error(Errc::kEmptyDocument, "document '" + doc_id + "' has no text");
  }
  return Document(std::move(doc_id), std::move(texts));
}

struct ParityVerdict {
  bool pass = true;
  std::size_t source_count = 0;
  std::size_t translated_count = 0;
  std::string doc_id;
};

/// Paragraph-count parity. A mismatch is a verdict, not an error.
inline ParityVerdict check_parity(const Document& source,
                                  const Document& translated) {
  return {source.size() == translated.size(), source.size(), translated.size(),
          source.doc_id()};
}

inline std::string merge_document(const Document& doc) {
  std::string out;
  for (const Paragraph& p : doc.paragraphs()) {
    if (!out.empty()) out += "\n\n";
    out += p.text;
  }
  return out;
}

}  // namespace btmt

#endif  // BTMT_DOCUMENT_HPP_
