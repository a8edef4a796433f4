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

#include "btmt/document.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "btmt/backtranslate.hpp"

namespace btmt {
namespace {

using Texts = std::vector<std::string>;

Document doc_of(std::size_t n, const std::string& id = "d") {
  Texts texts;
  for (std::size_t i = 0; i < n; ++i) texts.push_back("P" + std::to_string(i));
  return Document(id, texts);
}

TEST(SplitParagraphs, Examples) {
  EXPECT_EQ(split_paragraphs("A\n\nB", "d").texts(), (Texts{"A", "B"}));
  EXPECT_EQ(split_paragraphs("A\nB\n\n\nC\n", "d").texts(),
            (Texts{"A\nB", "C"}));
  EXPECT_EQ(split_paragraphs("  \nA\n \t \nB\n\n", "d").texts(),
            (Texts{"A", "B"}));
  try {
    split_paragraphs("\n\n", "doc-7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptyDocument);
  }
}

TEST(SplitParagraphs, IndicesAreContiguous) {
  const Document d = split_paragraphs("a\n\nb\n\nc", "d");
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(d.paragraphs()[i].index, i);
  }
}

TEST(Document, RejectsInvalidParagraphs) {
  EXPECT_THROW(Document("d", {""}), Error);
  EXPECT_THROW(Document("d", {"a\n"}), Error);
  EXPECT_THROW(Document("d", {"a\n\nb"}), Error);
  EXPECT_THROW(Document("d", {"a\n  \nb"}), Error);
}

TEST(CheckParity, Examples) {
  const ParityVerdict same = check_parity(doc_of(3, "x"), doc_of(3));
  EXPECT_TRUE(same.pass);
  const ParityVerdict diff = check_parity(doc_of(3, "x"), doc_of(2));
  EXPECT_FALSE(diff.pass);
  EXPECT_EQ(diff.source_count, 3u);
  EXPECT_EQ(diff.translated_count, 2u);
  EXPECT_EQ(diff.doc_id, "x");
  const Document d = doc_of(4);
  EXPECT_TRUE(check_parity(d, d).pass);
}

TEST(MergeDocument, Examples) {
  EXPECT_EQ(merge_document(Document("d", {"A", "B"})), "A\n\nB");
  EXPECT_EQ(merge_document(Document("d", {"X"})), "X");
  const Texts five = {"一", "two\nlines", "三", "four", "五"};
  EXPECT_EQ(split_paragraphs(merge_document(Document("d", five)), "d").texts(),
            five);
}

Texts random_paragraphs(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"猫", "cat", "東京", "a b",
                                                 "x", "。", "  pad", "end "};
  Texts out;
  const std::size_t n = 1 + rng() % 8;
  for (std::size_t i = 0; i < n; ++i) {
    std::string p;
    const std::size_t lines = 1 + rng() % 3;
    for (std::size_t l = 0; l < lines; ++l) {
      if (l > 0) p += '\n';
      std::string line;
      do {
        line += words[rng() % words.size()];
      } while (rng() % 2);
      // Trimmed lines keep the round trip exact.
      p += unicode::trim(line);
    }
    out.push_back(p);
  }
  return out;
}

TEST(DocumentProperties, SplitMergeRoundTrip) {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const Texts texts = random_paragraphs(rng);
    const Document d("r" + std::to_string(trial), texts);
    const Document back = split_paragraphs(merge_document(d), d.doc_id());
    EXPECT_EQ(back.texts(), texts);
    EXPECT_EQ(back.size(), d.size());
  }
}

TEST(DocumentProperties, ParityIsSymmetric) {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 500; ++trial) {
    const Document a("a", random_paragraphs(rng));
    const Document b("b", random_paragraphs(rng));
    EXPECT_EQ(check_parity(a, b).pass, check_parity(b, a).pass);
    EXPECT_EQ(check_parity(a, b).pass, a.size() == b.size());
  }
}

TEST(TranslateDocument, MergesAndChecksParity) {
  const Document d("doc", {"猫がいる。", "犬もいる。"});
  const BatchTranslator mock = [](std::span<const std::string> texts) {
    std::vector<std::string> out;
    for (const auto& t : texts) out.push_back("EN(" + t + ")");
    return out;
  };
  const DocumentTranslation ok = translate_document(d, mock);
  EXPECT_TRUE(ok.parity.pass);
  EXPECT_EQ(ok.merged, "EN(猫がいる。)\n\nEN(犬もいる。)");

  // A translation containing a paragraph break changes the count.
  const BatchTranslator splitter = [](std::span<const std::string> texts) {
    std::vector<std::string> out;
    for (const auto& t : texts) out.push_back(t + "\n\nextra");
    return out;
  };
  const DocumentTranslation bad = translate_document(d, splitter);
  EXPECT_FALSE(bad.parity.pass);
  EXPECT_EQ(bad.parity.source_count, 2u);
  EXPECT_EQ(bad.parity.translated_count, 4u);
}

}  // namespace
}  // namespace btmt
