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

// UTF-8 and Unicode property helpers. Character properties and NFC come
// from ICU; everything here operates on UTF-8 std::string values.

#ifndef BTMT_UNICODE_HPP_
#define BTMT_UNICODE_HPP_

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "btmt/error.hpp"

namespace btmt::unicode {

inline bool is_valid_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

/// Decodes UTF-8 into scalar values; throws kEncodingError on malformed input.
inline std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    const int32_t at = i;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw Error(Errc::kEncodingError,
                  "invalid UTF-8 sequence at byte " + std::to_string(at));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

inline void append(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

inline std::string encode(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size());
  for (char32_t c : scalars) append(out, c);
  return out;
}

inline bool is_whitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

/// General category P* (any punctuation).
inline bool is_punctuation(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_P_MASK) != 0;
}

/// General category S* (math, currency, modifier, other symbols).
inline bool is_symbol(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_S_MASK) != 0;
}

/// General category Nd.
inline bool is_decimal_digit(char32_t c) {
  return u_charType(static_cast<UChar32>(c)) == U_DECIMAL_DIGIT_NUMBER;
}

/// Canonical composition (NFC). Input must be valid UTF-8.
inline std::string nfc(std::string_view text) {
  if (!is_valid_utf8(text)) {
    throw Error(Errc::kEncodingError, "invalid UTF-8 passed to NFC");
  }
  bool ascii = true;
  for (unsigned char b : text) {
    if (b >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(text);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(Errc::kEncodingError, u_errorName(status));
  }
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  const icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(Errc::kEncodingError, u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

/// Removes leading and trailing Unicode whitespace.
inline std::string trim(std::string_view text) {
  const std::u32string scalars = decode(text);
  std::size_t begin = 0;
  std::size_t end = scalars.size();
  while (begin < end && is_whitespace(scalars[begin])) ++begin;
  while (end > begin && is_whitespace(scalars[end - 1])) --end;
  return encode(std::u32string_view(scalars).substr(begin, end - begin));
}

/// NFC followed by trim: the canonical form of every ingested text field.
inline std::string canonicalize(std::string_view text) {
  return trim(nfc(text));
}

inline std::u32string strip_whitespace(std::u32string_view scalars) {
  std::u32string out;
  out.reserve(scalars.size());
  for (char32_t c : scalars) {
    if (!is_whitespace(c)) out.push_back(c);
  }
  return out;
}

inline bool is_blank(std::string_view text) {
  for (char32_t c : decode(text)) {
    if (!is_whitespace(c)) return false;
  }
  return true;
}

/// Script classes shared by Japanese segmentation and language ID.
enum class Script { kHiragana, kKatakana, kHan, kLatin, kDigit, kOther };

inline constexpr std::string_view to_string(Script script) {
  switch (script) {
    case Script::kHiragana: return "Hiragana";
    case Script::kKatakana: return "Katakana";
    case Script::kHan: return "Han";
    case Script::kLatin: return "Latin";
    case Script::kDigit: return "Digit";
    case Script::kOther: return "Other";
  }
  return "Other";
}

/// Block-based classification. Whitespace and punctuation are not special
/// cased here; callers that exclude them must do so first.
inline Script script_of(char32_t c) {
  if (c >= 0x3040 && c <= 0x309F) return Script::kHiragana;
  if ((c >= 0x30A0 && c <= 0x30FF) || (c >= 0xFF66 && c <= 0xFF9D)) {
    return Script::kKatakana;
  }
  if ((c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF)) {
    return Script::kHan;
  }
  if (is_decimal_digit(c)) return Script::kDigit;
  UErrorCode status = U_ZERO_ERROR;
  const UScriptCode code = uscript_getScript(static_cast<UChar32>(c), &status);
  if (U_SUCCESS(status) && code == USCRIPT_LATIN &&
      u_isalpha(static_cast<UChar32>(c))) {
    return Script::kLatin;
  }
  return Script::kOther;
}

}  // namespace btmt::unicode

#endif  // BTMT_UNICODE_HPP_
