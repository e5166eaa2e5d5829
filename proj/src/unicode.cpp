// Copyright 2026 the silvercat project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "silvercat/unicode.hpp"

#include <algorithm>
#include <cstddef>

namespace silvercat::uni {

namespace tables {
#include "unicode_tables.inc"
}  // namespace tables

namespace {

// Hangul syllables decompose and compose algorithmically (UAX #15).
constexpr char32_t kSBase = 0xAC00;
constexpr char32_t kLBase = 0x1100;
constexpr char32_t kVBase = 0x1161;
constexpr char32_t kTBase = 0x11A7;
constexpr std::int32_t kLCount = 19;
constexpr std::int32_t kVCount = 21;
constexpr std::int32_t kTCount = 28;
constexpr std::int32_t kNCount = kVCount * kTCount;
constexpr std::int32_t kSCount = kLCount * kNCount;

template <std::size_t N>
std::ptrdiff_t find_key(const char32_t (&keys)[N], char32_t cp) {
  const char32_t* it = std::lower_bound(keys, keys + N, cp);
  if (it == keys + N || *it != cp) return -1;
  return it - keys;
}

std::uint8_t combining_class(char32_t cp) {
  std::ptrdiff_t i = find_key(tables::kCccKeys, cp);
  return i < 0 ? 0 : tables::kCccValues[i];
}

char32_t compose_pair(char32_t a, char32_t b) {
  // Hangul L+V and LV+T.
  if (a >= kLBase && a < kLBase + kLCount && b >= kVBase &&
      b < kVBase + kVCount) {
    return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
  }
  if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 &&
      b > kTBase && b < kTBase + kTCount) {
    return a + (b - kTBase);
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 21) | b;
  const auto* begin = tables::kCompKeys;
  const auto* end = begin + std::size(tables::kCompKeys);
  const auto* it = std::lower_bound(begin, end, key);
  if (it == end || *it != key) return 0;
  return tables::kCompValues[it - begin];
}

void decompose_into(std::u32string& out, char32_t cp) {
  if (cp >= kSBase && cp < kSBase + kSCount) {
    const std::int32_t s = cp - kSBase;
    out.push_back(kLBase + s / kNCount);
    out.push_back(kVBase + (s % kNCount) / kTCount);
    if (s % kTCount != 0) out.push_back(kTBase + s % kTCount);
    return;
  }
  std::ptrdiff_t i = find_key(tables::kDecompKeys, cp);
  if (i < 0) {
    out.push_back(cp);
    return;
  }
  for (std::uint32_t k = tables::kDecompOffsets[i];
       k < tables::kDecompOffsets[i + 1]; ++k) {
    out.push_back(tables::kDecompData[k]);
  }
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[k]);
  };
  while (i < s.size()) {
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(kReplacementChar);
      ++i;
      continue;
    }
    bool ok = i + len <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) ok = false;
    }
    if (ok) {
      for (int k = 1; k < len; ++k) cp = (cp << 6) | (byte(i + k) & 0x3F);
      // Reject overlongs, surrogates and out-of-range values.
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
          cp > 0x10FFFF) {
        ok = false;
      }
    }
    if (!ok) {
      out.push_back(kReplacementChar);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(const std::u32string& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

std::u32string nfc(const std::u32string& cps) {
  bool ascii = true;
  for (char32_t cp : cps) {
    if (cp >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return cps;

  std::u32string buf;
  buf.reserve(cps.size());
  for (char32_t cp : cps) decompose_into(buf, cp);

  // Canonical ordering: bubble nonzero-ccc marks into nondecreasing order.
  for (std::size_t i = 1; i < buf.size(); ++i) {
    const std::uint8_t cc = combining_class(buf[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0) {
      const std::uint8_t prev = combining_class(buf[j - 1]);
      if (prev == 0 || prev <= cc) break;
      std::swap(buf[j - 1], buf[j]);
      --j;
    }
  }

  // Composition pass per UAX #15: combine each character with the last
  // starter when no intervening mark blocks it.
  std::u32string out;
  out.reserve(buf.size());
  std::ptrdiff_t last_starter = -1;
  std::uint8_t last_cc = 0;
  for (char32_t cp : buf) {
    const std::uint8_t cc = combining_class(cp);
    if (last_starter >= 0 && (last_cc < cc || last_cc == 0)) {
      if (char32_t composed = compose_pair(out[last_starter], cp)) {
        out[last_starter] = composed;
        continue;
      }
    }
    if (cc == 0) {
      last_starter = static_cast<std::ptrdiff_t>(out.size());
      last_cc = 0;
    } else {
      last_cc = cc;
    }
    out.push_back(cp);
  }
  return out;
}

std::u32string case_fold(const std::u32string& cps) {
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(cp >= 'A' && cp <= 'Z' ? cp + 32 : cp);
      continue;
    }
    std::ptrdiff_t i = find_key(tables::kFoldKeys, cp);
    if (i < 0) {
      out.push_back(cp);
      continue;
    }
    for (std::uint32_t k = tables::kFoldOffsets[i];
         k < tables::kFoldOffsets[i + 1]; ++k) {
      out.push_back(tables::kFoldData[k]);
    }
  }
  return out;
}

bool is_whitespace(char32_t cp) {
  if (cp < 0x80) return cp == ' ' || (cp >= 0x09 && cp <= 0x0D);
  const auto* begin = tables::kWhitespace;
  const auto* end = begin + std::size(tables::kWhitespace);
  return std::binary_search(begin, end, cp);
}

bool is_punct_or_symbol(char32_t cp) {
  const auto* begin = tables::kPunctRangeLo;
  const auto* end = begin + std::size(tables::kPunctRangeLo);
  const auto* it = std::upper_bound(begin, end, cp);
  if (it == begin) return false;
  const std::ptrdiff_t i = it - begin - 1;
  return cp <= tables::kPunctRangeHi[i];
}

bool is_ascii_alnum(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
         (cp >= 'A' && cp <= 'Z');
}

}  // namespace silvercat::uni
