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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal self-contained Unicode support: UTF-8 codec, canonical
// normalization (NFC), full case folding, and the character classes the
// tokenizer needs. Tables are generated from the Unicode database by
// tools/gen_unicode_tables.py.
namespace silvercat::uni {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes UTF-8; invalid sequences become U+FFFD (one per bogus byte).
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(const std::u32string& cps);
void append_utf8(std::string& out, char32_t cp);

// Canonical composition (decompose, reorder, compose). Idempotent.
std::u32string nfc(const std::u32string& cps);

// Full case folding; may change the sequence length.
std::u32string case_fold(const std::u32string& cps);

bool is_whitespace(char32_t cp);
// General category P* or S*.
bool is_punct_or_symbol(char32_t cp);
bool is_ascii_alnum(char32_t cp);

}  // namespace silvercat::uni
