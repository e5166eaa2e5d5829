#!/usr/bin/env python3
# Copyright 2026 the silvercat project
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates src/unicode_tables.inc from Python's unicodedata database.

Emits the tables needed for NFC normalization, full case folding and
character classification:

  - full canonical decompositions (Hangul excluded, handled algorithmically)
  - nonzero canonical combining classes
  - primary composite pairs (composition exclusions filtered out)
  - full case folding (only codepoints whose folding differs)
  - whitespace codepoints
  - punctuation/symbol ranges (general categories P* and S*)

Usage: python3 tools/gen_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def main():
    decomp = {}      # cp -> tuple of cps (full canonical decomposition)
    ccc = {}         # cp -> combining class (nonzero only)
    comp = {}        # (a, b) -> composed cp, primary composites only
    fold = {}        # cp -> folded string
    whitespace = []
    punct = []       # cps with general category P* or S*

    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ch = chr(cp)

        c = unicodedata.combining(ch)
        if c:
            ccc[cp] = c

        if not (HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT):
            nfd = unicodedata.normalize("NFD", ch)
            if nfd != ch:
                decomp[cp] = tuple(ord(x) for x in nfd)
            # Primary composites come from the one-level canonical
            # decomposition; the NFC round-trip weeds out exclusions.
            one = unicodedata.decomposition(ch)
            if one and not one.startswith("<"):
                parts = [int(x, 16) for x in one.split()]
                if len(parts) == 2:
                    pair = chr(parts[0]) + chr(parts[1])
                    if unicodedata.normalize("NFC", pair) == ch:
                        comp[(parts[0], parts[1])] = cp

        f = ch.casefold()
        if f != ch:
            fold[cp] = f

        if ch.isspace():
            whitespace.append(cp)

        if unicodedata.category(ch)[0] in "PS":
            punct.append(cp)

    # Collapse the punctuation list into ranges.
    punct_ranges = []
    for cp in punct:
        if punct_ranges and punct_ranges[-1][1] + 1 == cp:
            punct_ranges[-1][1] = cp
        else:
            punct_ranges.append([cp, cp])

    out = sys.stdout
    w = out.write
    w("// Generated by tools/gen_unicode_tables.py -- do not edit.\n")
    w("// Unicode data version: %s (python %s)\n\n"
      % (unicodedata.unidata_version, sys.version.split()[0]))

    def emit_array(ctype, name, values, fmt="0x%X", per_line=8):
        w("inline constexpr %s %s[%d] = {\n" % (ctype, name, len(values)))
        for i in range(0, len(values), per_line):
            chunk = ", ".join(fmt % v for v in values[i:i + per_line])
            w("    %s,\n" % chunk)
        w("};\n\n")

    keys = sorted(decomp)
    data = []
    offsets = []
    for k in keys:
        offsets.append(len(data))
        data.extend(decomp[k])
    offsets.append(len(data))
    emit_array("char32_t", "kDecompKeys", keys)
    emit_array("std::uint32_t", "kDecompOffsets", offsets, fmt="%d")
    emit_array("char32_t", "kDecompData", data)

    keys = sorted(ccc)
    emit_array("char32_t", "kCccKeys", keys)
    emit_array("std::uint8_t", "kCccValues", [ccc[k] for k in keys], fmt="%d")

    pairs = sorted(comp)
    emit_array("std::uint64_t", "kCompKeys",
               [(a << 21) | b for (a, b) in pairs], fmt="0x%XULL")
    emit_array("char32_t", "kCompValues", [comp[p] for p in pairs])

    keys = sorted(fold)
    data = []
    offsets = []
    for k in keys:
        offsets.append(len(data))
        data.extend(ord(x) for x in fold[k])
    offsets.append(len(data))
    emit_array("char32_t", "kFoldKeys", keys)
    emit_array("std::uint32_t", "kFoldOffsets", offsets, fmt="%d")
    emit_array("char32_t", "kFoldData", data)

    emit_array("char32_t", "kWhitespace", whitespace)

    emit_array("char32_t", "kPunctRangeLo", [r[0] for r in punct_ranges])
    emit_array("char32_t", "kPunctRangeHi", [r[1] for r in punct_ranges])


if __name__ == "__main__":
    main()
