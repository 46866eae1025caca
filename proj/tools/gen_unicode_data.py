#!/usr/bin/env python3
"""Regenerates core/src/unicode_data.cpp from Python's unicodedata module.

Emits four tables:
  - simple 1:1 lowercase mappings
  - fully expanded canonical (NFD) decompositions, Hangul excluded
    (Hangul syllables are decomposed arithmetically at runtime)
  - combining mark ranges (categories Mn, Mc, Me)
  - alphabetic ranges (categories Lu, Ll, Lt, Lm, Lo)

Run from the repository root:  python3 tools/gen_unicode_data.py
"""

import sys
import unicodedata

MAX_CP = 0x10FFFF
HANGUL_S_BASE, HANGUL_S_COUNT = 0xAC00, 11172


def is_hangul_syllable(cp):
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def ranges_for(categories):
    out = []
    start = None
    for cp in range(MAX_CP + 1):
        ch = chr(cp)
        cat = unicodedata.category(ch)
        if cat in categories:
            if start is None:
                start = cp
        else:
            if start is not None:
                out.append((start, cp - 1))
                start = None
    if start is not None:
        out.append((start, MAX_CP))
    return out


def main():
    lower = []
    for cp in range(MAX_CP + 1):
        lo = chr(cp).lower()
        if len(lo) == 1 and ord(lo) != cp:
            lower.append((cp, ord(lo)))

    pool = []
    decomp = []
    for cp in range(MAX_CP + 1):
        if is_hangul_syllable(cp):
            continue
        nfd = unicodedata.normalize("NFD", chr(cp))
        if len(nfd) == 1 and ord(nfd) == cp:
            continue
        seq = [ord(c) for c in nfd]
        decomp.append((cp, len(pool), len(seq)))
        pool.extend(seq)

    marks = ranges_for({"Mn", "Mc", "Me"})
    alpha = ranges_for({"Lu", "Ll", "Lt", "Lm", "Lo"})

    w = sys.stdout.write
    w("// Generated by tools/gen_unicode_data.py (Unicode %s). Do not edit.\n"
      % unicodedata.unidata_version)
    w("#include \"lexalign/unicode.hpp\"\n\n")
    w("namespace lexalign::detail {\n\n")

    w("const LowerEntry kLowerMap[] = {\n")
    for cp, lo in lower:
        w("  {0x%X, 0x%X},\n" % (cp, lo))
    w("};\nconst std::size_t kLowerMapSize = %d;\n\n" % len(lower))

    w("const char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 12):
        w("  " + ", ".join("0x%X" % c for c in pool[i:i + 12]) + ",\n")
    w("};\n\n")

    w("const DecompEntry kDecompMap[] = {\n")
    for cp, off, n in decomp:
        w("  {0x%X, %d, %d},\n" % (cp, off, n))
    w("};\nconst std::size_t kDecompMapSize = %d;\n\n" % len(decomp))

    w("const CpRange kMarkRanges[] = {\n")
    for a, b in marks:
        w("  {0x%X, 0x%X},\n" % (a, b))
    w("};\nconst std::size_t kMarkRangesSize = %d;\n\n" % len(marks))

    w("const CpRange kAlphaRanges[] = {\n")
    for a, b in alpha:
        w("  {0x%X, 0x%X},\n" % (a, b))
    w("};\nconst std::size_t kAlphaRangesSize = %d;\n\n" % len(alpha))

    w("}  // namespace lexalign::detail\n")


if __name__ == "__main__":
    main()
