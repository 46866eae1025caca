#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexalign {

// Minimal UTF-8 / Unicode support for the romanizer and the candidate
// heuristic. Backed by tables generated from the Unicode character database
// (see tools/gen_unicode_data.py); Hangul syllables are decomposed
// arithmetically.

// Decodes UTF-8 into codepoints. Invalid byte sequences decode to U+FFFD,
// one replacement per offending byte.
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

// Simple per-codepoint lowercase mapping (1:1 only, no locale rules).
char32_t to_lower(char32_t cp);
std::u32string to_lower(std::u32string_view cps);

// Fully expanded canonical decomposition of a single codepoint, appended to
// `out`. Codepoints without a decomposition are appended as-is. No
// cross-character reordering is performed.
void canonical_decompose(char32_t cp, std::u32string& out);

bool is_combining_mark(char32_t cp);
bool is_alphabetic(char32_t cp);

// Number of codepoints in a UTF-8 string (invalid bytes count as one each).
std::size_t codepoint_length(std::string_view s);

namespace detail {

struct LowerEntry {
  char32_t cp;
  char32_t lower;
};

struct DecompEntry {
  char32_t cp;
  unsigned offset;
  unsigned length;
};

struct CpRange {
  char32_t lo;
  char32_t hi;
};

extern const LowerEntry kLowerMap[];
extern const std::size_t kLowerMapSize;
extern const char32_t kDecompPool[];
extern const DecompEntry kDecompMap[];
extern const std::size_t kDecompMapSize;
extern const CpRange kMarkRanges[];
extern const std::size_t kMarkRangesSize;
extern const CpRange kAlphaRanges[];
extern const std::size_t kAlphaRangesSize;

}  // namespace detail

}  // namespace lexalign
