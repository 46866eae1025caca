#include "lexalign/unicode.hpp"

#include <algorithm>

namespace lexalign {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable decomposition constants (Unicode ch. 3.12).
constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulSCount = 11172;

bool range_contains(const detail::CpRange* ranges, std::size_t n, char32_t cp) {
  const detail::CpRange* end = ranges + n;
  auto it = std::upper_bound(ranges, end, cp, [](char32_t c, const detail::CpRange& r) {
    return c < r.lo;
  });
  return it != ranges && cp <= (it - 1)->hi;
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto n = s.size();
  while (i < n) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
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
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int j = 1; j < len; ++j) {
      unsigned char b = static_cast<unsigned char>(s[i + j]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms and surrogate/range violations.
    if (ok) {
      if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
          (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
          (cp >= 0xD800 && cp <= 0xDFFF)) {
        ok = false;
      }
    }
    if (!ok) {
      out.push_back(kReplacement);
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

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

char32_t to_lower(char32_t cp) {
  const detail::LowerEntry* end = detail::kLowerMap + detail::kLowerMapSize;
  auto it = std::lower_bound(detail::kLowerMap, end, cp,
                             [](const detail::LowerEntry& e, char32_t c) { return e.cp < c; });
  if (it != end && it->cp == cp) return it->lower;
  return cp;
}

std::u32string to_lower(std::u32string_view cps) {
  std::u32string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) out.push_back(to_lower(cp));
  return out;
}

void canonical_decompose(char32_t cp, std::u32string& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    char32_t s = cp - kHangulSBase;
    out.push_back(kHangulLBase + s / (kHangulVCount * kHangulTCount));
    out.push_back(kHangulVBase + (s % (kHangulVCount * kHangulTCount)) / kHangulTCount);
    char32_t t = s % kHangulTCount;
    if (t != 0) out.push_back(kHangulTBase + t);
    return;
  }
  const detail::DecompEntry* end = detail::kDecompMap + detail::kDecompMapSize;
  auto it = std::lower_bound(detail::kDecompMap, end, cp,
                             [](const detail::DecompEntry& e, char32_t c) { return e.cp < c; });
  if (it != end && it->cp == cp) {
    for (unsigned j = 0; j < it->length; ++j) out.push_back(detail::kDecompPool[it->offset + j]);
    return;
  }
  out.push_back(cp);
}

bool is_combining_mark(char32_t cp) {
  return range_contains(detail::kMarkRanges, detail::kMarkRangesSize, cp);
}

bool is_alphabetic(char32_t cp) {
  return range_contains(detail::kAlphaRanges, detail::kAlphaRangesSize, cp);
}

std::size_t codepoint_length(std::string_view s) {
  return decode_utf8(s).size();
}

}  // namespace lexalign
