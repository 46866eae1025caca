#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexalign {

// Table-driven transliteration to lowercase Latin. Entry keys are sequences
// of 1..4 codepoints as written in the table file; replacements are drawn
// from [a-z0-9'] (possibly empty). Keys are case-folded and canonically
// decomposed at load so lookup happens in the same form romanize() produces.
class RomanizationTable {
 public:
  struct Entry {
    std::u32string key;  // normalized form
    std::string replacement;
  };

  // Longest-match candidates for a first codepoint, sorted by key length
  // descending.
  const std::vector<Entry>* candidates(char32_t first) const;

  void add(std::u32string raw_key, std::string replacement);

  std::size_t size() const { return size_; }
  const std::vector<std::string>& scripts() const { return scripts_; }
  std::vector<std::string>& scripts() { return scripts_; }

  // Merges another table into this one; duplicate keys are an error.
  void merge_from(const RomanizationTable& other);

 private:
  std::unordered_map<char32_t, std::vector<Entry>> by_first_;
  std::size_t size_ = 0;
  std::vector<std::string> scripts_;
};

// Loads one table file: "<key><TAB><replacement>" per line, '#' comments,
// the token "∅" meaning the empty replacement. A "# scripts:" comment line
// fills the coverage metadata.
RomanizationTable load_table(const std::string& path);

// Convenience: load and merge several table files.
RomanizationTable load_tables(const std::vector<std::string>& paths);

struct RomanizeResult {
  std::string text;
  std::size_t uncovered = 0;  // codepoints passed through with no entry
  std::size_t matched = 0;    // table entries applied
};

// Case-folds, decomposes canonically (Hangul to jamo), then greedy
// longest-match over the table. Combining marks without an entry are
// dropped; [a-z0-9] passes through; anything else passes through and bumps
// the uncovered counter. Total function: never throws on input content.
RomanizeResult romanize(std::string_view word, const RomanizationTable& table);

}  // namespace lexalign
