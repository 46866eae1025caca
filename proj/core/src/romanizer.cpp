#include "lexalign/romanizer.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "lexalign/unicode.hpp"

namespace lexalign {

namespace {

// fold -> decompose -> fold; the second fold catches decompositions that
// expose cased base letters (e.g. U+0130 -> I + dot above).
std::u32string normalize_key(std::u32string_view raw) {
  std::u32string folded = to_lower(raw);
  std::u32string out;
  out.reserve(folded.size());
  for (char32_t cp : folded) canonical_decompose(cp, out);
  for (char32_t& cp : out) cp = to_lower(cp);
  return out;
}

bool valid_replacement(std::string_view r) {
  return std::all_of(r.begin(), r.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'';
  });
}

}  // namespace

const std::vector<RomanizationTable::Entry>* RomanizationTable::candidates(char32_t first) const {
  auto it = by_first_.find(first);
  return it == by_first_.end() ? nullptr : &it->second;
}

void RomanizationTable::add(std::u32string raw_key, std::string replacement) {
  if (raw_key.empty() || raw_key.size() > 4)
    throw std::runtime_error("table key must have 1..4 codepoints: \"" +
                             encode_utf8(raw_key) + "\"");
  if (!valid_replacement(replacement))
    throw std::runtime_error("replacement for \"" + encode_utf8(raw_key) +
                             "\" must use only [a-z0-9'] characters");
  std::u32string key = normalize_key(raw_key);
  auto& bucket = by_first_[key[0]];
  for (const Entry& e : bucket) {
    if (e.key == key)
      throw std::runtime_error("duplicate table key: \"" + encode_utf8(raw_key) + "\"");
  }
  bucket.push_back({std::move(key), std::move(replacement)});
  std::stable_sort(bucket.begin(), bucket.end(),
                   [](const Entry& a, const Entry& b) { return a.key.size() > b.key.size(); });
  ++size_;
}

void RomanizationTable::merge_from(const RomanizationTable& other) {
  for (const auto& [first, entries] : other.by_first_) {
    for (const Entry& e : entries) {
      auto& bucket = by_first_[first];
      for (const Entry& mine : bucket) {
        if (mine.key == e.key)
          throw std::runtime_error("duplicate table key across files: \"" +
                                   encode_utf8(e.key) + "\"");
      }
      bucket.push_back(e);
      std::stable_sort(bucket.begin(), bucket.end(),
                       [](const Entry& a, const Entry& b) { return a.key.size() > b.key.size(); });
      ++size_;
    }
  }
  for (const auto& s : other.scripts_)
    if (std::find(scripts_.begin(), scripts_.end(), s) == scripts_.end()) scripts_.push_back(s);
}

RomanizationTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open romanization table: " + path);
  RomanizationTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# scripts:";
      if (line.rfind(tag, 0) == 0) {
        std::size_t pos = tag.size();
        while (pos < line.size()) {
          while (pos < line.size() && (line[pos] == ' ' || line[pos] == ',')) ++pos;
          std::size_t start = pos;
          while (pos < line.size() && line[pos] != ' ' && line[pos] != ',') ++pos;
          if (pos > start) table.scripts().push_back(line.substr(start, pos - start));
        }
      }
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected <key><TAB><replacement>");
    std::string key = line.substr(0, tab);
    std::string repl = line.substr(tab + 1);
    if (repl == "∅") repl.clear();
    else if (repl.empty())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": empty replacement (use ∅ for the empty string)");
    try {
      table.add(decode_utf8(key), std::move(repl));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

RomanizationTable load_tables(const std::vector<std::string>& paths) {
  RomanizationTable merged;
  for (const auto& p : paths) merged.merge_from(load_table(p));
  return merged;
}

RomanizeResult romanize(std::string_view word, const RomanizationTable& table) {
  std::u32string folded = to_lower(decode_utf8(word));
  std::u32string cps;
  cps.reserve(folded.size());
  for (char32_t cp : folded) canonical_decompose(cp, cps);
  for (char32_t& cp : cps) cp = to_lower(cp);

  RomanizeResult result;
  result.text.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    const auto* bucket = table.candidates(cps[i]);
    if (bucket) {
      bool matched = false;
      for (const auto& entry : *bucket) {
        if (entry.key.size() <= cps.size() - i &&
            std::equal(entry.key.begin(), entry.key.end(), cps.begin() + i)) {
          result.text += entry.replacement;
          i += entry.key.size();
          ++result.matched;
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    char32_t cp = cps[i];
    if (is_combining_mark(cp)) {
      // unmatched mark: dropped
    } else if ((cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9')) {
      result.text.push_back(static_cast<char>(cp));
    } else {
      append_utf8(result.text, cp);
      ++result.uncovered;
    }
    ++i;
  }
  return result;
}

}  // namespace lexalign
