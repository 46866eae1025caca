#include "lexalign/candidates.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "lexalign/unicode.hpp"

namespace lexalign {

std::vector<std::pair<std::string, std::size_t>> CandidateList::ranked() const {
  std::vector<std::pair<std::string, std::size_t>> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out.emplace_back(words[i], i);
  return out;
}

CandidateList load_candidates(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open candidate file: " + path);
  CandidateList list;
  list.source = CandidateSource::external_file;
  std::unordered_map<std::string, bool> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find(' ') != std::string::npos || line.find('\t') != std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": candidate contains whitespace");
    std::string lower = encode_utf8(to_lower(decode_utf8(line)));
    if (seen.emplace(lower, true).second) list.words.push_back(std::move(lower));
  }
  if (list.words.empty()) throw std::runtime_error("candidate file is empty: " + path);
  return list;
}

CandidateList heuristic_candidates(std::istream& corpus, const HeuristicConfig& config,
                                   bool* empty_warning) {
  struct Stats {
    std::size_t total = 0;
    std::size_t mid = 0;      // non-sentence-initial occurrences
    std::size_t mid_cap = 0;  // of those, capitalized
    std::size_t first_seen = 0;
    bool alphabetic = true;
    bool long_enough = true;
  };
  std::unordered_map<std::string, Stats> stats;
  std::size_t order = 0;

  std::string line;
  while (std::getline(corpus, line)) {
    bool sentence_initial = true;  // line start
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      std::u32string cps = decode_utf8(token);
      std::u32string lower = to_lower(cps);
      std::string key = encode_utf8(lower);
      auto [it, inserted] = stats.try_emplace(key);
      Stats& s = it->second;
      if (inserted) {
        s.first_seen = order++;
        s.alphabetic = std::all_of(cps.begin(), cps.end(), is_alphabetic);
        s.long_enough = cps.size() >= config.min_length;
      }
      ++s.total;
      if (!sentence_initial) {
        ++s.mid;
        if (!cps.empty() && to_lower(cps[0]) != cps[0]) ++s.mid_cap;
      }
      char last = token.back();
      sentence_initial = (last == '.' || last == '!' || last == '?');
    }
  }

  std::vector<std::pair<const std::string*, const Stats*>> qualified;
  for (const auto& [word, s] : stats) {
    if (!s.alphabetic || !s.long_enough) continue;
    if (s.total < config.min_count) continue;
    if (s.mid_cap == 0) continue;
    if (static_cast<double>(s.mid_cap) <
        config.capitalized_ratio * static_cast<double>(s.mid))
      continue;
    qualified.emplace_back(&word, &s);
  }
  std::sort(qualified.begin(), qualified.end(), [](const auto& a, const auto& b) {
    if (a.second->total != b.second->total) return a.second->total > b.second->total;
    return a.second->first_seen < b.second->first_seen;
  });

  CandidateList list;
  list.source = CandidateSource::heuristic;
  list.words.reserve(qualified.size());
  for (const auto& [word, s] : qualified) list.words.push_back(*word);
  if (empty_warning) *empty_warning = list.words.empty();
  return list;
}

void save_candidates(const CandidateList& list, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write candidate file: " + path);
  for (const auto& w : list.words) out << w << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lexalign
