#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexalign {

enum class CandidateSource { external_file, heuristic };

// Lowercase source-candidate words, ordered by descending frequency.
struct CandidateList {
  std::vector<std::string> words;
  CandidateSource source = CandidateSource::external_file;

  // (word, rank) pairs as the matcher expects them.
  std::vector<std::pair<std::string, std::size_t>> ranked() const;
};

// One word per line, ordered by descending frequency; lowercased and
// deduplicated (first occurrence wins). Inner whitespace is an error.
CandidateList load_candidates(const std::string& path);

struct HeuristicConfig {
  double capitalized_ratio = 0.8;  // of non-sentence-initial occurrences
  std::size_t min_count = 2;
  std::size_t min_length = 2;
};

// Capitalization proxy for a proper-noun list: a token qualifies when it is
// purely alphabetic, long and frequent enough, and capitalized in at least
// `capitalized_ratio` of its occurrences that do not start a sentence.
// Sentence-initial = first token of a line or right after a token ending in
// one of . ! ?
CandidateList heuristic_candidates(std::istream& corpus, const HeuristicConfig& config = {},
                                   bool* empty_warning = nullptr);

void save_candidates(const CandidateList& list, const std::string& path);

}  // namespace lexalign
