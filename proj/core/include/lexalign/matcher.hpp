#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexalign/lexicon.hpp"
#include "lexalign/romanizer.hpp"

namespace lexalign {

// 1 - Lev(w1, w2) / max(|w1|, |w2|), lengths in codepoints, unit-cost
// insert/delete/substitute. Throws on empty input.
double normalized_similarity(std::string_view w1, std::string_view w2);

struct MatchConfig {
  int k = 2;
  double sim_threshold = 0.8;
  std::size_t min_len = 1;
  std::size_t min_freq = 1;

  void validate() const;
};

// Symmetric-Delete index: every word is bucketed under each distinct string
// reachable by 0..k codepoint deletions.
struct DeleteIndex {
  int k = 0;
  std::unordered_map<std::string, std::vector<std::uint32_t>> buckets;
  std::vector<std::pair<std::string, std::size_t>> originals;  // (word, rank)
};

DeleteIndex build_delete_index(const std::vector<std::pair<std::string, std::size_t>>& words,
                               int k);

// All distinct deletion variants of one word (0..k deletions), including the
// word itself. Exposed for the brute-force oracles.
std::vector<std::string> deletion_variants(std::string_view word, int k);

// Pairs (src id, trg id) sharing at least one bucket key, sorted ascending.
std::vector<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const DeleteIndex& index_src,
                                                                     const DeleteIndex& index_trg);

struct MatchStats {
  std::size_t targets_romanized = 0;
  std::size_t targets_empty = 0;       // romanization produced ""
  std::size_t targets_with_hits = 0;   // at least one table entry applied
  std::size_t pairs_scored = 0;
  std::size_t pairs_kept = 0;
  bool no_coverage = false;            // table matched nothing; result is empty
};

// Romanizes the target vocabulary, finds approximate transliteration pairs
// against the (already Latin) source candidates, and emits original-script
// pairs sorted by (source rank, target rank). With exact=true the
// Symmetric-Delete prefilter is skipped and every source/target pair is
// scored.
SeedLexicon match(const std::vector<std::pair<std::string, std::size_t>>& source_candidates,
                  const std::vector<std::pair<std::string, std::size_t>>& target_vocab,
                  const RomanizationTable& table, const MatchConfig& config,
                  bool exact = false, MatchStats* stats = nullptr);

}  // namespace lexalign
