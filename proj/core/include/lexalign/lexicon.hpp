#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "lexalign/embeddings.hpp"

namespace lexalign {

enum class Provenance { identical, romanized, merged, pivot, external };

const char* provenance_name(Provenance p);

// An ordered list of (source word, target word) pairs. Pairs are unique;
// order is deterministic per the producing operation.
struct SeedLexicon {
  struct Pair {
    std::string src;
    std::string trg;
    bool operator==(const Pair&) const = default;
  };

  std::vector<Pair> pairs;
  Provenance provenance = Provenance::external;
  std::string src_lang;
  std::string trg_lang;

  std::size_t size() const { return pairs.size(); }
};

struct OovReport {
  std::size_t total_pairs = 0;
  std::size_t usable_pairs = 0;
  std::size_t oov_src = 0;  // pairs whose source word is missing
  std::size_t oov_trg = 0;  // pairs whose target word is missing
};

// Pairs (w, w) for the exact byte-wise intersection of the vocabularies,
// ordered by source rank.
SeedLexicon extract_identical(const EmbeddingSpace& space_a, const EmbeddingSpace& space_b,
                              bool* empty_warning = nullptr);

// Pair-set union; a's pairs first, then b's unseen pairs.
SeedLexicon merge(const SeedLexicon& a, const SeedLexicon& b);

// Joins en->L1 with en->L2 on the shared pivot word: full cross product of
// targets per pivot word, deduplicated.
SeedLexicon pivot_join(const SeedLexicon& a, const SeedLexicon& b);

enum class FrequencyEnd { lowest, highest };

// The n pairs whose source word has the highest (or lowest) frequency in
// space_src. Pairs with an OOV source are excluded before selection. Ties
// keep original lexicon order, and the output preserves lexicon order.
SeedLexicon subset_by_frequency(const SeedLexicon& lex, const EmbeddingSpace& space_src,
                                std::size_t n, FrequencyEnd which);

enum class PairSide { src, trg, either };

// Drops pairs whose designated side matches `names` case-insensitively.
SeedLexicon filter_pairs_by_wordlist(const SeedLexicon& lex,
                                     const std::unordered_set<std::string>& names,
                                     PairSide side);

OovReport oov_report(const SeedLexicon& lex, const EmbeddingSpace& space_src,
                     const EmbeddingSpace& space_trg);

// File I/O: one pair per line, TAB separated; a single space is accepted as
// separator on load. Duplicate pairs are dropped on load and counted.
SeedLexicon load_lexicon(const std::string& path, std::size_t* duplicates = nullptr);
void save_lexicon(const SeedLexicon& lex, const std::string& path);

}  // namespace lexalign
