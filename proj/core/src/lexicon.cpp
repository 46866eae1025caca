#include "lexalign/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "lexalign/unicode.hpp"

namespace lexalign {

namespace {

struct PairHash {
  std::size_t operator()(const SeedLexicon::Pair& p) const {
    std::size_t h1 = std::hash<std::string>{}(p.src);
    std::size_t h2 = std::hash<std::string>{}(p.trg);
    return h1 ^ (h2 + 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2));
  }
};

using PairSet = std::unordered_set<SeedLexicon::Pair, PairHash>;

std::string lowercase_utf8(const std::string& s) {
  return encode_utf8(to_lower(decode_utf8(s)));
}

void check_same_language_pair(const SeedLexicon& a, const SeedLexicon& b) {
  if (!a.src_lang.empty() && !b.src_lang.empty() && a.src_lang != b.src_lang)
    throw std::invalid_argument("language pair mismatch: source " + a.src_lang + " vs " + b.src_lang);
  if (!a.trg_lang.empty() && !b.trg_lang.empty() && a.trg_lang != b.trg_lang)
    throw std::invalid_argument("language pair mismatch: target " + a.trg_lang + " vs " + b.trg_lang);
}

}  // namespace

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::identical: return "identical";
    case Provenance::romanized: return "romanized";
    case Provenance::merged: return "merged";
    case Provenance::pivot: return "pivot";
    case Provenance::external: return "external";
  }
  return "?";
}

SeedLexicon extract_identical(const EmbeddingSpace& space_a, const EmbeddingSpace& space_b,
                              bool* empty_warning) {
  SeedLexicon lex;
  lex.provenance = Provenance::identical;
  lex.src_lang = space_a.lang;
  lex.trg_lang = space_b.lang;
  const auto& idx_b = space_b.index();
  for (const auto& w : space_a.words) {
    if (idx_b.count(w)) lex.pairs.push_back({w, w});
  }
  if (empty_warning) *empty_warning = lex.pairs.empty();
  return lex;
}

SeedLexicon merge(const SeedLexicon& a, const SeedLexicon& b) {
  check_same_language_pair(a, b);
  SeedLexicon out;
  out.provenance = Provenance::merged;
  out.src_lang = a.src_lang.empty() ? b.src_lang : a.src_lang;
  out.trg_lang = a.trg_lang.empty() ? b.trg_lang : a.trg_lang;
  out.pairs.reserve(a.pairs.size() + b.pairs.size());
  PairSet seen;
  seen.reserve(a.pairs.size() + b.pairs.size());
  for (const auto& p : a.pairs)
    if (seen.insert(p).second) out.pairs.push_back(p);
  for (const auto& p : b.pairs)
    if (seen.insert(p).second) out.pairs.push_back(p);
  return out;
}

SeedLexicon pivot_join(const SeedLexicon& a, const SeedLexicon& b) {
  if (!a.src_lang.empty() && !b.src_lang.empty() && a.src_lang != b.src_lang)
    throw std::invalid_argument("pivot language mismatch: " + a.src_lang + " vs " + b.src_lang);
  std::unordered_map<std::string, std::vector<const std::string*>> by_pivot;
  for (const auto& p : b.pairs) by_pivot[p.src].push_back(&p.trg);

  SeedLexicon out;
  out.provenance = Provenance::pivot;
  out.src_lang = a.trg_lang;
  out.trg_lang = b.trg_lang;
  PairSet seen;
  for (const auto& pa : a.pairs) {
    auto it = by_pivot.find(pa.src);
    if (it == by_pivot.end()) continue;
    for (const std::string* t2 : it->second) {
      SeedLexicon::Pair p{pa.trg, *t2};
      if (seen.insert(p).second) out.pairs.push_back(std::move(p));
    }
  }
  return out;
}

SeedLexicon subset_by_frequency(const SeedLexicon& lex, const EmbeddingSpace& space_src,
                                std::size_t n, FrequencyEnd which) {
  if (n < 1) throw std::invalid_argument("subset_by_frequency: n must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (rank, position)
  ranked.reserve(lex.pairs.size());
  for (std::size_t i = 0; i < lex.pairs.size(); ++i) {
    std::size_t rank = space_src.rank_of(lex.pairs[i].src);
    if (rank != EmbeddingSpace::npos) ranked.emplace_back(rank, i);
  }
  if (n > ranked.size())
    throw std::invalid_argument("subset_by_frequency: requested " + std::to_string(n) +
                                " pairs but only " + std::to_string(ranked.size()) +
                                " have an in-vocabulary source");
  // Lower rank = more frequent. stable by construction: positions ascend
  // within equal ranks after the sort below.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  if (which == FrequencyEnd::highest) {
    for (std::size_t i = 0; i < n; ++i) chosen.push_back(ranked[i].second);
  } else {
    for (std::size_t i = ranked.size() - n; i < ranked.size(); ++i) chosen.push_back(ranked[i].second);
  }
  std::sort(chosen.begin(), chosen.end());

  SeedLexicon out;
  out.provenance = lex.provenance;
  out.src_lang = lex.src_lang;
  out.trg_lang = lex.trg_lang;
  out.pairs.reserve(n);
  for (std::size_t pos : chosen) out.pairs.push_back(lex.pairs[pos]);
  return out;
}

SeedLexicon filter_pairs_by_wordlist(const SeedLexicon& lex,
                                     const std::unordered_set<std::string>& names,
                                     PairSide side) {
  std::unordered_set<std::string> folded;
  folded.reserve(names.size());
  for (const auto& n : names) folded.insert(lowercase_utf8(n));

  SeedLexicon out;
  out.provenance = lex.provenance;
  out.src_lang = lex.src_lang;
  out.trg_lang = lex.trg_lang;
  for (const auto& p : lex.pairs) {
    bool drop_src = (side == PairSide::src || side == PairSide::either) &&
                    folded.count(lowercase_utf8(p.src));
    bool drop_trg = (side == PairSide::trg || side == PairSide::either) &&
                    folded.count(lowercase_utf8(p.trg));
    if (!drop_src && !drop_trg) out.pairs.push_back(p);
  }
  return out;
}

OovReport oov_report(const SeedLexicon& lex, const EmbeddingSpace& space_src,
                     const EmbeddingSpace& space_trg) {
  OovReport rep;
  rep.total_pairs = lex.pairs.size();
  const auto& src_idx = space_src.index();
  const auto& trg_idx = space_trg.index();
  for (const auto& p : lex.pairs) {
    bool src_in = src_idx.count(p.src) > 0;
    bool trg_in = trg_idx.count(p.trg) > 0;
    if (!src_in) ++rep.oov_src;
    if (!trg_in) ++rep.oov_trg;
    if (src_in && trg_in) ++rep.usable_pairs;
  }
  return rep;
}

SeedLexicon load_lexicon(const std::string& path, std::size_t* duplicates) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  SeedLexicon lex;
  lex.provenance = Provenance::external;
  PairSet seen;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dups = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t sep = line.find('\t');
    if (sep == std::string::npos) sep = line.find(' ');
    if (sep == std::string::npos || sep == 0 || sep + 1 >= line.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected <source><TAB><target>");
    SeedLexicon::Pair p{line.substr(0, sep), line.substr(sep + 1)};
    if (seen.insert(p).second) lex.pairs.push_back(std::move(p));
    else ++dups;
  }
  if (duplicates) *duplicates = dups;
  return lex;
}

void save_lexicon(const SeedLexicon& lex, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write lexicon file: " + path);
  for (const auto& p : lex.pairs) out << p.src << '\t' << p.trg << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lexalign
