#include "lexalign/matcher.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "lexalign/unicode.hpp"

namespace lexalign {

namespace {

int levenshtein(const std::u32string& a, const std::u32string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

void collect_variants(const std::u32string& word, int k, std::unordered_set<std::string>& out) {
  out.insert(encode_utf8(word));
  if (k == 0 || word.empty()) return;
  std::u32string shorter;
  shorter.reserve(word.size() - 1);
  for (std::size_t i = 0; i < word.size(); ++i) {
    shorter.assign(word);
    shorter.erase(i, 1);
    collect_variants(shorter, k - 1, out);
  }
}

}  // namespace

double normalized_similarity(std::string_view w1, std::string_view w2) {
  std::u32string a = decode_utf8(w1), b = decode_utf8(w2);
  if (a.empty() || b.empty())
    throw std::invalid_argument("normalized_similarity: empty string");
  int dist = levenshtein(a, b);
  return 1.0 - static_cast<double>(dist) / static_cast<double>(std::max(a.size(), b.size()));
}

void MatchConfig::validate() const {
  if (k < 0) throw std::invalid_argument("match config: k must be >= 0");
  if (!(sim_threshold > 0.0 && sim_threshold <= 1.0))
    throw std::invalid_argument("match config: sim_threshold must be in (0, 1]");
  if (min_len < 1) throw std::invalid_argument("match config: min_len must be >= 1");
  if (min_freq != 1)
    throw std::invalid_argument(
        "match config: min_freq > 1 needs occurrence counts, which rank-ordered "
        "inputs do not carry");
}

std::vector<std::string> deletion_variants(std::string_view word, int k) {
  std::unordered_set<std::string> set;
  collect_variants(decode_utf8(word), k, set);
  std::vector<std::string> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

DeleteIndex build_delete_index(const std::vector<std::pair<std::string, std::size_t>>& words,
                               int k) {
  if (k < 0) throw std::invalid_argument("build_delete_index: k must be >= 0");
  DeleteIndex index;
  index.k = k;
  index.originals = words;
  std::unordered_set<std::string> variants;
  for (std::uint32_t id = 0; id < words.size(); ++id) {
    variants.clear();
    collect_variants(decode_utf8(words[id].first), k, variants);
    for (const auto& v : variants) index.buckets[v].push_back(id);
  }
  // bucket id lists ascend because ids were inserted in order; dedup is by
  // the per-word variant set
  return index;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs(const DeleteIndex& index_src,
                                                                     const DeleteIndex& index_trg) {
  if (index_src.k != index_trg.k)
    throw std::invalid_argument("candidate_pairs: indexes built with different k (" +
                                std::to_string(index_src.k) + " vs " +
                                std::to_string(index_trg.k) + ")");
  std::unordered_set<std::uint64_t> seen;
  const bool src_smaller = index_src.buckets.size() <= index_trg.buckets.size();
  const auto& outer = src_smaller ? index_src.buckets : index_trg.buckets;
  const auto& inner = src_smaller ? index_trg.buckets : index_src.buckets;
  for (const auto& [key, outer_ids] : outer) {
    auto it = inner.find(key);
    if (it == inner.end()) continue;
    for (std::uint32_t a : outer_ids) {
      for (std::uint32_t b : it->second) {
        std::uint32_t s = src_smaller ? a : b;
        std::uint32_t t = src_smaller ? b : a;
        seen.insert((static_cast<std::uint64_t>(s) << 32) | t);
      }
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(seen.size());
  for (std::uint64_t v : seen)
    out.emplace_back(static_cast<std::uint32_t>(v >> 32), static_cast<std::uint32_t>(v));
  std::sort(out.begin(), out.end());
  return out;
}

SeedLexicon match(const std::vector<std::pair<std::string, std::size_t>>& source_candidates,
                  const std::vector<std::pair<std::string, std::size_t>>& target_vocab,
                  const RomanizationTable& table, const MatchConfig& config,
                  bool exact, MatchStats* stats) {
  config.validate();
  if (source_candidates.empty()) throw std::invalid_argument("match: empty source candidate list");
  if (target_vocab.empty()) throw std::invalid_argument("match: empty target vocabulary");

  MatchStats local;
  MatchStats& st = stats ? *stats : local;

  // Source side: lowercase, keep first occurrence, filter by length.
  std::vector<std::pair<std::string, std::size_t>> sources;
  sources.reserve(source_candidates.size());
  {
    std::unordered_set<std::string> seen;
    for (const auto& [word, rank] : source_candidates) {
      std::string lower = encode_utf8(to_lower(decode_utf8(word)));
      if (codepoint_length(lower) < config.min_len) continue;
      if (seen.insert(lower).second) sources.emplace_back(std::move(lower), rank);
    }
  }

  // Target side: romanize; a romanized form may collect several originals.
  std::vector<std::pair<std::string, std::size_t>> rom_forms;  // (romanized, best rank)
  std::vector<std::vector<std::uint32_t>> rom_originals;       // indexes into target_vocab
  {
    std::unordered_map<std::string, std::uint32_t> form_id;
    for (std::uint32_t t = 0; t < target_vocab.size(); ++t) {
      const auto& [word, rank] = target_vocab[t];
      if (codepoint_length(word) < config.min_len) continue;
      RomanizeResult r = romanize(word, table);
      ++st.targets_romanized;
      if (r.matched > 0) ++st.targets_with_hits;
      if (r.text.empty()) {
        ++st.targets_empty;
        continue;
      }
      auto [it, inserted] = form_id.emplace(r.text, static_cast<std::uint32_t>(rom_forms.size()));
      if (inserted) {
        rom_forms.emplace_back(r.text, rank);
        rom_originals.emplace_back();
      }
      rom_originals[it->second].push_back(t);
    }
  }

  SeedLexicon lex;
  lex.provenance = Provenance::romanized;
  if (st.targets_with_hits == 0) {
    st.no_coverage = true;
    return lex;
  }

  struct Hit {
    std::size_t src_rank;
    std::size_t trg_rank;
    std::uint32_t src_id;
    std::uint32_t trg_id;
  };
  std::vector<Hit> hits;

  auto score_pair = [&](std::uint32_t si, std::uint32_t fi) {
    ++st.pairs_scored;
    double sim = normalized_similarity(sources[si].first, rom_forms[fi].first);
    if (sim < config.sim_threshold) return;
    for (std::uint32_t t : rom_originals[fi]) {
      hits.push_back({sources[si].second, target_vocab[t].second, si, t});
      ++st.pairs_kept;
    }
  };

  if (exact) {
    for (std::uint32_t si = 0; si < sources.size(); ++si)
      for (std::uint32_t fi = 0; fi < rom_forms.size(); ++fi) score_pair(si, fi);
  } else {
    DeleteIndex src_index = build_delete_index(sources, config.k);
    DeleteIndex trg_index = build_delete_index(rom_forms, config.k);
    for (const auto& [si, fi] : candidate_pairs(src_index, trg_index)) score_pair(si, fi);
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.src_rank != b.src_rank) return a.src_rank < b.src_rank;
    if (a.trg_rank != b.trg_rank) return a.trg_rank < b.trg_rank;
    return std::tie(a.src_id, a.trg_id) < std::tie(b.src_id, b.trg_id);
  });

  std::unordered_set<std::string> dedup;
  for (const Hit& h : hits) {
    const std::string& src = sources[h.src_id].first;
    const std::string& trg = target_vocab[h.trg_id].first;
    if (dedup.insert(src + '\t' + trg).second) lex.pairs.push_back({src, trg});
  }
  return lex;
}

}  // namespace lexalign
