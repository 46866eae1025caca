#include <doctest.h>

#include <map>
#include <random>

#include "lexalign/matcher.hpp"
#include "lexalign/unicode.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

namespace {

std::vector<std::pair<std::string, std::size_t>> ranked(const std::vector<std::string>& ws) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (std::size_t i = 0; i < ws.size(); ++i) out.emplace_back(ws[i], i);
  return out;
}

}  // namespace

TEST_CASE("normalized similarity on known pairs") {
  CHECK(normalized_similarity("carl", "carl") == doctest::Approx(1.0));
  CHECK(normalized_similarity("carl", "karl") == doctest::Approx(0.75));
  CHECK(normalized_similarity("babylon", "babilon") == doctest::Approx(1.0 - 1.0 / 7.0));
  CHECK(normalized_similarity("a", "b") == doctest::Approx(0.0));
  CHECK_THROWS_AS(normalized_similarity("", "x"), std::invalid_argument);
  // symmetric, codepoint-based lengths
  CHECK(normalized_similarity("карл", "кар") ==
        doctest::Approx(0.75));
}

TEST_CASE("normalized similarity equals the DP oracle on random pairs") {
  std::mt19937_64 rng(42);
  const std::string latin = "abcdefgh";
  std::vector<std::u32string> extra = {U"абв", U"中文",
                                       U"αβγ"};
  std::uniform_int_distribution<std::size_t> pick_extra(0, extra.size() - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  auto make_word = [&] {
    std::u32string w = decode_utf8(random_word(rng, 1, 12, latin));
    if (coin(rng) == 0) {
      const std::u32string& mix = extra[pick_extra(rng)];
      w.insert(w.begin() + static_cast<long>(w.size() / 2), mix.begin(), mix.end());
    }
    return w;
  };
  for (int i = 0; i < 2000; ++i) {
    std::u32string a = make_word(), b = make_word();
    double expected =
        1.0 - static_cast<double>(lev_oracle(a, b)) / static_cast<double>(std::max(a.size(), b.size()));
    CHECK(normalized_similarity(encode_utf8(a), encode_utf8(b)) == expected);
  }
}

TEST_CASE("delete index enumerates deletion variants") {
  DeleteIndex idx = build_delete_index(ranked({"ab"}), 1);
  REQUIRE(idx.buckets.size() == 3);
  CHECK(idx.buckets.at("ab") == std::vector<std::uint32_t>{0});
  CHECK(idx.buckets.at("a") == std::vector<std::uint32_t>{0});
  CHECK(idx.buckets.at("b") == std::vector<std::uint32_t>{0});

  DeleteIndex idx2 = build_delete_index(ranked({"ab", "ba"}), 2);
  CHECK(idx2.buckets.at("") == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("delete index membership equals brute-force enumeration") {
  std::mt19937_64 rng(7);
  std::vector<std::string> words;
  for (int i = 0; i < 300; ++i) words.push_back(random_word(rng, 1, 8, "abcde"));
  DeleteIndex idx = build_delete_index(ranked(words), 2);
  for (int sample = 0; sample < 100; ++sample) {
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::size_t id = pick(rng);
    std::set<std::u32string> expect;
    deletion_set_oracle(decode_utf8(words[id]), 2, expect);
    for (const auto& v : expect) {
      auto it = idx.buckets.find(encode_utf8(v));
      REQUIRE(it != idx.buckets.end());
      bool present = std::find(it->second.begin(), it->second.end(),
                               static_cast<std::uint32_t>(id)) != it->second.end();
      CHECK(present);
    }
    // and the word appears in no bucket outside its variant set
    std::size_t appearances = 0;
    for (const auto& [key, ids] : idx.buckets)
      appearances += std::count(ids.begin(), ids.end(), static_cast<std::uint32_t>(id));
    CHECK(appearances == expect.size());
  }
}

TEST_CASE("candidate pairs require matching k and find shared variants") {
  DeleteIndex src = build_delete_index(ranked({"carl"}), 2);
  DeleteIndex trg = build_delete_index(ranked({"karl"}), 2);
  auto pairs = candidate_pairs(src, trg);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair<std::uint32_t, std::uint32_t>{0, 0});

  DeleteIndex far = build_delete_index(ranked({"xyz"}), 2);
  DeleteIndex abc = build_delete_index(ranked({"abc"}), 2);
  CHECK(candidate_pairs(abc, far).empty());

  DeleteIndex k1 = build_delete_index(ranked({"abc"}), 1);
  CHECK_THROWS_AS(candidate_pairs(k1, far), std::invalid_argument);
}

TEST_CASE("candidate pairs equal brute-force variant-set intersection") {
  std::mt19937_64 rng(9);
  std::vector<std::string> src_words, trg_words;
  for (int i = 0; i < 120; ++i) src_words.push_back(random_word(rng, 1, 5, "abcd"));
  for (int i = 0; i < 150; ++i) trg_words.push_back(random_word(rng, 1, 5, "abcd"));

  auto got = candidate_pairs(build_delete_index(ranked(src_words), 2),
                             build_delete_index(ranked(trg_words), 2));

  std::vector<std::set<std::u32string>> src_vars(src_words.size()), trg_vars(trg_words.size());
  for (std::size_t i = 0; i < src_words.size(); ++i)
    deletion_set_oracle(decode_utf8(src_words[i]), 2, src_vars[i]);
  for (std::size_t j = 0; j < trg_words.size(); ++j)
    deletion_set_oracle(decode_utf8(trg_words[j]), 2, trg_vars[j]);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> expect;
  for (std::size_t i = 0; i < src_words.size(); ++i) {
    for (std::size_t j = 0; j < trg_words.size(); ++j) {
      bool shared = false;
      for (const auto& v : src_vars[i])
        if (trg_vars[j].count(v)) {
          shared = true;
          break;
        }
      if (shared) expect.emplace_back(i, j);
    }
  }
  std::sort(expect.begin(), expect.end());
  CHECK(got == expect);
}

TEST_CASE("match finds the paper's transliteration examples") {
  RomanizationTable grk = load_table(table_path("greek"));
  MatchConfig cfg;
  SeedLexicon lex = match(ranked({"babylon"}), ranked({"βαβυλών"}),
                          grk, cfg);
  REQUIRE(lex.size() == 1);
  CHECK(lex.pairs[0].src == "babylon");
  CHECK(lex.pairs[0].trg == "βαβυλών");
  CHECK(lex.provenance == Provenance::romanized);

  // the threshold applies to romanized forms: к -> c makes this exact
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  SeedLexicon carl = match(ranked({"Carl"}), ranked({"карл"}), cyr, cfg);
  REQUIRE(carl.size() == 1);
  CHECK(carl.pairs[0].src == "carl");
}

TEST_CASE("match recovers single-substitution pairs at length >= 5") {
  // Cyrillic targets built from 1:1 letters; sources are their romanizations
  // with one character substituted, so similarity is (L-1)/L >= 0.8
  const std::u32string cyr_letters = U"абвгдезиоп";
  const std::string lat_letters = "abvgdezio p";  // same order as above
  const std::map<char32_t, char> to_latin = {
      {U'а', 'a'}, {U'б', 'b'}, {U'в', 'v'}, {U'г', 'g'}, {U'д', 'd'},
      {U'е', 'e'}, {U'з', 'z'}, {U'и', 'i'}, {U'о', 'o'}, {U'п', 'p'}};
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(5, 9);
  std::uniform_int_distribution<std::size_t> pick(0, cyr_letters.size() - 1);
  std::vector<std::string> sources, targets;
  for (int i = 0; i < 60; ++i) {
    int n = len(rng);
    std::u32string trg;
    std::string src;
    for (int j = 0; j < n; ++j) {
      char32_t cp = cyr_letters[pick(rng)];
      trg.push_back(cp);
      src.push_back(to_latin.at(cp));
    }
    std::uniform_int_distribution<int> pos(0, n - 1);
    src[pos(rng)] = 'x';  // not the image of any letter above
    sources.push_back(src);
    targets.push_back(encode_utf8(trg));
  }
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  MatchConfig cfg;
  SeedLexicon lex = match(ranked(sources), ranked(targets), cyr, cfg);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    bool found = false;
    for (const auto& p : lex.pairs)
      if (p.src == sources[i] && p.trg == targets[i]) {
        found = true;
        break;
      }
    INFO("pair ", sources[i], " <-> ", targets[i]);
    CHECK(found);
  }

  // every emitted pair satisfies the threshold on romanized forms
  for (const auto& p : lex.pairs) {
    double sim = normalized_similarity(p.src, romanize(p.trg, cyr).text);
    CHECK(sim >= cfg.sim_threshold);
  }

  // output is sorted by (source rank, target rank)
  std::map<std::string, std::size_t> src_rank;
  for (std::size_t i = 0; i < sources.size(); ++i)
    if (!src_rank.count(sources[i])) src_rank[sources[i]] = i;
  std::map<std::string, std::size_t> trg_rank;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!trg_rank.count(targets[i])) trg_rank[targets[i]] = i;
  for (std::size_t i = 1; i < lex.pairs.size(); ++i) {
    auto key = [&](const SeedLexicon::Pair& p) {
      return std::make_pair(src_rank.at(p.src), trg_rank.at(p.trg));
    };
    CHECK(key(lex.pairs[i - 1]) <= key(lex.pairs[i]));
  }

  // exact mode finds at least the same pairs
  SeedLexicon exact = match(ranked(sources), ranked(targets), cyr, cfg, true);
  CHECK(exact.size() >= lex.size());
  for (const auto& p : lex.pairs) {
    bool found = std::find_if(exact.pairs.begin(), exact.pairs.end(), [&](const auto& q) {
                   return q.src == p.src && q.trg == p.trg;
                 }) != exact.pairs.end();
    CHECK(found);
  }
}

TEST_CASE("one romanized form fans out to all original targets") {
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  MatchConfig cfg;
  // ъ and ь both romanize to nothing, so these two targets collide
  SeedLexicon lex = match(ranked({"da"}),
                          ranked({"даъ", "даь"}), cyr, cfg);
  CHECK(lex.size() == 2);
}

TEST_CASE("match error and warning paths") {
  RomanizationTable grk = load_table(table_path("greek"));
  MatchConfig cfg;
  CHECK_THROWS_AS(match({}, ranked({"x"}), grk, cfg), std::invalid_argument);
  CHECK_THROWS_AS(match(ranked({"x"}), {}, grk, cfg), std::invalid_argument);

  MatchStats stats;
  SeedLexicon lex = match(ranked({"beijing"}), ranked({"中国", "北京"}), grk, cfg,
                          false, &stats);
  CHECK(lex.size() == 0);
  CHECK(stats.no_coverage);

  MatchConfig bad;
  bad.min_freq = 5;
  CHECK_THROWS_AS(match(ranked({"x"}), ranked({"y"}), grk, bad), std::invalid_argument);

  MatchConfig minlen;
  minlen.min_len = 4;
  SeedLexicon filtered =
      match(ranked({"abc", "carl"}), ranked({"карл"}),
            load_table(table_path("cyrillic")), minlen);
  REQUIRE(filtered.size() == 1);
  CHECK(filtered.pairs[0].src == "carl");
}
