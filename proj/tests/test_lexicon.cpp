#include <doctest.h>

#include <random>

#include "lexalign/lexicon.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

namespace {

EmbeddingSpace space_of(const std::vector<std::string>& words, const std::string& lang = "") {
  EmbeddingSpace s;
  s.words = words;
  s.dim = 2;
  s.lang = lang;
  s.vectors.resize(static_cast<Eigen::Index>(words.size()), 2);
  for (Eigen::Index i = 0; i < s.vectors.rows(); ++i) {
    s.vectors(i, 0) = 1.0f;
    s.vectors(i, 1) = static_cast<float>(i);
  }
  return s;
}

SeedLexicon lex_of(std::vector<std::pair<std::string, std::string>> pairs,
                   const std::string& src_lang = "", const std::string& trg_lang = "") {
  SeedLexicon lex;
  for (auto& [s, t] : pairs) lex.pairs.push_back({s, t});
  lex.src_lang = src_lang;
  lex.trg_lang = trg_lang;
  return lex;
}

std::set<std::pair<std::string, std::string>> pair_set(const SeedLexicon& lex) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& p : lex.pairs) out.insert({p.src, p.trg});
  return out;
}

}  // namespace

TEST_CASE("identical pairs are the byte-exact vocabulary intersection") {
  EmbeddingSpace a = space_of({"2010", "tokyo", "的"});
  EmbeddingSpace b = space_of({"2010", "tokyo", "و"});
  SeedLexicon lex = extract_identical(a, b);
  REQUIRE(lex.size() == 2);
  CHECK(lex.pairs[0].src == "2010");
  CHECK(lex.pairs[1].src == "tokyo");
  CHECK(lex.provenance == Provenance::identical);

  bool warn = false;
  SeedLexicon empty = extract_identical(space_of({"x"}), space_of({"y"}), &warn);
  CHECK(empty.size() == 0);
  CHECK(warn);

  // case sensitive: Tokyo != tokyo
  SeedLexicon cased = extract_identical(space_of({"Tokyo"}), space_of({"tokyo"}));
  CHECK(cased.size() == 0);
}

TEST_CASE("extract_identical is symmetric up to side swap") {
  EmbeddingSpace a = space_of({"u", "common", "9", "x"});
  EmbeddingSpace b = space_of({"9", "z", "common"});
  SeedLexicon ab = extract_identical(a, b);
  SeedLexicon ba = extract_identical(b, a);
  std::set<std::pair<std::string, std::string>> swapped;
  for (const auto& p : ba.pairs) swapped.insert({p.trg, p.src});
  CHECK(pair_set(ab) == swapped);
}

TEST_CASE("merge unions pair sets") {
  SeedLexicon a = lex_of({{"x", "y"}});
  SeedLexicon b = lex_of({{"x", "y"}, {"u", "v"}});
  SeedLexicon m = merge(a, b);
  REQUIRE(m.size() == 2);
  CHECK(m.provenance == Provenance::merged);
  CHECK(pair_set(m) == pair_set(b));

  SeedLexicon from_empty = merge(lex_of({}), b);
  CHECK(pair_set(from_empty) == pair_set(b));

  // commutative and idempotent on pair sets
  CHECK(pair_set(merge(a, b)) == pair_set(merge(b, a)));
  CHECK(pair_set(merge(b, b)) == pair_set(b));

  SeedLexicon th = lex_of({{"a", "b"}}, "en", "th");
  SeedLexicon ko = lex_of({{"a", "b"}}, "en", "ko");
  CHECK_THROWS_AS(merge(th, ko), std::invalid_argument);
}

TEST_CASE("pivot join crosses targets that share a pivot word") {
  SeedLexicon a = lex_of({{"king", "roi"}}, "en", "fr");
  SeedLexicon b = lex_of({{"king", "rey"}}, "en", "es");
  SeedLexicon j = pivot_join(a, b);
  REQUIRE(j.size() == 1);
  CHECK(j.pairs[0].src == "roi");
  CHECK(j.pairs[0].trg == "rey");
  CHECK(j.provenance == Provenance::pivot);
  CHECK(j.src_lang == "fr");
  CHECK(j.trg_lang == "es");

  SeedLexicon a2 = lex_of({{"bank", "banque"}, {"bank", "rive"}});
  SeedLexicon b2 = lex_of({{"bank", "banco"}});
  SeedLexicon j2 = pivot_join(a2, b2);
  CHECK(pair_set(j2) ==
        std::set<std::pair<std::string, std::string>>{{"banque", "banco"}, {"rive", "banco"}});

  CHECK_THROWS_AS(pivot_join(lex_of({}, "en", "fr"), lex_of({}, "de", "es")),
                  std::invalid_argument);
}

TEST_CASE("pivot join equals a nested-loop join on random lexicons") {
  std::mt19937_64 rng(11);
  auto random_lex = [&](int n) {
    SeedLexicon lex;
    std::uniform_int_distribution<int> word(0, 40);
    std::set<std::pair<std::string, std::string>> seen;
    while (static_cast<int>(lex.pairs.size()) < n) {
      std::string s = "p" + std::to_string(word(rng));
      std::string t = "t" + std::to_string(word(rng));
      if (seen.insert({s, t}).second) lex.pairs.push_back({s, t});
    }
    return lex;
  };
  SeedLexicon a = random_lex(500), b = random_lex(500);
  SeedLexicon j = pivot_join(a, b);
  std::set<std::pair<std::string, std::string>> expect;
  for (const auto& pa : a.pairs)
    for (const auto& pb : b.pairs)
      if (pa.src == pb.src) expect.insert({pa.trg, pb.trg});
  CHECK(pair_set(j) == expect);
  CHECK(j.pairs.size() == expect.size());  // deduplicated

  // mirror property
  SeedLexicon ji = pivot_join(b, a);
  std::set<std::pair<std::string, std::string>> mirrored;
  for (const auto& p : ji.pairs) mirrored.insert({p.trg, p.src});
  CHECK(pair_set(j) == mirrored);
}

TEST_CASE("frequency subsets select by source rank") {
  EmbeddingSpace src = space_of({"r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9"});
  SeedLexicon lex = lex_of({{"r5", "a"}, {"r1", "b"}, {"r9", "c"}});

  SeedLexicon top2 = subset_by_frequency(lex, src, 2, FrequencyEnd::highest);
  CHECK(pair_set(top2) ==
        std::set<std::pair<std::string, std::string>>{{"r1", "b"}, {"r5", "a"}});

  SeedLexicon low2 = subset_by_frequency(lex, src, 2, FrequencyEnd::lowest);
  CHECK(pair_set(low2) ==
        std::set<std::pair<std::string, std::string>>{{"r5", "a"}, {"r9", "c"}});

  SeedLexicon all = subset_by_frequency(lex, src, 3, FrequencyEnd::lowest);
  CHECK(pair_set(all) == pair_set(lex));
  CHECK(pair_set(subset_by_frequency(lex, src, 3, FrequencyEnd::highest)) == pair_set(lex));

  CHECK_THROWS_WITH_AS(subset_by_frequency(lex, src, 4, FrequencyEnd::highest),
                       doctest::Contains("3"), std::invalid_argument);

  // OOV sources are excluded before selection
  SeedLexicon with_oov = lex_of({{"zzz", "x"}, {"r0", "y"}});
  SeedLexicon picked = subset_by_frequency(with_oov, src, 1, FrequencyEnd::lowest);
  REQUIRE(picked.size() == 1);
  CHECK(picked.pairs[0].src == "r0");
}

TEST_CASE("frequency subset matches a sort-based oracle") {
  std::mt19937_64 rng(5);
  std::vector<std::string> vocab;
  for (int i = 0; i < 50; ++i) vocab.push_back("w" + std::to_string(i));
  EmbeddingSpace src = space_of(vocab);
  SeedLexicon lex;
  std::uniform_int_distribution<int> pick(0, 49);
  for (int i = 0; i < 30; ++i)
    lex.pairs.push_back({"w" + std::to_string(pick(rng)), "t" + std::to_string(i)});

  for (auto which : {FrequencyEnd::highest, FrequencyEnd::lowest}) {
    SeedLexicon got = subset_by_frequency(lex, src, 10, which);
    // oracle: stable sort positions by rank, slice, compare as multisets of
    // original positions
    std::vector<std::pair<std::size_t, std::size_t>> ranked;
    for (std::size_t i = 0; i < lex.pairs.size(); ++i)
      ranked.emplace_back(src.rank_of(lex.pairs[i].src), i);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::set<std::size_t> expect_pos;
    if (which == FrequencyEnd::highest)
      for (std::size_t i = 0; i < 10; ++i) expect_pos.insert(ranked[i].second);
    else
      for (std::size_t i = ranked.size() - 10; i < ranked.size(); ++i)
        expect_pos.insert(ranked[i].second);
    std::multiset<std::pair<std::string, std::string>> expect, actual;
    for (std::size_t pos : expect_pos) expect.insert({lex.pairs[pos].src, lex.pairs[pos].trg});
    for (const auto& p : got.pairs) actual.insert({p.src, p.trg});
    CHECK(actual == expect);
  }
}

TEST_CASE("name filtering removes pairs case-insensitively") {
  SeedLexicon lex = lex_of({{"paris", "パリ"}, {"dog", "犬"}});
  SeedLexicon out = filter_pairs_by_wordlist(lex, {"Paris"}, PairSide::src);
  REQUIRE(out.size() == 1);
  CHECK(out.pairs[0].src == "dog");

  CHECK(pair_set(filter_pairs_by_wordlist(lex, {}, PairSide::either)) == pair_set(lex));

  SeedLexicon by_trg = filter_pairs_by_wordlist(lex, {"犬"}, PairSide::trg);
  REQUIRE(by_trg.size() == 1);
  CHECK(by_trg.pairs[0].src == "paris");
}

TEST_CASE("filtering a fixture with 10 percent name coverage keeps 90 percent") {
  SeedLexicon lex;
  std::unordered_set<std::string> names;
  for (int i = 0; i < 100; ++i) {
    std::string src = "word" + std::to_string(i);
    lex.pairs.push_back({src, "t" + std::to_string(i)});
    if (i % 10 == 0) names.insert(src);  // exactly 10% of sources
  }
  SeedLexicon out = filter_pairs_by_wordlist(lex, names, PairSide::src);
  CHECK(out.size() == 90);
}

TEST_CASE("filter and merge commute") {
  SeedLexicon a = lex_of({{"x", "y"}, {"paris", "p"}});
  SeedLexicon b = lex_of({{"u", "v"}, {"q", "paris"}});
  std::unordered_set<std::string> names = {"paris"};
  SeedLexicon filtered_then_merged =
      merge(filter_pairs_by_wordlist(a, names, PairSide::either),
            filter_pairs_by_wordlist(b, names, PairSide::either));
  SeedLexicon merged_then_filtered =
      filter_pairs_by_wordlist(merge(a, b), names, PairSide::either);
  CHECK(pair_set(filtered_then_merged) == pair_set(merged_then_filtered));
}

TEST_CASE("oov report accounting") {
  EmbeddingSpace a = space_of({"one", "two", "three"});
  EmbeddingSpace b = space_of({"one", "two", "three"});
  SeedLexicon id = extract_identical(a, b);
  OovReport rep = oov_report(id, a, b);
  CHECK(rep.total_pairs == 3);
  CHECK(rep.usable_pairs == 3);  // identical pairs from the same spaces: no OOV
  CHECK(rep.oov_src == 0);
  CHECK(rep.oov_trg == 0);

  SeedLexicon with_fake = id;
  with_fake.pairs.push_back({"fabricated", "one"});
  OovReport rep2 = oov_report(with_fake, a, b);
  CHECK(rep2.total_pairs == 4);
  CHECK(rep2.usable_pairs == 3);
  CHECK(rep2.oov_src == 1);
}

TEST_CASE("oov report equals a linear-scan oracle on random lexicons") {
  std::mt19937_64 rng(17);
  std::vector<std::string> va, vb;
  for (int i = 0; i < 30; ++i) va.push_back("a" + std::to_string(i));
  for (int i = 0; i < 30; ++i) vb.push_back("b" + std::to_string(i));
  EmbeddingSpace a = space_of(va), b = space_of(vb);
  std::uniform_int_distribution<int> idx(0, 44);  // beyond vocab -> OOV
  SeedLexicon lex;
  for (int i = 0; i < 200; ++i)
    lex.pairs.push_back({"a" + std::to_string(idx(rng)), "b" + std::to_string(idx(rng))});

  OovReport rep = oov_report(lex, a, b);
  std::size_t usable = 0, oov_s = 0, oov_t = 0;
  for (const auto& p : lex.pairs) {
    bool si = std::find(va.begin(), va.end(), p.src) != va.end();
    bool ti = std::find(vb.begin(), vb.end(), p.trg) != vb.end();
    if (!si) ++oov_s;
    if (!ti) ++oov_t;
    if (si && ti) ++usable;
  }
  CHECK(rep.usable_pairs == usable);
  CHECK(rep.oov_src == oov_s);
  CHECK(rep.oov_trg == oov_t);
  // usable + pairs-with-any-OOV = total
  std::size_t any_oov = 0;
  for (const auto& p : lex.pairs) {
    bool si = std::find(va.begin(), va.end(), p.src) != va.end();
    bool ti = std::find(vb.begin(), vb.end(), p.trg) != vb.end();
    if (!si || !ti) ++any_oov;
  }
  CHECK(rep.usable_pairs + any_oov == rep.total_pairs);
}

TEST_CASE("lexicon file round trip") {
  TempDir tmp("lex-rt");
  SeedLexicon lex = lex_of({{"b", "2"}, {"a", "1"}, {"c", "3"}});
  save_lexicon(lex, tmp.file("l.tsv"));
  SeedLexicon r = load_lexicon(tmp.file("l.tsv"));
  REQUIRE(r.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.pairs[i].src == lex.pairs[i].src);
    CHECK(r.pairs[i].trg == lex.pairs[i].trg);
  }
  CHECK(r.provenance == Provenance::external);
}

TEST_CASE("lexicon loader accepts space separator and counts duplicates") {
  TempDir tmp("lex-load");
  write_file(tmp.file("l.txt"), "hello bonjour\nhello\tbonjour\nworld monde\n");
  std::size_t dups = 0;
  SeedLexicon lex = load_lexicon(tmp.file("l.txt"), &dups);
  CHECK(lex.size() == 2);
  CHECK(dups == 1);

  write_file(tmp.file("bad.txt"), "loneword\n");
  CHECK_THROWS_WITH_AS(load_lexicon(tmp.file("bad.txt")), doctest::Contains(":1:"),
                       std::runtime_error);
}
