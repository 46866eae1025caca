#include <doctest.h>

#include <random>
#include <set>

#include "lexalign/romanizer.hpp"
#include "lexalign/unicode.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

TEST_CASE("table loading and validation") {
  TempDir tmp("rom-load");
  write_file(tmp.file("t.tsv"),
             "# scripts: Cyrillic\n"
             "к\tk\n"
             "ж\tzh\n");
  RomanizationTable t = load_table(tmp.file("t.tsv"));
  CHECK(t.size() == 2);
  REQUIRE(t.scripts().size() == 1);
  CHECK(t.scripts()[0] == "Cyrillic");

  write_file(tmp.file("dup.tsv"), "к\tk\nк\tc\n");
  CHECK_THROWS_WITH_AS(load_table(tmp.file("dup.tsv")), doctest::Contains("duplicate"),
                       std::runtime_error);

  write_file(tmp.file("upper.tsv"), "к\tK\n");
  CHECK_THROWS_AS(load_table(tmp.file("upper.tsv")), std::runtime_error);

  write_file(tmp.file("nonascii.tsv"), "к\té\n");
  CHECK_THROWS_AS(load_table(tmp.file("nonascii.tsv")), std::runtime_error);

  write_file(tmp.file("longkey.tsv"), "abcde\tx\n");
  CHECK_THROWS_AS(load_table(tmp.file("longkey.tsv")), std::runtime_error);

  write_file(tmp.file("empty-repl.tsv"), "ъ\t∅\n");
  RomanizationTable drop = load_table(tmp.file("empty-repl.tsv"));
  CHECK(romanize("ъ", drop).text.empty());
}

TEST_CASE("latin passthrough") {
  TempDir tmp("rom-latin");
  write_file(tmp.file("t.tsv"), "к\tk\n");
  RomanizationTable t = load_table(tmp.file("t.tsv"));
  RomanizeResult r = romanize("carl", t);
  CHECK(r.text == "carl");
  CHECK(r.uncovered == 0);
  RomanizeResult digits = romanize("ab12", t);
  CHECK(digits.text == "ab12");
  CHECK(digits.uncovered == 0);
}

TEST_CASE("bundled goldens") {
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  CHECK(romanize("карл", cyr).text == "carl");  // карл
  RomanizationTable grk = load_table(table_path("greek"));
  CHECK(romanize("βαβυλών", grk).text == "babylon");  // βαβυλών
}

TEST_CASE("bundled Cyrillic table covers U+0410..U+044F") {
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  for (char32_t cp = 0x0410; cp <= 0x044F; ++cp) {
    std::string word = encode_utf8(std::u32string(1, cp));
    RomanizeResult r = romanize(word, cyr);
    INFO("codepoint U+", std::hex, static_cast<unsigned>(cp));
    CHECK(r.uncovered == 0);
  }
}

TEST_CASE("case folding and mark dropping happen before lookup") {
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  CHECK(romanize("КАРЛ", cyr).text == "carl");          // КАРЛ
  CHECK(romanize("толстой", cyr).text == "tolstoy");  // й via NFD key
  RomanizationTable none = RomanizationTable();
  CHECK(romanize("café", none).text == "cafe");  // é -> e + dropped mark
}

TEST_CASE("uncovered counter equals an independent scan") {
  // words over a controlled alphabet: covered Cyrillic letters plus
  // characters known to have no entry
  RomanizationTable cyr = load_table(table_path("cyrillic"));
  const std::u32string covered = U"абвгдеко";
  const std::u32string uncovered = U"中¿;";
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> len(1, 10);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int w = 0; w < 1000; ++w) {
    std::u32string word;
    std::size_t expect = 0;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int p = pick(rng);
      if (p < 7) {
        word.push_back(covered[p % covered.size()]);
      } else {
        word.push_back(uncovered[p % uncovered.size()]);
        ++expect;
      }
    }
    RomanizeResult r = romanize(encode_utf8(word), cyr);
    CHECK(r.uncovered == expect);
  }
}

TEST_CASE("idempotence on fully romanized outputs") {
  RomanizationTable t = load_tables({table_path("cyrillic"), table_path("greek"),
                                     table_path("hangul"), table_path("thai"),
                                     table_path("latin")});
  std::vector<std::string> words = {
      "москва", "Αθήνα",
      "서울", "ไทย", "straße", "carl'"};
  for (const auto& w : words) {
    std::string once = romanize(w, t).text;
    CHECK(romanize(once, t).text == once);
  }
}

TEST_CASE("monotone coverage: adding entries never changes covered words") {
  TempDir tmp("rom-mono");
  write_file(tmp.file("small.tsv"), "а\ta\nб\tb\n");
  write_file(tmp.file("big.tsv"), "а\ta\nб\tb\nв\tv\n");
  RomanizationTable small = load_table(tmp.file("small.tsv"));
  RomanizationTable big = load_table(tmp.file("big.tsv"));
  std::vector<std::string> covered_words = {"аб", "бба", "ab"};
  for (const auto& w : covered_words) {
    REQUIRE(romanize(w, small).uncovered == 0);
    CHECK(romanize(w, big).text == romanize(w, small).text);
  }
}

TEST_CASE("greedy longest match prefers longer keys") {
  TempDir tmp("rom-greedy");
  write_file(tmp.file("t.tsv"), "ш\tsh\nшч\tshch\n");
  RomanizationTable t = load_table(tmp.file("t.tsv"));
  CHECK(romanize("шч", t).text == "shch");
  RomanizeResult r = romanize("ш", t);
  CHECK(r.text == "sh");
}

TEST_CASE("han passes through uncovered") {
  RomanizationTable t = load_tables({table_path("katakana"), table_path("hiragana")});
  RomanizeResult r = romanize("中国", t);
  CHECK(r.uncovered == 2);
  RomanizeResult mixed = romanize("カール", t);  // カール
  CHECK(mixed.text == "karu");
  CHECK(mixed.uncovered == 0);
}

TEST_CASE("merging tables rejects duplicate keys across files") {
  TempDir tmp("rom-merge");
  write_file(tmp.file("a.tsv"), "а\ta\n");
  write_file(tmp.file("b.tsv"), "а\tx\n");
  CHECK_THROWS_WITH_AS(load_tables({tmp.file("a.tsv"), tmp.file("b.tsv")}),
                       doctest::Contains("duplicate"), std::runtime_error);
}
