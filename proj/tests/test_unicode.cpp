#include <doctest.h>

#include "lexalign/unicode.hpp"

using namespace lexalign;

TEST_CASE("utf8 round trip") {
  std::string s = "aéж中\U0001F600";
  CHECK(encode_utf8(decode_utf8(s)) == s);
  CHECK(codepoint_length(s) == 5);
}

TEST_CASE("invalid utf8 decodes to replacement characters") {
  std::string bad = "a\xC3(";  // truncated two-byte sequence
  std::u32string cps = decode_utf8(bad);
  REQUIRE(cps.size() == 3);
  CHECK(cps[0] == U'a');
  CHECK(cps[1] == 0xFFFD);
  CHECK(cps[2] == U'(');

  CHECK(decode_utf8("\xFF")[0] == 0xFFFD);
  // overlong encoding of '/'
  CHECK(decode_utf8("\xC0\xAF")[0] == 0xFFFD);
}

TEST_CASE("simple lowercase mapping") {
  CHECK(to_lower(U'A') == U'a');
  CHECK(to_lower(U'Α') == U'α');  // Greek Alpha
  CHECK(to_lower(U'А') == U'а');  // Cyrillic A
  CHECK(to_lower(U'a') == U'a');
  CHECK(to_lower(U'中') == U'中');  // Han: no case
}

TEST_CASE("canonical decomposition") {
  std::u32string out;
  canonical_decompose(U'é', out);  // e acute
  REQUIRE(out == std::u32string{U'e', U'́'});

  out.clear();
  canonical_decompose(U'й', out);  // Cyrillic short i = i + breve
  REQUIRE(out == std::u32string{U'и', U'̆'});

  out.clear();
  canonical_decompose(U'한', out);  // Hangul syllable HAN
  REQUIRE(out == std::u32string{U'ᄒ', U'ᅡ', U'ᆫ'});

  out.clear();
  canonical_decompose(U'x', out);
  REQUIRE(out == std::u32string{U'x'});
}

TEST_CASE("combining mark and alphabetic predicates") {
  CHECK(is_combining_mark(U'́'));
  CHECK(is_combining_mark(U'ְ'));  // Hebrew point
  CHECK_FALSE(is_combining_mark(U'a'));
  CHECK(is_alphabetic(U'a'));
  CHECK(is_alphabetic(U'я'));
  CHECK(is_alphabetic(U'中'));
  CHECK_FALSE(is_alphabetic(U'3'));
  CHECK_FALSE(is_alphabetic(U'.'));
}
