#include <doctest.h>

#include <map>
#include <sstream>

#include "lexalign/candidates.hpp"
#include "lexalign/unicode.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

namespace {

CandidateList heuristic_of(const std::string& text, HeuristicConfig cfg = {}) {
  std::istringstream in(text);
  return heuristic_candidates(in, cfg);
}

// Independent recount of the qualification rule: two explicit passes over a
// pre-tokenized corpus.
std::vector<std::string> recount_oracle(const std::string& text, const HeuristicConfig& cfg) {
  struct Tok {
    std::string raw;
    bool sentence_initial;
  };
  std::vector<Tok> toks;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string t;
    bool initial = true;
    while (ls >> t) {
      toks.push_back({t, initial});
      char last = t.back();
      initial = last == '.' || last == '!' || last == '?';
    }
  }
  struct Counts {
    std::size_t total = 0, mid = 0, mid_cap = 0, order = 0;
  };
  std::map<std::string, Counts> counts;
  std::size_t order = 0;
  for (const auto& tok : toks) {
    std::u32string cps = decode_utf8(tok.raw);
    std::string key = encode_utf8(to_lower(cps));
    if (!counts.count(key)) counts[key].order = order++;
    auto& c = counts[key];
    ++c.total;
    if (!tok.sentence_initial) {
      ++c.mid;
      if (to_lower(cps[0]) != cps[0]) ++c.mid_cap;
    }
  }
  std::vector<std::pair<std::string, Counts>> q;
  for (const auto& [key, c] : counts) {
    std::u32string cps = decode_utf8(key);
    bool alpha = !cps.empty();
    for (char32_t cp : cps) alpha = alpha && is_alphabetic(cp);
    if (!alpha || cps.size() < cfg.min_length) continue;
    if (c.total < cfg.min_count) continue;
    if (c.mid_cap == 0) continue;
    if (static_cast<double>(c.mid_cap) < cfg.capitalized_ratio * static_cast<double>(c.mid))
      continue;
    q.emplace_back(key, c);
  }
  std::sort(q.begin(), q.end(), [](const auto& a, const auto& b) {
    if (a.second.total != b.second.total) return a.second.total > b.second.total;
    return a.second.order < b.second.order;
  });
  std::vector<std::string> out;
  for (const auto& [key, c] : q) out.push_back(key);
  return out;
}

}  // namespace

TEST_CASE("candidate files are lowercased and deduplicated in order") {
  TempDir tmp("cand-load");
  write_file(tmp.file("c.txt"), "Paris\nparis\nTokyo\n");
  CandidateList list = load_candidates(tmp.file("c.txt"));
  CHECK(list.words == std::vector<std::string>{"paris", "tokyo"});
  CHECK(list.source == CandidateSource::external_file);
  auto ranked = list.ranked();
  CHECK(ranked[1] == std::pair<std::string, std::size_t>{"tokyo", 1});

  write_file(tmp.file("bad.txt"), "ok\ntwo words\n");
  CHECK_THROWS_WITH_AS(load_candidates(tmp.file("bad.txt")), doctest::Contains(":2:"),
                       std::runtime_error);

  write_file(tmp.file("empty.txt"), "\n\n");
  CHECK_THROWS_AS(load_candidates(tmp.file("empty.txt")), std::runtime_error);
}

TEST_CASE("the documented corpus example yields exactly [paris]") {
  CandidateList list = heuristic_of("the city of Paris . Paris is large");
  CHECK(list.words == std::vector<std::string>{"paris"});
  CHECK(list.source == CandidateSource::heuristic);
}

TEST_CASE("lowercase-only and sentence-initial-only corpora yield nothing") {
  CHECK(heuristic_of("nothing here is capitalized at all").words.empty());
  CHECK(heuristic_of("A a a a").words.empty());
  std::istringstream empty("");
  bool warn = false;
  CandidateList list = heuristic_candidates(empty, {}, &warn);
  CHECK(list.words.empty());
  CHECK(warn);
}

TEST_CASE("candidates require mostly-capitalized mid-sentence use") {
  // "Berlin" is always capitalized mid-sentence; "apple" appears capitalized
  // once out of three mid-sentence occurrences and is rejected
  std::string corpus =
      "we visited Berlin in winter\n"
      "later Berlin froze\n"
      "an Apple fell\n"
      "an apple rotted\n"
      "an apple grew\n";
  CandidateList list = heuristic_of(corpus);
  CHECK(list.words == std::vector<std::string>{"berlin"});
}

TEST_CASE("non-alphabetic and short tokens never qualify") {
  CandidateList list = heuristic_of("the B2 robot saw B2 again ; I saw I too");
  CHECK(list.words.empty());
}

TEST_CASE("output is ordered by descending frequency") {
  std::string corpus =
      "we saw Rome and Berlin and Rome\n"
      "then Rome called Berlin\n";
  CandidateList list = heuristic_of(corpus);
  REQUIRE(list.words.size() == 2);
  CHECK(list.words[0] == "rome");    // 3 occurrences
  CHECK(list.words[1] == "berlin");  // 2 occurrences
}

TEST_CASE("heuristic matches the recount oracle on a mixed corpus") {
  std::string corpus =
      "yesterday Alice met Bob . Bob waved\n"
      "Alice and alice disagree about Carol\n"
      "the END . maybe Dave ! Dave again ? Dave xyz\n"
      "weird B2 tokens and 123 numbers stay out\n"
      "Zoë likes Zoë\n";
  HeuristicConfig cfg;
  CandidateList list = heuristic_of(corpus, cfg);
  CHECK(list.words == recount_oracle(corpus, cfg));
  CHECK(!list.words.empty());
}

TEST_CASE("duplicating the corpus preserves the candidate list") {
  // exclusions in this fixture are ratio- or alphabet-based, so doubling all
  // counts cannot flip any decision
  std::string corpus =
      "we saw Paris and Paris again\n"
      "the apple and an Apple and the apple\n"
      "B2 B2 B2\n";
  CandidateList once = heuristic_of(corpus);
  CandidateList twice = heuristic_of(corpus + corpus);
  CHECK(once.words == twice.words);
  CHECK(once.words == std::vector<std::string>{"paris"});
}

TEST_CASE("every candidate occurred capitalized mid-sentence at least once") {
  // "Aaa" is capitalized only at line starts and right after '.', so it
  // never counts as mid-sentence capitalized and must not qualify
  std::string corpus =
      "Aaa starts the line\n"
      "but aaa holds mid position . Aaa leads again\n"
      "and aaa ends it\n";
  CandidateList list = heuristic_of(corpus);
  CHECK(list.words.empty());
  CHECK(list.words == recount_oracle(corpus, {}));
}

TEST_CASE("candidate list round trips through save") {
  TempDir tmp("cand-rt");
  CandidateList list = heuristic_of("we saw Rome and Rome\n");
  save_candidates(list, tmp.file("c.txt"));
  CandidateList r = load_candidates(tmp.file("c.txt"));
  CHECK(r.words == list.words);
}
