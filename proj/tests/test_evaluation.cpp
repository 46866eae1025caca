#include <doctest.h>

#include <random>

#include "lexalign/evaluation.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

namespace {

EmbeddingSpace space_from(const Eigen::MatrixXd& m, const std::vector<std::string>& words) {
  EmbeddingSpace s;
  s.dim = static_cast<int>(m.cols());
  s.vectors = m.cast<float>();
  s.words = words;
  return s;
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

SeedLexicon lex_of(std::vector<std::pair<std::string, std::string>> pairs) {
  SeedLexicon lex;
  for (auto& [s, t] : pairs) lex.pairs.push_back({s, t});
  return lex;
}

}  // namespace

TEST_CASE("csls score with zero penalties reduces to cosine") {
  Eigen::MatrixXd trg = random_unit_rows(10, 4, 1);
  Eigen::VectorXd q = trg.row(3).transpose();
  Eigen::VectorXd scores = csls_score(q, trg, 0.0, Eigen::VectorXd::Zero(10));
  Eigen::Index best;
  scores.maxCoeff(&best);
  CHECK(best == 3);
}

TEST_CASE("csls scores equal the dense oracle") {
  for (int k : {1, 5, 10}) {
    Eigen::MatrixXd src = random_unit_rows(20, 6, 10 + k);
    Eigen::MatrixXd trg = random_unit_rows(20, 6, 30 + k);
    CslsOracle oracle(src, trg, k);
    Eigen::VectorXd r_trg = knn_mean_similarity(trg, src, k);
    for (Eigen::Index j = 0; j < 20; ++j) CHECK(r_trg(j) == doctest::Approx(oracle.r_trg(j)).epsilon(1e-12));
    Eigen::VectorXd r_src = knn_mean_similarity(src, trg, k);
    for (Eigen::Index i = 0; i < 20; ++i) {
      CHECK(r_src(i) == doctest::Approx(oracle.r_src(i)).epsilon(1e-12));
      Eigen::VectorXd scores = csls_score(src.row(i).transpose(), trg, r_src(i), r_trg);
      for (Eigen::Index j = 0; j < 20; ++j)
        CHECK(scores(j) == doctest::Approx(oracle.score(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("csls argmax is invariant under constant penalty shifts") {
  Eigen::MatrixXd src = random_unit_rows(15, 5, 3);
  Eigen::MatrixXd trg = random_unit_rows(15, 5, 4);
  Eigen::VectorXd r_trg = knn_mean_similarity(trg, src, 5);
  Eigen::VectorXd q = src.row(0).transpose();
  Eigen::VectorXd s1 = csls_score(q, trg, 0.2, r_trg);
  Eigen::VectorXd s2 = csls_score(q, trg, 0.2, r_trg.array() + 0.37);
  Eigen::Index b1, b2;
  s1.maxCoeff(&b1);
  s2.maxCoeff(&b2);
  CHECK(b1 == b2);
}

TEST_CASE("csls penalizes hub targets") {
  // hub: moderately close to every source direction; specific: very close to
  // one query only. Cosine picks the hub, CSLS picks the specific target.
  const int d = 4;
  Eigen::MatrixXd src(3, d);
  src << 1, 0, 0, 0,
         0, 1, 0, 0,
         0, 0, 1, 0;
  Eigen::VectorXd hub(d), specific(d);
  double c = 1.0 / std::sqrt(3.0);
  hub << c, c, c, 0;               // cos 0.577 with every source
  specific << 0.55, 0.0, 0.0, std::sqrt(1.0 - 0.55 * 0.55);  // cos 0.55 with query 0 only
  Eigen::MatrixXd trg(2, d);
  trg.row(0) = hub.transpose();
  trg.row(1) = specific.transpose();

  CslsOracle oracle(src, trg, 2);
  // plain cosine prefers the hub for query 0
  CHECK(oracle.cos(0, 0) > oracle.cos(0, 1));
  // CSLS flips the decision
  CHECK(oracle.score(0, 1) > oracle.score(0, 0));

  Eigen::VectorXd r_trg = knn_mean_similarity(trg, src, 2);
  Eigen::VectorXd scores = csls_score(src.row(0).transpose(), trg,
                                      knn_mean_similarity(src, trg, 2)(0), r_trg);
  CHECK(scores(1) > scores(0));
}

TEST_CASE("self retrieval scores 100 percent") {
  Eigen::MatrixXd m = random_unit_rows(12, 5, 7);
  auto words = numbered("w", 12);
  EmbeddingSpace src = space_from(m, words);
  EmbeddingSpace trg = space_from(m, words);
  SeedLexicon test;
  for (const auto& w : words) test.pairs.push_back({w, w});
  EvalConfig cfg;
  EvalReport rep = evaluate_bdi(src, trg, test, cfg);
  CHECK(rep.acc_at_1 == doctest::Approx(1.0));
  CHECK(rep.acc_percent() == "100.00");
  CHECK(rep.evaluated_queries == 12);
  CHECK(rep.skipped_oov == 0);
}

TEST_CASE("oov queries are skipped and counted; all-oov is an error") {
  Eigen::MatrixXd m = random_unit_rows(5, 4, 8);
  EmbeddingSpace src = space_from(m, numbered("s", 5));
  EmbeddingSpace trg = space_from(m, numbered("t", 5));
  SeedLexicon test = lex_of({{"s0", "t0"}, {"missing", "t1"}, {"s1", "absent"}});
  EvalConfig cfg;
  EvalReport rep = evaluate_bdi(src, trg, test, cfg);
  CHECK(rep.evaluated_queries == 1);
  CHECK(rep.skipped_oov == 2);

  SeedLexicon all_oov = lex_of({{"nope", "t0"}});
  CHECK_THROWS_WITH_AS(evaluate_bdi(src, trg, all_oov, cfg), doctest::Contains("no evaluable"),
                       std::runtime_error);
  CHECK_THROWS_AS(evaluate_bdi(src, trg, SeedLexicon{}, cfg), std::invalid_argument);
}

TEST_CASE("adding an unreachable gold target changes nothing") {
  Eigen::MatrixXd m = random_unit_rows(8, 4, 9);
  EmbeddingSpace src = space_from(m, numbered("s", 8));
  EmbeddingSpace trg = space_from(m, numbered("t", 8));
  SeedLexicon base = lex_of({{"s0", "t0"}, {"s1", "t1"}, {"s2", "t5"}});
  SeedLexicon extended = base;
  extended.pairs.push_back({"s2", "oov-target"});
  EvalConfig cfg;
  EvalReport a = evaluate_bdi(src, trg, base, cfg);
  EvalReport b = evaluate_bdi(src, trg, extended, cfg);
  CHECK(a.acc_at_1 == b.acc_at_1);
  CHECK(a.hits == b.hits);
  CHECK(a.evaluated_queries == b.evaluated_queries);
}

TEST_CASE("accuracy is invariant under test-lexicon permutation") {
  std::mt19937_64 rng(10);
  Eigen::MatrixXd ms = random_unit_rows(30, 6, 11);
  Eigen::MatrixXd mt = random_unit_rows(30, 6, 12);
  EmbeddingSpace src = space_from(ms, numbered("s", 30));
  EmbeddingSpace trg = space_from(mt, numbered("t", 30));
  SeedLexicon test;
  std::uniform_int_distribution<int> pick(0, 29);
  for (int i = 0; i < 40; ++i)
    test.pairs.push_back({"s" + std::to_string(pick(rng)), "t" + std::to_string(pick(rng))});
  EvalConfig cfg;
  EvalReport a = evaluate_bdi(src, trg, test, cfg);

  SeedLexicon shuffled = test;
  std::shuffle(shuffled.pairs.begin(), shuffled.pairs.end(), rng);
  EvalReport b = evaluate_bdi(src, trg, shuffled, cfg);
  CHECK(a.acc_at_1 == b.acc_at_1);
  CHECK(a.hits == b.hits);
  REQUIRE(a.per_query.size() == b.per_query.size());
  for (std::size_t i = 0; i < a.per_query.size(); ++i) {
    CHECK(a.per_query[i].src == b.per_query[i].src);  // ordered by query word
    CHECK(a.per_query[i].predicted == b.per_query[i].predicted);
  }
}

TEST_CASE("multiple gold translations all count as hits") {
  Eigen::MatrixXd m = random_unit_rows(6, 4, 13);
  EmbeddingSpace src = space_from(m, numbered("s", 6));
  EmbeddingSpace trg = space_from(m, numbered("t", 6));
  // self-similar spaces: s_i retrieves t_i; gold lists both t_i and a decoy
  SeedLexicon test = lex_of({{"s0", "t5"}, {"s0", "t0"}});
  EvalConfig cfg;
  EvalReport rep = evaluate_bdi(src, trg, test, cfg);
  CHECK(rep.evaluated_queries == 1);
  CHECK(rep.hits == 1);
}

TEST_CASE("count-skipped-as-errors folds oov queries into the denominator") {
  Eigen::MatrixXd m = random_unit_rows(4, 4, 14);
  EmbeddingSpace src = space_from(m, numbered("s", 4));
  EmbeddingSpace trg = space_from(m, numbered("t", 4));
  SeedLexicon test = lex_of({{"s0", "t0"}, {"gone", "t1"}});
  EvalConfig cfg;
  cfg.count_skipped_as_errors = true;
  EvalReport rep = evaluate_bdi(src, trg, test, cfg);
  CHECK(rep.evaluated_queries == 2);
  CHECK(rep.acc_at_1 == doctest::Approx(0.5));
}

TEST_CASE("evaluation report is deterministic and savable") {
  TempDir tmp("eval-det");
  Eigen::MatrixXd ms = random_unit_rows(20, 5, 15);
  Eigen::MatrixXd mt = random_unit_rows(20, 5, 16);
  EmbeddingSpace src = space_from(ms, numbered("s", 20));
  EmbeddingSpace trg = space_from(mt, numbered("t", 20));
  SeedLexicon test;
  for (int i = 0; i < 20; ++i) test.pairs.push_back({"s" + std::to_string(i), "t" + std::to_string(i)});
  EvalConfig cfg;
  EvalReport rep = evaluate_bdi(src, trg, test, cfg);
  save_eval_report(rep, tmp.file("a.tsv"), true);
  save_eval_report(evaluate_bdi(src, trg, test, cfg), tmp.file("b.tsv"), true);
  CHECK(read_file(tmp.file("a.tsv")) == read_file(tmp.file("b.tsv")));

  cfg.threads = 4;
  save_eval_report(evaluate_bdi(src, trg, test, cfg), tmp.file("c.tsv"), true);
  CHECK(read_file(tmp.file("a.tsv")) == read_file(tmp.file("c.tsv")));
}
