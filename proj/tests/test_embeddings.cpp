#include <doctest.h>

#include <random>
#include <sstream>

#include "lexalign/embeddings.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

TEST_CASE("load truncates to max_vocab in file order") {
  TempDir tmp("emb-load");
  write_file(tmp.file("v.vec"),
             "3 4\n"
             "alpha 1 0 0 0\n"
             "beta 0 1 0 0\n"
             "gamma 0 0 1 0\n");
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 2, "en");
  CHECK(s.size() == 2);
  CHECK(s.dim == 4);
  CHECK(s.words == std::vector<std::string>{"alpha", "beta"});
  CHECK(s.lang == "en");
  CHECK(s.rank_of("beta") == 1);
  CHECK(s.rank_of("gamma") == EmbeddingSpace::npos);
}

TEST_CASE("duplicate words after the first are skipped and counted") {
  TempDir tmp("emb-dup");
  write_file(tmp.file("v.vec"),
             "3 2\n"
             "w 1 0\n"
             "w 0 1\n"
             "x 2 2\n");
  LoadStats stats;
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10, "", &stats);
  CHECK(s.words == std::vector<std::string>{"w", "x"});
  CHECK(stats.duplicates_skipped == 1);
  CHECK(s.vectors(0, 0) == doctest::Approx(1.0f));  // first occurrence kept
}

TEST_CASE("zero-norm rows are rejected and counted") {
  TempDir tmp("emb-zero");
  write_file(tmp.file("v.vec"),
             "3 2\n"
             "a 1 0\n"
             "z 0 0\n"
             "b 0 1\n");
  LoadStats stats;
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10, "", &stats);
  CHECK(s.words == std::vector<std::string>{"a", "b"});
  CHECK(stats.zero_rows_rejected == 1);
}

TEST_CASE("parse errors name the offending line") {
  TempDir tmp("emb-err");
  write_file(tmp.file("h.vec"), "nonsense header\n");
  CHECK_THROWS_WITH_AS(load_embeddings(tmp.file("h.vec"), 1),
                       doctest::Contains(":1:"), std::runtime_error);

  write_file(tmp.file("a.vec"), "2 3\nok 1 2 3\nshort 1 2\n");
  CHECK_THROWS_WITH_AS(load_embeddings(tmp.file("a.vec"), 10),
                       doctest::Contains(":3:"), std::runtime_error);

  CHECK_THROWS_AS(load_embeddings(tmp.file("missing.vec"), 1), std::runtime_error);
}

TEST_CASE("paper-scale truncation keeps exactly 200000 words") {
  TempDir tmp("emb-200k");
  std::ostringstream body;
  const std::size_t total = 200001;
  body << total << " 2\n";
  for (std::size_t i = 0; i < total; ++i) body << 'w' << i << " 1 " << (i % 7) << '\n';
  write_file(tmp.file("big.vec"), body.str());
  EmbeddingSpace s = load_embeddings(tmp.file("big.vec"), 200000);
  CHECK(s.size() == 200000);
  CHECK(s.words.front() == "w0");
  CHECK(s.words.back() == "w199999");
}

TEST_CASE("normalize: unit on unit rows is identity") {
  TempDir tmp("emb-unit");
  write_file(tmp.file("v.vec"), "2 2\na 1 0\nb 0 1\n");
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10);
  EmbeddingSpace n = normalize(s, NormalizationPlan::parse("unit"));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(n.vectors(i, j) - s.vectors(i, j)) <= 1e-12);
}

TEST_CASE("normalize: center subtracts the column mean") {
  TempDir tmp("emb-center");
  write_file(tmp.file("v.vec"), "2 2\na 1 0.5\nb 3 0.5\n");
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10);
  EmbeddingSpace n = normalize(s, NormalizationPlan::parse("center"));
  CHECK(n.vectors(0, 0) == doctest::Approx(-1.0));
  CHECK(n.vectors(1, 0) == doctest::Approx(1.0));
  CHECK(n.vectors(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("standard plan yields unit rows and is stable under re-unit") {
  TempDir tmp("emb-plan");
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 2.0);
  std::vector<std::string> words;
  Eigen::MatrixXd m(50, 10);
  for (int i = 0; i < 50; ++i) {
    words.push_back("w" + std::to_string(i));
    for (int j = 0; j < 10; ++j) m(i, j) = gauss(rng);
  }
  write_embeddings_file(tmp.file("v.vec"), words, m);
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 100);
  EmbeddingSpace n = normalize(s, NormalizationPlan::standard());
  for (int i = 0; i < 50; ++i) {
    double norm = n.vectors.row(i).cast<double>().norm();
    CHECK(std::abs(norm - 1.0) <= 1e-9);
  }
  EmbeddingSpace again = normalize(n, NormalizationPlan::parse("unit"));
  CHECK((again.vectors - n.vectors).cwiseAbs().maxCoeff() <= 1e-6f);
  CHECK(n.words == s.words);  // vocabulary order untouched
}

TEST_CASE("normalize input is not mutated and empty plan rejected") {
  TempDir tmp("emb-mut");
  write_file(tmp.file("v.vec"), "1 2\na 3 4\n");
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10);
  normalize(s, NormalizationPlan::standard());
  CHECK(s.vectors(0, 0) == doctest::Approx(3.0f));
  CHECK_THROWS_AS(NormalizationPlan::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(normalize(s, NormalizationPlan{}), std::invalid_argument);
}

TEST_CASE("centered-away rows error during unit step") {
  TempDir tmp("emb-zero-unit");
  write_file(tmp.file("v.vec"), "2 2\nsame 1 1\nsame2 1 1\n");
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10);
  CHECK_THROWS_WITH_AS(normalize(s, NormalizationPlan::parse("center,unit")),
                       doctest::Contains("same"), std::runtime_error);
}

TEST_CASE("save/load round trip preserves order and values") {
  TempDir tmp("emb-rt");
  write_file(tmp.file("v.vec"), "3 2\nb 1 2\na 3 4\nc -1 0.25\n");
  EmbeddingSpace s = load_embeddings(tmp.file("v.vec"), 10);
  save_embeddings(s, tmp.file("out.vec"));
  EmbeddingSpace r = load_embeddings(tmp.file("out.vec"), 10);
  CHECK(r.words == s.words);
  CHECK((r.vectors - s.vectors).cwiseAbs().maxCoeff() <= 1e-5f);
  CHECK(load_vocab(tmp.file("out.vec"), 10) == s.words);
}
