#include <doctest.h>

#include <random>

#include "lexalign/mapping.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace testsupport;

namespace {

EmbeddingSpace space_from(const Eigen::MatrixXd& m, const std::string& prefix) {
  EmbeddingSpace s;
  s.dim = static_cast<int>(m.cols());
  s.vectors = m.cast<float>();
  for (Eigen::Index i = 0; i < m.rows(); ++i) s.words.push_back(prefix + std::to_string(i));
  return s;
}

std::vector<IdPair> identity_dict(std::size_t n) {
  std::vector<IdPair> d;
  for (std::uint32_t i = 0; i < n; ++i) d.emplace_back(i, i);
  return d;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("procrustes on identical spaces is the identity") {
  Eigen::MatrixXd x = random_unit_rows(40, 8, 1);
  Eigen::MatrixXd w = procrustes(x, x);
  CHECK(max_abs(w - Eigen::MatrixXd::Identity(8, 8)) <= 1e-6);
}

TEST_CASE("procrustes recovers a random rotation") {
  for (int d : {10, 25}) {
    Eigen::MatrixXd x = random_unit_rows(200, d, 2);
    Eigen::MatrixXd q = random_orthogonal(d, 3);
    Eigen::MatrixXd z = x * q;
    Eigen::MatrixXd w = procrustes(x, z);
    CHECK(max_abs(w - q) <= 1e-5);
    CHECK(max_abs(w.transpose() * w - Eigen::MatrixXd::Identity(d, d)) <= 1e-5);
  }
}

TEST_CASE("procrustes stays orthogonal on large noisy dictionaries") {
  Eigen::MatrixXd x = random_unit_rows(1000, 50, 4);
  Eigen::MatrixXd z = random_unit_rows(1000, 50, 5);
  Eigen::MatrixXd w = procrustes(x, z);
  CHECK(max_abs(w.transpose() * w - Eigen::MatrixXd::Identity(50, 50)) <= 1e-5);
}

TEST_CASE("procrustes flags rank deficiency but still returns an orthogonal map") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(10, 4);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(10, 4);
  for (int i = 0; i < 10; ++i) {
    x(i, 0) = 1.0;  // all mass on one axis
    z(i, 0) = 1.0;
  }
  bool deficient = false;
  Eigen::MatrixXd w = procrustes(x, z, &deficient);
  CHECK(deficient);
  CHECK(max_abs(w.transpose() * w - Eigen::MatrixXd::Identity(4, 4)) <= 1e-8);
}

TEST_CASE("procrustes validates the dictionary") {
  Eigen::MatrixXd x = random_unit_rows(5, 3, 6);
  EmbeddingSpace a = space_from(x, "a"), b = space_from(x, "b");
  CHECK_THROWS_AS(procrustes(a, b, {}), std::invalid_argument);
  CHECK_THROWS_AS(procrustes(a, b, {{0, 9}}), std::out_of_range);
  Eigen::MatrixXd w = procrustes(a, b, identity_dict(5));
  CHECK(max_abs(w - Eigen::MatrixXd::Identity(3, 3)) <= 1e-6);
}

TEST_CASE("induction with p=1 matches the dense CSLS oracle") {
  MappingConfig cfg;
  cfg.vocab_cutoff = 100;
  for (int k : {1, 5, 10}) {
    cfg.csls_k = k;
    Eigen::MatrixXd src = random_unit_rows(20, 5, 10 + k);
    Eigen::MatrixXd trg = random_unit_rows(20, 5, 20 + k);
    CslsOracle oracle(src, trg, k);

    cfg.direction = InduceDirection::forward;
    auto forward = induce_dictionary(src, trg, cfg, 1.0, 0);
    REQUIRE(forward.size() == 20);
    for (const auto& [s, t] : forward) CHECK(t == static_cast<std::uint32_t>(oracle.best_target(s)));

    cfg.direction = InduceDirection::union_both;
    auto both = induce_dictionary(src, trg, cfg, 1.0, 0);
    CslsOracle back(trg, src, k);
    std::set<IdPair> expect;
    for (Eigen::Index i = 0; i < 20; ++i)
      expect.insert({static_cast<std::uint32_t>(i),
                     static_cast<std::uint32_t>(oracle.best_target(i))});
    for (Eigen::Index j = 0; j < 20; ++j)
      expect.insert({static_cast<std::uint32_t>(back.best_target(j)),
                     static_cast<std::uint32_t>(j)});
    CHECK(std::set<IdPair>(both.begin(), both.end()) == expect);
  }
}

TEST_CASE("identical rows induce the identity dictionary") {
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
  MappingConfig cfg;
  cfg.direction = InduceDirection::forward;
  auto dict = induce_dictionary(eye, eye, cfg, 1.0, 0);
  CHECK(dict == identity_dict(3));
}

TEST_CASE("stochastic induction is reproducible and thread invariant") {
  Eigen::MatrixXd src = random_unit_rows(60, 6, 31);
  Eigen::MatrixXd trg = random_unit_rows(60, 6, 32);
  MappingConfig cfg;
  cfg.seed = 99;
  auto a = induce_dictionary(src, trg, cfg, 0.3, 4);
  auto b = induce_dictionary(src, trg, cfg, 0.3, 4);
  CHECK(a == b);
  cfg.threads = 4;
  auto c = induce_dictionary(src, trg, cfg, 0.3, 4);
  CHECK(a == c);
  // a different iteration draws different masks
  auto d = induce_dictionary(src, trg, cfg, 0.3, 5);
  CHECK(a != d);
}

TEST_CASE("whitening maps covariance to identity and dewhitening inverts it") {
  Eigen::MatrixXd rows = random_unit_rows(500, 12, 44) * 3.0;
  Eigen::MatrixXd w = whitening_transform(rows);
  Eigen::MatrixXd white = rows * w;
  Eigen::MatrixXd cov = white.transpose() * white / 500.0;
  CHECK(max_abs(cov - Eigen::MatrixXd::Identity(12, 12)) <= 1e-4);
  Eigen::MatrixXd dw = dewhitening_transform(rows);
  CHECK(max_abs(w * dw - Eigen::MatrixXd::Identity(12, 12)) <= 1e-6);
}

TEST_CASE("self-learning converges immediately on a noiseless rotation") {
  Eigen::MatrixXd x = random_unit_rows(300, 10, 50);
  Eigen::MatrixXd q = random_orthogonal(10, 51);
  EmbeddingSpace src = space_from(x, "w");
  EmbeddingSpace trg = space_from(x * q, "w");  // same word list: identity seed

  SeedLexicon seed = extract_identical(src, trg);
  REQUIRE(seed.size() == 300);

  MappingConfig cfg;
  cfg.stochastic_keep_initial = 1.0;  // deterministic mode
  cfg.vocab_cutoff = 300;
  MappingResult res = self_learn(src, trg, seed, cfg);
  CHECK(res.trace.size() <= 3);
  CHECK(res.trace[res.best_iteration].objective >= 0.999);
  CHECK(max_abs(res.w_src.transpose() * res.w_src - Eigen::MatrixXd::Identity(10, 10)) <= 1e-5);
  CHECK(max_abs(res.w_src - q) <= 1e-5);
  // with identity seed and exact rotation the first objective is already 1
  CHECK(res.trace[0].objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("self-learning recovers a noisy rotation from a small seed") {
  const int n = 400, d = 20;
  std::mt19937_64 rng(60);
  std::normal_distribution<double> noise(0.0, 0.01);
  Eigen::MatrixXd x = random_unit_rows(n, d, 61);
  Eigen::MatrixXd q = random_orthogonal(d, 62);
  Eigen::MatrixXd z = x * q;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) z(i, j) += noise(rng);
    z.row(i).normalize();
  }
  EmbeddingSpace src = space_from(x, "w");
  EmbeddingSpace trg = space_from(z, "w");

  SeedLexicon seed;
  for (int i = 0; i < 40; ++i) seed.pairs.push_back({"w" + std::to_string(i * 7), "w" + std::to_string(i * 7)});

  MappingConfig cfg;
  cfg.vocab_cutoff = n;
  cfg.seed = 7;
  cfg.direction = InduceDirection::forward;
  MappingResult res = self_learn(src, trg, seed, cfg);

  std::size_t agree = 0;
  for (const auto& [s, t] : res.induced_dict)
    if (s == t) ++agree;
  CHECK(static_cast<double>(agree) / n >= 0.95);

  // orthogonality holds for the returned transform
  CHECK(max_abs(res.w_src.transpose() * res.w_src - Eigen::MatrixXd::Identity(d, d)) <= 1e-5);
}

TEST_CASE("deterministic objective trace is non-decreasing within 1e-9") {
  Eigen::MatrixXd x = random_unit_rows(200, 8, 70);
  Eigen::MatrixXd q = random_orthogonal(8, 71);
  std::mt19937_64 rng(72);
  std::normal_distribution<double> noise(0.0, 0.05);
  Eigen::MatrixXd z = x * q;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (int j = 0; j < 8; ++j) z(i, j) += noise(rng);
    z.row(i).normalize();
  }
  EmbeddingSpace src = space_from(x, "w"), trg = space_from(z, "w");
  SeedLexicon seed;
  for (int i = 0; i < 20; ++i) seed.pairs.push_back({"w" + std::to_string(i), "w" + std::to_string(i)});
  MappingConfig cfg;
  cfg.stochastic_keep_initial = 1.0;
  cfg.vocab_cutoff = 200;
  MappingResult res = self_learn(src, trg, seed, cfg);
  for (std::size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].objective >= res.trace[i - 1].objective - 1e-9);
}

TEST_CASE("self-learning is thread-count invariant") {
  Eigen::MatrixXd x = random_unit_rows(150, 6, 80);
  Eigen::MatrixXd q = random_orthogonal(6, 81);
  EmbeddingSpace src = space_from(x, "w"), trg = space_from(x * q, "w");
  SeedLexicon seed;
  for (int i = 0; i < 10; ++i) seed.pairs.push_back({"w" + std::to_string(i), "w" + std::to_string(i)});
  MappingConfig cfg;
  cfg.vocab_cutoff = 150;
  cfg.seed = 5;

  MappingResult one = self_learn(src, trg, seed, cfg);
  cfg.threads = 8;
  MappingResult eight = self_learn(src, trg, seed, cfg);
  REQUIRE(one.trace.size() == eight.trace.size());
  for (std::size_t i = 0; i < one.trace.size(); ++i) {
    CHECK(one.trace[i].objective == eight.trace[i].objective);  // bitwise
    CHECK(one.trace[i].dict_size == eight.trace[i].dict_size);
  }
  CHECK(one.induced_dict == eight.induced_dict);
  CHECK(max_abs(one.w_src - eight.w_src) == 0.0);
}

TEST_CASE("mapping invariance under a common rotation of both spaces") {
  Eigen::MatrixXd x = random_unit_rows(120, 7, 90);
  Eigen::MatrixXd q = random_orthogonal(7, 91);
  Eigen::MatrixXd r = random_orthogonal(7, 92);
  EmbeddingSpace src = space_from(x, "w"), trg = space_from(x * q, "w");
  EmbeddingSpace src_r = space_from(x * r, "w"), trg_r = space_from(x * q * r, "w");
  SeedLexicon seed;
  for (int i = 0; i < 15; ++i) seed.pairs.push_back({"w" + std::to_string(i), "w" + std::to_string(i)});
  MappingConfig cfg;
  cfg.stochastic_keep_initial = 1.0;
  cfg.vocab_cutoff = 120;
  MappingResult plain = self_learn(src, trg, seed, cfg);
  MappingResult rotated = self_learn(src_r, trg_r, seed, cfg);
  CHECK(plain.induced_dict == rotated.induced_dict);
}

TEST_CASE("self-learning reports unusable seeds via the oov report") {
  EmbeddingSpace src = space_from(random_unit_rows(10, 4, 95), "s");
  EmbeddingSpace trg = space_from(random_unit_rows(10, 4, 96), "t");
  SeedLexicon seed;
  seed.pairs.push_back({"absent", "missing"});
  CHECK_THROWS_WITH_AS(self_learn(src, trg, seed, MappingConfig{}),
                       doctest::Contains("OOV"), std::runtime_error);
}

TEST_CASE("advanced transform also aligns a rotation") {
  Eigen::MatrixXd x = random_unit_rows(300, 10, 97);
  Eigen::MatrixXd q = random_orthogonal(10, 98);
  EmbeddingSpace src = space_from(x, "w"), trg = space_from(x * q, "w");
  SeedLexicon seed;
  for (int i = 0; i < 50; ++i) seed.pairs.push_back({"w" + std::to_string(i), "w" + std::to_string(i)});
  MappingConfig cfg;
  cfg.advanced_transform = true;
  cfg.stochastic_keep_initial = 1.0;
  cfg.vocab_cutoff = 300;
  cfg.direction = InduceDirection::forward;
  MappingResult res = self_learn(src, trg, seed, cfg);
  std::size_t agree = 0;
  for (const auto& [s, t] : res.induced_dict)
    if (s == t) ++agree;
  CHECK(static_cast<double>(agree) / 300.0 >= 0.95);
}

TEST_CASE("apply_mapping transforms vectors and keeps the vocabulary") {
  Eigen::MatrixXd x = random_unit_rows(5, 3, 99);
  EmbeddingSpace s = space_from(x, "w");
  Eigen::MatrixXd q = random_orthogonal(3, 100);
  EmbeddingSpace mapped = apply_mapping(s, q);
  CHECK(mapped.words == s.words);
  Eigen::MatrixXd expect = x * q;
  CHECK((mapped.vectors.cast<double>() - expect).cwiseAbs().maxCoeff() <= 1e-6);
}
