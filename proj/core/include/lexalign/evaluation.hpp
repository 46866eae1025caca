#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "lexalign/embeddings.hpp"
#include "lexalign/lexicon.hpp"

namespace lexalign {

// CSLS(x, y_j) = 2 cos(x, y_j) - r_src - r_trg[j]; inputs must be
// row-normalized so dot products are cosines.
Eigen::VectorXd csls_score(const Eigen::VectorXd& query, const Eigen::MatrixXd& targets,
                           double r_src, const Eigen::VectorXd& r_trg_vec);

// Mean cosine of each row of `rows` to its k nearest rows of `other`
// (the CSLS neighborhood penalty). Deterministic for any thread count.
Eigen::VectorXd knn_mean_similarity(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& other,
                                    int k, int threads = 1);

struct EvalQuery {
  std::string src;
  std::string predicted;
  std::vector<std::string> gold;  // in-vocabulary gold targets
  bool hit = false;
};

struct EvalReport {
  double acc_at_1 = 0.0;  // fraction in [0, 1]
  std::size_t hits = 0;
  std::size_t evaluated_queries = 0;
  std::size_t skipped_oov = 0;
  std::vector<EvalQuery> per_query;  // ordered by query word

  // "48.87"-style percentage with two decimals.
  std::string acc_percent() const;
};

struct EvalConfig {
  int csls_k = 10;
  int threads = 1;
  bool count_skipped_as_errors = false;
  bool keep_per_query = true;
};

// Bilingual dictionary induction accuracy: gold pairs grouped by source
// word, a query counts as a hit iff the CSLS top-1 target is in its gold
// set. Queries with an OOV source or no in-vocabulary gold are skipped and
// counted (or counted as errors when configured). Identical pairs are kept.
EvalReport evaluate_bdi(const EmbeddingSpace& mapped_src, const EmbeddingSpace& mapped_trg,
                        const SeedLexicon& test_lex, const EvalConfig& config);

void save_eval_report(const EvalReport& report, const std::string& path, bool per_query);

}  // namespace lexalign
