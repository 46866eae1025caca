#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

#include "lexalign/embeddings.hpp"
#include "lexalign/lexicon.hpp"

namespace lexalign {

using IdPair = std::pair<std::uint32_t, std::uint32_t>;

enum class InduceDirection { forward, backward, union_both };

struct MappingConfig {
  int csls_k = 10;
  std::size_t vocab_cutoff = 20000;
  double convergence_threshold = 1e-6;
  int max_iterations = 500;
  double stochastic_keep_initial = 0.1;
  double stochastic_multiplier = 2.0;
  InduceDirection direction = InduceDirection::union_both;
  std::uint64_t seed = 0;
  int threads = 1;
  bool advanced_transform = false;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  std::size_t dict_size = 0;
  double keep_probability = 0.0;
  bool rank_deficient = false;
  // max |W'W - I| of the orthogonal factor computed this iteration
  double orthogonality_error = 0.0;
};

struct MappingResult {
  Eigen::MatrixXd w_src;
  Eigen::MatrixXd w_trg;  // identity in pure-Procrustes mode
  std::vector<IdPair> induced_dict;
  std::vector<IterationRecord> trace;
  int best_iteration = -1;
};

// Orthogonal W maximizing dictionary alignment: SVD of X'Y over the
// dictionary rows, W = U V'. Sign convention: each left singular vector is
// flipped so its largest-magnitude entry is positive.
Eigen::MatrixXd procrustes(const EmbeddingSpace& space_src, const EmbeddingSpace& space_trg,
                           const std::vector<IdPair>& dict, bool* rank_deficient = nullptr);
Eigen::MatrixXd procrustes(const Eigen::MatrixXd& x_rows, const Eigen::MatrixXd& y_rows,
                           bool* rank_deficient = nullptr);

// One CSLS retrieval sweep over row-normalized mapped matrices. Each source
// row's candidates are masked with probability 1 - keep_probability under a
// counter RNG keyed by (seed, iteration, direction, row), so the result does
// not depend on the thread count.
std::vector<IdPair> induce_dictionary(const Eigen::MatrixXd& mapped_src,
                                      const Eigen::MatrixXd& mapped_trg,
                                      const MappingConfig& config, double keep_probability,
                                      std::uint64_t iteration);

// Alternates procrustes and dictionary induction from the seed lexicon until
// the objective (mean dot product over the induced dictionary) stops
// improving at keep probability 1. Returns the best-objective state.
MappingResult self_learn(const EmbeddingSpace& space_src, const EmbeddingSpace& space_trg,
                         const SeedLexicon& seed_lex, const MappingConfig& config);

// (covariance)^(-1/2) of the given rows; maps them to identity covariance.
Eigen::MatrixXd whitening_transform(const Eigen::MatrixXd& rows);
// (covariance)^(+1/2): the inverse of whitening_transform on the same rows.
Eigen::MatrixXd dewhitening_transform(const Eigen::MatrixXd& rows);

// vectors * W, returned as a new space (same vocabulary).
EmbeddingSpace apply_mapping(const EmbeddingSpace& space, const Eigen::MatrixXd& w);

// Resolves lexicon words to (src rank, trg rank) id pairs, skipping OOV
// pairs; preserves lexicon order, drops duplicate id pairs.
std::vector<IdPair> resolve_dictionary(const SeedLexicon& lex, const EmbeddingSpace& space_src,
                                       const EmbeddingSpace& space_trg);

}  // namespace lexalign
