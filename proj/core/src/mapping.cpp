#include "lexalign/mapping.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "lexalign/evaluation.hpp"
#include "similarity_blocks.hpp"

namespace lexalign {

namespace {

Eigen::MatrixXd dict_rows(const Eigen::MatrixXd& m, const std::vector<IdPair>& dict, bool src) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(dict.size()), m.cols());
  for (std::size_t i = 0; i < dict.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(src ? dict[i].first : dict[i].second);
  return out;
}

// CSLS argmax for each row of A against rows of B, candidates penalized by
// `penalties` and kept with probability keep_p. phase keys the RNG stream so
// forward/backward sweeps of one iteration never share masks.
std::vector<std::uint32_t> retrieve_best(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                         const Eigen::VectorXd& penalties, double keep_p,
                                         std::uint64_t seed, std::uint64_t phase, int threads) {
  std::vector<std::uint32_t> best(a.rows());
  const bool deterministic = keep_p >= 1.0;
  detail::similarity_blocks(a, b, threads, [&](std::size_t r0, const Eigen::MatrixXd& block) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      const std::size_t row = r0 + static_cast<std::size_t>(i);
      double best_score = -std::numeric_limits<double>::infinity();
      std::uint32_t best_j = 0;
      bool any = false;
      if (deterministic) {
        for (Eigen::Index j = 0; j < block.cols(); ++j) {
          double s = 2.0 * block(i, j) - penalties(j);
          if (!any || s > best_score) {
            best_score = s;
            best_j = static_cast<std::uint32_t>(j);
            any = true;
          }
        }
      } else {
        CounterRng rng(seed, phase, row);
        for (Eigen::Index j = 0; j < block.cols(); ++j) {
          double u = rng.next_double();
          if (u < 1.0 - keep_p) continue;
          double s = 2.0 * block(i, j) - penalties(j);
          if (!any || s > best_score) {
            best_score = s;
            best_j = static_cast<std::uint32_t>(j);
            any = true;
          }
        }
        if (!any) {
          // whole row masked out: fall back to the unmasked argmax
          for (Eigen::Index j = 0; j < block.cols(); ++j) {
            double s = 2.0 * block(i, j) - penalties(j);
            if (j == 0 || s > best_score) {
              best_score = s;
              best_j = static_cast<std::uint32_t>(j);
            }
          }
        }
      }
      best[row] = best_j;
    }
  });
  return best;
}

double mean_dot(const Eigen::MatrixXd& xm, const Eigen::MatrixXd& zm,
                const std::vector<IdPair>& dict) {
  double sum = 0.0;
  for (const auto& [s, t] : dict) sum += xm.row(s).dot(zm.row(t));
  return sum / static_cast<double>(dict.size());
}

Eigen::MatrixXd to_double_normalized(const EmbeddingSpace& space) {
  Eigen::MatrixXd m = space.vectors.cast<double>();
  detail::normalize_rows(m);
  return m;
}

}  // namespace

void MappingConfig::validate() const {
  if (csls_k < 1) throw std::invalid_argument("mapping config: csls_k must be >= 1");
  if (vocab_cutoff < 1) throw std::invalid_argument("mapping config: vocab_cutoff must be >= 1");
  if (convergence_threshold <= 0)
    throw std::invalid_argument("mapping config: convergence_threshold must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("mapping config: max_iterations must be >= 1");
  if (!(stochastic_keep_initial > 0.0 && stochastic_keep_initial <= 1.0))
    throw std::invalid_argument("mapping config: stochastic_keep_initial must be in (0, 1]");
  if (stochastic_multiplier <= 1.0)
    throw std::invalid_argument("mapping config: stochastic_multiplier must be > 1");
  if (threads < 1) throw std::invalid_argument("mapping config: threads must be >= 1");
}

Eigen::MatrixXd procrustes(const Eigen::MatrixXd& x_rows, const Eigen::MatrixXd& y_rows,
                           bool* rank_deficient) {
  if (x_rows.rows() == 0) throw std::invalid_argument("procrustes: empty dictionary");
  if (x_rows.rows() != y_rows.rows() || x_rows.cols() != y_rows.cols())
    throw std::invalid_argument("procrustes: shape mismatch");
  Eigen::MatrixXd m = x_rows.transpose() * y_rows;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  const auto& s = svd.singularValues();
  if (rank_deficient) *rank_deficient = s.size() > 0 && s(s.size() - 1) < 1e-9 * s(0);

  // sign convention: largest-magnitude entry of each left singular vector
  // positive; ties resolved by the first such entry
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      double mag = std::abs(u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (u(arg, j) < 0) {
      u.col(j) = -u.col(j);
      v.col(j) = -v.col(j);
    }
  }
  return u * v.transpose();
}

Eigen::MatrixXd procrustes(const EmbeddingSpace& space_src, const EmbeddingSpace& space_trg,
                           const std::vector<IdPair>& dict, bool* rank_deficient) {
  if (dict.empty()) throw std::invalid_argument("procrustes: empty dictionary");
  for (const auto& [s, t] : dict) {
    if (s >= space_src.size() || t >= space_trg.size())
      throw std::out_of_range("procrustes: dictionary id out of range");
  }
  Eigen::MatrixXd x = space_src.vectors.cast<double>();
  Eigen::MatrixXd z = space_trg.vectors.cast<double>();
  return procrustes(dict_rows(x, dict, true), dict_rows(z, dict, false), rank_deficient);
}

std::vector<IdPair> induce_dictionary(const Eigen::MatrixXd& mapped_src,
                                      const Eigen::MatrixXd& mapped_trg,
                                      const MappingConfig& config, double keep_probability,
                                      std::uint64_t iteration) {
  config.validate();
  std::vector<IdPair> dict;
  const Eigen::VectorXd r_src =
      knn_mean_similarity(mapped_src, mapped_trg, config.csls_k, config.threads);
  const Eigen::VectorXd r_trg =
      knn_mean_similarity(mapped_trg, mapped_src, config.csls_k, config.threads);

  if (config.direction != InduceDirection::backward) {
    auto best = retrieve_best(mapped_src, mapped_trg, r_trg, keep_probability, config.seed,
                              2 * iteration, config.threads);
    for (std::uint32_t i = 0; i < best.size(); ++i) dict.emplace_back(i, best[i]);
  }
  if (config.direction != InduceDirection::forward) {
    auto best = retrieve_best(mapped_trg, mapped_src, r_src, keep_probability, config.seed,
                              2 * iteration + 1, config.threads);
    for (std::uint32_t j = 0; j < best.size(); ++j) dict.emplace_back(best[j], j);
  }
  std::sort(dict.begin(), dict.end());
  dict.erase(std::unique(dict.begin(), dict.end()), dict.end());
  return dict;
}

Eigen::MatrixXd whitening_transform(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw std::invalid_argument("whitening_transform: no rows");
  Eigen::MatrixXd cov = rows.transpose() * rows / static_cast<double>(rows.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(1e-12);
  return eig.eigenvectors() * vals.cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

Eigen::MatrixXd dewhitening_transform(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw std::invalid_argument("dewhitening_transform: no rows");
  Eigen::MatrixXd cov = rows.transpose() * rows / static_cast<double>(rows.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  Eigen::VectorXd vals = eig.eigenvalues().cwiseMax(1e-12);
  return eig.eigenvectors() * vals.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
}

namespace {

// vecmap-style advanced step: whiten both sides on the dictionary rows,
// rotate onto the correlated axes, re-weight by sqrt singular values, then
// de-whiten inside the rotated basis.
void advanced_transforms(const Eigen::MatrixXd& xd, const Eigen::MatrixXd& zd,
                         Eigen::MatrixXd& w_src, Eigen::MatrixXd& w_trg, bool* rank_deficient) {
  Eigen::MatrixXd sx = whitening_transform(xd);
  Eigen::MatrixXd sz = whitening_transform(zd);
  Eigen::MatrixXd m = (xd * sx).transpose() * (zd * sz);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd& u = svd.matrixU();
  const Eigen::MatrixXd& v = svd.matrixV();
  const Eigen::VectorXd& s = svd.singularValues();
  if (rank_deficient) *rank_deficient = s.size() > 0 && s(s.size() - 1) < 1e-9 * s(0);
  Eigen::VectorXd w = s.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd dx = dewhitening_transform(xd);
  Eigen::MatrixXd dz = dewhitening_transform(zd);
  w_src = sx * u * w.asDiagonal() * (u.transpose() * dx * u);
  w_trg = sz * v * w.asDiagonal() * (v.transpose() * dz * v);
}

}  // namespace

std::vector<IdPair> resolve_dictionary(const SeedLexicon& lex, const EmbeddingSpace& space_src,
                                       const EmbeddingSpace& space_trg) {
  std::vector<IdPair> dict;
  dict.reserve(lex.pairs.size());
  std::unordered_set<std::uint64_t> seen;
  for (const auto& p : lex.pairs) {
    std::size_t s = space_src.rank_of(p.src);
    std::size_t t = space_trg.rank_of(p.trg);
    if (s == EmbeddingSpace::npos || t == EmbeddingSpace::npos) continue;
    std::uint64_t key = (static_cast<std::uint64_t>(s) << 32) | t;
    if (seen.insert(key).second)
      dict.emplace_back(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t));
  }
  return dict;
}

MappingResult self_learn(const EmbeddingSpace& space_src, const EmbeddingSpace& space_trg,
                         const SeedLexicon& seed_lex, const MappingConfig& config) {
  config.validate();
  if (space_src.dim != space_trg.dim)
    throw std::invalid_argument("self_learn: dimension mismatch (" + std::to_string(space_src.dim) +
                                " vs " + std::to_string(space_trg.dim) + ")");
  std::vector<IdPair> dict = resolve_dictionary(seed_lex, space_src, space_trg);
  if (dict.empty()) {
    OovReport rep = oov_report(seed_lex, space_src, space_trg);
    throw std::runtime_error("self_learn: no usable seed pairs (total " +
                             std::to_string(rep.total_pairs) + ", source OOV " +
                             std::to_string(rep.oov_src) + ", target OOV " +
                             std::to_string(rep.oov_trg) + ")");
  }

  const Eigen::MatrixXd x_full = to_double_normalized(space_src);
  const Eigen::MatrixXd z_full = to_double_normalized(space_trg);
  const Eigen::Index ns_cut = std::min<Eigen::Index>(config.vocab_cutoff, x_full.rows());
  const Eigen::Index nt_cut = std::min<Eigen::Index>(config.vocab_cutoff, z_full.rows());
  const Eigen::MatrixXd x_cut = x_full.topRows(ns_cut);
  const Eigen::MatrixXd z_cut = z_full.topRows(nt_cut);

  MappingResult result;
  const Eigen::Index d = x_full.cols();
  result.w_src = Eigen::MatrixXd::Identity(d, d);
  result.w_trg = Eigen::MatrixXd::Identity(d, d);

  double keep_p = config.stochastic_keep_initial;
  double best_objective = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_w_src, best_w_trg;
  std::vector<IdPair> best_dict;
  int best_iter = -1;

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    bool rank_deficient = false;
    Eigen::MatrixXd w_src, w_trg;
    Eigen::MatrixXd xd = dict_rows(x_full, dict, true);
    Eigen::MatrixXd zd = dict_rows(z_full, dict, false);
    if (config.advanced_transform) {
      advanced_transforms(xd, zd, w_src, w_trg, &rank_deficient);
    } else {
      w_src = procrustes(xd, zd, &rank_deficient);
      w_trg = Eigen::MatrixXd::Identity(d, d);
    }

    Eigen::MatrixXd xm = x_cut * w_src;
    Eigen::MatrixXd zm = config.advanced_transform ? Eigen::MatrixXd(z_cut * w_trg) : z_cut;
    detail::normalize_rows(xm);
    if (config.advanced_transform) detail::normalize_rows(zm);

    dict = induce_dictionary(xm, zm, config, keep_p, static_cast<std::uint64_t>(iter));
    double objective = mean_dot(xm, zm, dict);
    result.trace.push_back({iter, objective, dict.size(), keep_p, rank_deficient});

    double improvement = objective - best_objective;
    if (objective > best_objective) {
      best_objective = objective;
      best_w_src = w_src;
      best_w_trg = w_trg;
      best_dict = dict;
      best_iter = iter;
    }
    if (improvement < config.convergence_threshold) {
      if (keep_p >= 1.0) break;
      keep_p = std::min(1.0, keep_p * config.stochastic_multiplier);
    }
  }

  result.w_src = best_w_src;
  result.w_trg = best_w_trg;
  result.induced_dict = std::move(best_dict);
  result.best_iteration = best_iter;
  return result;
}

EmbeddingSpace apply_mapping(const EmbeddingSpace& space, const Eigen::MatrixXd& w) {
  if (space.dim != w.rows())
    throw std::invalid_argument("apply_mapping: transform does not match dimension");
  EmbeddingSpace out;
  out.words = space.words;
  out.dim = space.dim;
  out.lang = space.lang;
  out.vectors = (space.vectors.cast<double>() * w).cast<float>();
  return out;
}

}  // namespace lexalign
