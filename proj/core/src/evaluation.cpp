#include "lexalign/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "similarity_blocks.hpp"

namespace lexalign {

Eigen::VectorXd csls_score(const Eigen::VectorXd& query, const Eigen::MatrixXd& targets,
                           double r_src, const Eigen::VectorXd& r_trg_vec) {
  if (targets.rows() != r_trg_vec.size())
    throw std::invalid_argument("csls_score: penalty vector does not match target count");
  Eigen::VectorXd cos = targets * query;
  return (2.0 * cos).array() - r_src - r_trg_vec.array();
}

Eigen::VectorXd knn_mean_similarity(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& other,
                                    int k, int threads) {
  if (k < 1) throw std::invalid_argument("knn_mean_similarity: k must be >= 1");
  Eigen::VectorXd out(rows.rows());
  detail::similarity_blocks(rows, other, threads, [&](std::size_t r0, const Eigen::MatrixXd& block) {
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      out(static_cast<Eigen::Index>(r0) + i) =
          detail::topk_mean(block.row(i).data(), static_cast<std::size_t>(block.cols()), k);
  });
  return out;
}

std::string EvalReport::acc_percent() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", acc_at_1 * 100.0);
  return buf;
}

EvalReport evaluate_bdi(const EmbeddingSpace& mapped_src, const EmbeddingSpace& mapped_trg,
                        const SeedLexicon& test_lex, const EvalConfig& config) {
  if (test_lex.pairs.empty()) throw std::invalid_argument("evaluate_bdi: empty test lexicon");
  if (mapped_src.dim != mapped_trg.dim)
    throw std::invalid_argument("evaluate_bdi: dimension mismatch");

  // gold targets per source word, deduplicated, insertion order
  std::map<std::string, std::vector<std::string>> gold;
  for (const auto& p : test_lex.pairs) {
    auto& list = gold[p.src];
    if (std::find(list.begin(), list.end(), p.trg) == list.end()) list.push_back(p.trg);
  }

  Eigen::MatrixXd src_mat = mapped_src.vectors.cast<double>();
  Eigen::MatrixXd trg_mat = mapped_trg.vectors.cast<double>();
  detail::normalize_rows(src_mat);
  detail::normalize_rows(trg_mat);

  EvalReport report;
  struct Query {
    const std::string* src;
    std::size_t src_rank;
    std::vector<std::string> gold_in_vocab;
  };
  std::vector<Query> queries;
  for (const auto& [src_word, trg_words] : gold) {
    std::size_t rank = mapped_src.rank_of(src_word);
    if (rank == EmbeddingSpace::npos) {
      ++report.skipped_oov;
      continue;
    }
    std::vector<std::string> in_vocab;
    for (const auto& t : trg_words)
      if (mapped_trg.rank_of(t) != EmbeddingSpace::npos) in_vocab.push_back(t);
    if (in_vocab.empty()) {
      ++report.skipped_oov;
      continue;
    }
    queries.push_back({&src_word, rank, std::move(in_vocab)});
  }
  if (queries.empty()) throw std::runtime_error("evaluate_bdi: no evaluable queries");

  // hubness penalty for every target against the full mapped source space
  const Eigen::VectorXd r_trg = knn_mean_similarity(trg_mat, src_mat, config.csls_k, config.threads);

  Eigen::MatrixXd query_mat(static_cast<Eigen::Index>(queries.size()), mapped_src.dim);
  for (std::size_t i = 0; i < queries.size(); ++i)
    query_mat.row(static_cast<Eigen::Index>(i)) = src_mat.row(static_cast<Eigen::Index>(queries[i].src_rank));

  std::vector<std::uint32_t> predicted(queries.size());
  detail::similarity_blocks(query_mat, trg_mat, config.threads,
                            [&](std::size_t r0, const Eigen::MatrixXd& block) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      double r_src = detail::topk_mean(block.row(i).data(),
                                       static_cast<std::size_t>(block.cols()), config.csls_k);
      double best = -std::numeric_limits<double>::infinity();
      std::uint32_t best_j = 0;
      for (Eigen::Index j = 0; j < block.cols(); ++j) {
        double s = 2.0 * block(i, j) - r_src - r_trg(j);
        if (s > best) {
          best = s;
          best_j = static_cast<std::uint32_t>(j);
        }
      }
      predicted[r0 + static_cast<std::size_t>(i)] = best_j;
    }
  });

  report.per_query.reserve(config.keep_per_query ? queries.size() : 0);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const std::string& pred = mapped_trg.words[predicted[i]];
    bool hit = std::find(queries[i].gold_in_vocab.begin(), queries[i].gold_in_vocab.end(), pred) !=
               queries[i].gold_in_vocab.end();
    if (hit) ++report.hits;
    if (config.keep_per_query)
      report.per_query.push_back({*queries[i].src, pred, queries[i].gold_in_vocab, hit});
  }

  report.evaluated_queries =
      config.count_skipped_as_errors ? queries.size() + report.skipped_oov : queries.size();
  report.acc_at_1 = static_cast<double>(report.hits) / static_cast<double>(report.evaluated_queries);
  return report;
}

void save_eval_report(const EvalReport& report, const std::string& path, bool per_query) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write eval report: " + path);
  out << "acc@1\t" << report.acc_percent() << '\n';
  out << "hits\t" << report.hits << '\n';
  out << "evaluated_queries\t" << report.evaluated_queries << '\n';
  out << "skipped_oov\t" << report.skipped_oov << '\n';
  if (per_query) {
    for (const auto& q : report.per_query) {
      out << (q.hit ? "hit" : "miss") << '\t' << q.src << '\t' << q.predicted << '\t';
      for (std::size_t i = 0; i < q.gold.size(); ++i) {
        if (i) out << ' ';
        out << q.gold[i];
      }
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lexalign
