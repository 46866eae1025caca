#pragma once

#include <Eigen/Core>

#include <vector>

#include "lexalign/util.hpp"

namespace lexalign::detail {

// Row-block size for similarity sweeps. Fixed so that every GEMM call sees
// the same shapes regardless of thread count, which keeps results
// bit-identical at any --threads value.
constexpr std::size_t kSimBlockRows = 512;

// Calls fn(row0, block) for consecutive row blocks of A * B^T.
template <typename Fn>
void similarity_blocks(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int threads, Fn&& fn) {
  parallel_for(
      static_cast<std::size_t>(a.rows()), threads,
      [&](std::size_t r0, std::size_t r1) {
        Eigen::MatrixXd block;
        block.noalias() = a.middleRows(r0, r1 - r0) * b.transpose();
        fn(r0, block);
      },
      kSimBlockRows);
}

// Mean of the k largest values (k clamped to n), accumulated in descending
// order so the result does not depend on traversal details.
inline double topk_mean(const double* values, std::size_t n, int k) {
  if (n == 0 || k <= 0) return 0.0;
  std::size_t kk = std::min<std::size_t>(k, n);
  std::vector<double> best(kk, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    double v = values[i];
    if (v <= best.back()) continue;
    std::size_t pos = kk - 1;
    while (pos > 0 && best[pos - 1] < v) {
      best[pos] = best[pos - 1];
      --pos;
    }
    best[pos] = v;
  }
  double sum = 0.0;
  for (double v : best) sum += v;
  return sum / static_cast<double>(kk);
}

// Unit-normalizes rows in place; rows with tiny norms are left unscaled.
inline void normalize_rows(Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double norm = m.row(i).norm();
    if (norm > 1e-12) m.row(i) /= norm;
  }
}

}  // namespace lexalign::detail
