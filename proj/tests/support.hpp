#pragma once

// Shared test support: independent oracles and fixture helpers. Everything
// here is deliberately written the slow, obvious way and stays independent
// of the library implementations it checks.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

namespace testsupport {

// Full-matrix Levenshtein over codepoint vectors.
inline int lev_oracle(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

// All strings reachable with at most k deletions, by plain recursion.
inline void deletion_set_oracle(const std::u32string& w, int k, std::set<std::u32string>& out) {
  out.insert(w);
  if (k == 0) return;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::u32string shorter = w;
    shorter.erase(i, 1);
    deletion_set_oracle(shorter, k - 1, out);
  }
}

// Dense CSLS oracle: cosine matrix and penalty terms computed with double
// loops, no blocking, no argmax shortcuts.
struct CslsOracle {
  Eigen::MatrixXd cos;      // n_src x n_trg
  Eigen::VectorXd r_src;    // mean top-k cosine per source row
  Eigen::VectorXd r_trg;    // mean top-k cosine per target row

  CslsOracle(const Eigen::MatrixXd& src, const Eigen::MatrixXd& trg, int k) {
    const Eigen::Index ns = src.rows(), nt = trg.rows();
    cos.resize(ns, nt);
    for (Eigen::Index i = 0; i < ns; ++i)
      for (Eigen::Index j = 0; j < nt; ++j) cos(i, j) = src.row(i).dot(trg.row(j));
    r_src.resize(ns);
    for (Eigen::Index i = 0; i < ns; ++i) r_src(i) = topk_mean_row(cos.row(i), k);
    r_trg.resize(nt);
    for (Eigen::Index j = 0; j < nt; ++j) r_trg(j) = topk_mean_row(cos.col(j).transpose(), k);
  }

  double score(Eigen::Index i, Eigen::Index j) const {
    return 2.0 * cos(i, j) - r_src(i) - r_trg(j);
  }

  Eigen::Index best_target(Eigen::Index i) const {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < cos.cols(); ++j)
      if (score(i, j) > score(i, best)) best = j;
    return best;
  }

  static double topk_mean_row(const Eigen::RowVectorXd& row, int k) {
    std::vector<double> v(row.data(), row.data() + row.size());
    std::sort(v.begin(), v.end(), std::greater<double>());
    std::size_t kk = std::min<std::size_t>(k, v.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < kk; ++i) sum += v[i];
    return sum / static_cast<double>(kk);
  }
};

// Random orthogonal matrix from the QR of a seeded gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  // fix signs so the factorization is unique
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

inline Eigen::MatrixXd random_unit_rows(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = gauss(rng);
    m.row(i).normalize();
  }
  return m;
}

inline std::string random_word(std::mt19937_64& rng, int min_len, int max_len,
                               const std::string& alphabet) {
  std::uniform_int_distribution<int> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  int len = len_dist(rng);
  std::string w;
  for (int i = 0; i < len; ++i) w.push_back(alphabet[ch(rng)]);
  return w;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto p = base / (tag + "-" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(p, ec)) {
        path_ = p;
        return;
      }
    }
    throw std::runtime_error("cannot create temp dir for " + tag);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Word-vector text fixture from an explicit matrix.
inline void write_embeddings_file(const std::string& path, const std::vector<std::string>& words,
                                  const Eigen::MatrixXd& vectors) {
  std::ofstream out(path, std::ios::binary);
  out << words.size() << ' ' << vectors.cols() << '\n';
  for (std::size_t i = 0; i < words.size(); ++i) {
    out << words[i];
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) out << ' ' << vectors(i, j);
    out << '\n';
  }
}

inline std::string data_dir() { return LEXALIGN_DATA_DIR; }
inline std::string table_path(const std::string& name) {
  return data_dir() + "/tables/" + name + ".tsv";
}

}  // namespace testsupport
