#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexalign {

// One language's monolingual embeddings. Row order is frequency order
// (row 0 = most frequent word) and never changes after construction.
struct EmbeddingSpace {
  std::vector<std::string> words;
  Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> vectors;
  int dim = 0;
  std::string lang;

  std::size_t size() const { return words.size(); }

  // word -> frequency rank; built lazily on first use.
  const std::unordered_map<std::string, std::size_t>& index() const;

  // rank of word, or npos if absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t rank_of(const std::string& word) const;

 private:
  mutable std::unordered_map<std::string, std::size_t> index_;
};

enum class NormStep { unit, center };

struct NormalizationPlan {
  std::vector<NormStep> steps;

  static NormalizationPlan standard() { return {{NormStep::unit, NormStep::center, NormStep::unit}}; }
  static NormalizationPlan parse(const std::string& spec);  // e.g. "unit,center,unit"
  std::string str() const;
};

struct LoadStats {
  std::size_t duplicates_skipped = 0;
  std::size_t zero_rows_rejected = 0;
};

// Reads the word-vector text format: a "<count> <dim>" header followed by
// "<word> <v1> ... <vdim>" lines. Keeps the first max_vocab valid entries in
// file order. Duplicate words after the first are skipped; zero-norm rows are
// rejected. Both are counted in `stats` when given.
EmbeddingSpace load_embeddings(const std::string& path, std::size_t max_vocab,
                               const std::string& lang = "", LoadStats* stats = nullptr);

// Applies the plan's steps in order; returns a new space. `unit` rescales
// each row to norm 1, `center` subtracts the column mean. Accumulations run
// in double.
EmbeddingSpace normalize(const EmbeddingSpace& space, const NormalizationPlan& plan);

// Writes the same text format that load_embeddings reads.
void save_embeddings(const EmbeddingSpace& space, const std::string& path);

// Reads only the vocabulary column of a word-vector file (vectors skipped).
std::vector<std::string> load_vocab(const std::string& path, std::size_t max_vocab);

}  // namespace lexalign
