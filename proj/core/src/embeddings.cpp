#include "lexalign/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace lexalign {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

// Splits "word v1 ... vd" on the first whitespace run; the word may contain
// any non-whitespace bytes.
std::string_view take_word(std::string_view line, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
  return line.substr(start, pos - start);
}

bool parse_floats(std::string_view line, std::size_t pos, float* out, int dim) {
  for (int j = 0; j < dim; ++j) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) return false;
    auto res = std::from_chars(line.data() + pos, line.data() + line.size(), out[j]);
    if (res.ec != std::errc{}) return false;
    pos = res.ptr - line.data();
  }
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  return pos == line.size();
}

}  // namespace

const std::unordered_map<std::string, std::size_t>& EmbeddingSpace::index() const {
  if (index_.empty() && !words.empty()) {
    index_.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i], i);
  }
  return index_;
}

std::size_t EmbeddingSpace::rank_of(const std::string& word) const {
  const auto& idx = index();
  auto it = idx.find(word);
  return it == idx.end() ? npos : it->second;
}

EmbeddingSpace load_embeddings(const std::string& path, std::size_t max_vocab,
                               const std::string& lang, LoadStats* stats) {
  if (max_vocab < 1) throw std::invalid_argument("max_vocab must be >= 1");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path);

  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file, expected \"<count> <dim>\" header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::size_t declared = 0;
  int dim = 0;
  {
    std::size_t pos = 0;
    auto res = std::from_chars(line.data(), line.data() + line.size(), declared);
    if (res.ec != std::errc{} || res.ptr == line.data() + line.size() || *res.ptr != ' ')
      parse_fail(path, 1, "malformed header, expected \"<count> <dim>\"");
    pos = res.ptr - line.data() + 1;
    auto res2 = std::from_chars(line.data() + pos, line.data() + line.size(), dim);
    if (res2.ec != std::errc{} || res2.ptr != line.data() + line.size() || dim <= 0)
      parse_fail(path, 1, "malformed header, expected \"<count> <dim>\"");
  }

  EmbeddingSpace space;
  space.dim = dim;
  space.lang = lang;
  std::size_t want = std::min(max_vocab, declared);
  space.words.reserve(want);
  std::vector<float> data;
  data.reserve(want * static_cast<std::size_t>(dim));

  std::unordered_set<std::string> seen;
  seen.reserve(want);
  std::vector<float> row(dim);
  std::size_t line_no = 1;
  while (space.words.size() < max_vocab && std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t pos = 0;
    std::string word(take_word(line, pos));
    if (word.empty()) parse_fail(path, line_no, "line does not start with a word");
    if (!parse_floats(line, pos, row.data(), dim))
      parse_fail(path, line_no, "expected " + std::to_string(dim) + " vector components");
    if (seen.count(word)) {
      if (stats) ++stats->duplicates_skipped;
      continue;
    }
    double norm2 = 0.0;
    for (int j = 0; j < dim; ++j) norm2 += static_cast<double>(row[j]) * row[j];
    if (norm2 < 1e-24) {
      if (stats) ++stats->zero_rows_rejected;
      continue;
    }
    seen.insert(word);
    space.words.push_back(std::move(word));
    data.insert(data.end(), row.begin(), row.end());
  }

  space.vectors.resize(static_cast<Eigen::Index>(space.words.size()), dim);
  std::copy(data.begin(), data.end(), space.vectors.data());
  return space;
}

EmbeddingSpace normalize(const EmbeddingSpace& space, const NormalizationPlan& plan) {
  if (space.size() == 0) throw std::invalid_argument("normalize: empty embedding space");
  if (plan.steps.empty()) throw std::invalid_argument("normalize: empty plan");

  EmbeddingSpace out;
  out.words = space.words;
  out.dim = space.dim;
  out.lang = space.lang;
  Eigen::MatrixXd m = space.vectors.cast<double>();

  for (NormStep step : plan.steps) {
    if (step == NormStep::unit) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double norm = m.row(i).norm();
        if (norm < 1e-12)
          throw std::runtime_error("normalize: near-zero norm for word \"" + out.words[i] + "\"");
        m.row(i) /= norm;
      }
    } else {
      Eigen::RowVectorXd mean = m.colwise().mean();
      m.rowwise() -= mean;
    }
  }
  out.vectors = m.cast<float>();
  return out;
}

void save_embeddings(const EmbeddingSpace& space, const std::string& path) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw std::runtime_error("cannot write embeddings file: " + path);
  outf << space.size() << ' ' << space.dim << '\n';
  char buf[64];
  for (std::size_t i = 0; i < space.size(); ++i) {
    outf << space.words[i];
    for (int j = 0; j < space.dim; ++j) {
      std::snprintf(buf, sizeof(buf), " %.6f", static_cast<double>(space.vectors(i, j)));
      outf << buf;
    }
    outf << '\n';
  }
  if (!outf) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> load_vocab(const std::string& path, std::size_t max_vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  while (words.size() < max_vocab && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t pos = 0;
    std::string word(take_word(line, pos));
    if (!word.empty() && seen.insert(word).second) words.push_back(std::move(word));
  }
  return words;
}

NormalizationPlan NormalizationPlan::parse(const std::string& spec) {
  NormalizationPlan plan;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string tok = spec.substr(start, comma == std::string::npos ? comma : comma - start);
    if (tok == "unit") plan.steps.push_back(NormStep::unit);
    else if (tok == "center") plan.steps.push_back(NormStep::center);
    else throw std::invalid_argument("unknown normalization step: \"" + tok + "\"");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (plan.steps.empty()) throw std::invalid_argument("empty normalization plan");
  return plan;
}

std::string NormalizationPlan::str() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ',';
    out += steps[i] == NormStep::unit ? "unit" : "center";
  }
  return out;
}

}  // namespace lexalign
