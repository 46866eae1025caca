#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lexalign/embeddings.hpp"
#include "lexalign/evaluation.hpp"
#include "lexalign/mapping.hpp"
#include "lexalign/matcher.hpp"

namespace lexalign {

enum class LexiconMode { id, rom, idpp, external, pivot };

const char* lexicon_mode_name(LexiconMode m);
LexiconMode parse_lexicon_mode(const std::string& name);

struct PipelineConfig {
  std::string src_embeddings;
  std::string trg_embeddings;
  std::vector<std::string> tables;
  std::string candidates_path;
  std::string test_lexicon;
  std::string external_lexicon;
  std::string pivot_lexicon_a;  // pivot -> L1
  std::string pivot_lexicon_b;  // pivot -> L2
  std::string output_dir = ".";
  std::string src_lang = "src";
  std::string trg_lang = "trg";

  LexiconMode mode = LexiconMode::id;
  std::size_t max_vocab = 200000;
  NormalizationPlan plan = NormalizationPlan::standard();
  MatchConfig match;
  MappingConfig mapping;
  bool exact_match = false;
  bool dump_queries = false;
  std::uint64_t seed = 0;
  int threads = 1;

  // Canonical key=value dump; the hash covers result-affecting fields only.
  std::string str() const;
  std::uint64_t hash() const;
  void validate() const;
};

struct PipelineArtifacts {
  std::string seed_lexicon_path;
  std::string oov_report_path;
  std::string mapped_src_path;
  std::string mapped_trg_path;
  std::string trace_path;
  std::string eval_report_path;  // empty when no test lexicon was given
  std::string manifest_path;

  std::size_t seed_pairs = 0;
  OovReport oov;
  double final_objective = 0.0;
  int iterations = 0;
  std::optional<EvalReport> eval;
};

// load -> normalize -> lexicon construction -> self_learn -> evaluate.
// Artifacts land in config.output_dir; a failed stage removes everything
// written so far and rethrows with the stage name. Reruns with the same
// config produce byte-identical files.
PipelineArtifacts run_pipeline(const PipelineConfig& config);

}  // namespace lexalign
