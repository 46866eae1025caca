#include "lexalign/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "lexalign/candidates.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/util.hpp"

namespace fs = std::filesystem;

namespace lexalign {

namespace {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

const char* direction_name(InduceDirection d) {
  switch (d) {
    case InduceDirection::forward: return "forward";
    case InduceDirection::backward: return "backward";
    case InduceDirection::union_both: return "union";
  }
  return "?";
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw std::invalid_argument("pipeline config: missing " + what);
  if (!fs::exists(path))
    throw std::invalid_argument("pipeline config: " + what + " does not exist: " + path);
}

class StageGuard {
 public:
  ~StageGuard() {
    if (!committed_) {
      std::error_code ec;
      for (const auto& p : written_) fs::remove(p, ec);
    }
  }
  void track(const std::string& path) { written_.push_back(path); }
  void commit() { committed_ = true; }

 private:
  std::vector<std::string> written_;
  bool committed_ = false;
};

[[noreturn]] void stage_fail(const char* stage, const std::exception& e) {
  throw std::runtime_error(std::string("pipeline stage '") + stage + "': " + e.what());
}

}  // namespace

const char* lexicon_mode_name(LexiconMode m) {
  switch (m) {
    case LexiconMode::id: return "id";
    case LexiconMode::rom: return "rom";
    case LexiconMode::idpp: return "idpp";
    case LexiconMode::external: return "external";
    case LexiconMode::pivot: return "pivot";
  }
  return "?";
}

LexiconMode parse_lexicon_mode(const std::string& name) {
  if (name == "id") return LexiconMode::id;
  if (name == "rom") return LexiconMode::rom;
  if (name == "idpp") return LexiconMode::idpp;
  if (name == "external") return LexiconMode::external;
  if (name == "pivot") return LexiconMode::pivot;
  throw std::invalid_argument("unknown lexicon mode: \"" + name +
                              "\" (expected id|rom|idpp|external|pivot)");
}

std::string PipelineConfig::str() const {
  std::string s;
  auto add = [&s](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
  add("src_embeddings", src_embeddings);
  add("trg_embeddings", trg_embeddings);
  for (const auto& t : tables) add("table", t);
  add("candidates", candidates_path);
  add("test_lexicon", test_lexicon);
  add("external_lexicon", external_lexicon);
  add("pivot_lexicon_a", pivot_lexicon_a);
  add("pivot_lexicon_b", pivot_lexicon_b);
  add("src_lang", src_lang);
  add("trg_lang", trg_lang);
  add("mode", lexicon_mode_name(mode));
  add("max_vocab", std::to_string(max_vocab));
  add("normalize", plan.str());
  add("match.k", std::to_string(match.k));
  add("match.sim_threshold", format_double(match.sim_threshold));
  add("match.min_len", std::to_string(match.min_len));
  add("match.min_freq", std::to_string(match.min_freq));
  add("match.exact", exact_match ? "1" : "0");
  add("mapping.csls_k", std::to_string(mapping.csls_k));
  add("mapping.vocab_cutoff", std::to_string(mapping.vocab_cutoff));
  add("mapping.convergence_threshold", format_double(mapping.convergence_threshold));
  add("mapping.max_iterations", std::to_string(mapping.max_iterations));
  add("mapping.stochastic_keep_initial", format_double(mapping.stochastic_keep_initial));
  add("mapping.stochastic_multiplier", format_double(mapping.stochastic_multiplier));
  add("mapping.direction", direction_name(mapping.direction));
  add("mapping.advanced_transform", mapping.advanced_transform ? "1" : "0");
  add("dump_queries", dump_queries ? "1" : "0");
  add("seed", std::to_string(seed));
  return s;
}

std::uint64_t PipelineConfig::hash() const { return fnv1a64(str()); }

void PipelineConfig::validate() const {
  require_file(src_embeddings, "source embeddings");
  require_file(trg_embeddings, "target embeddings");
  if (mode == LexiconMode::rom || mode == LexiconMode::idpp) {
    require_file(candidates_path, "candidate list");
    if (tables.empty()) throw std::invalid_argument("pipeline config: mode needs romanization tables");
    for (const auto& t : tables) require_file(t, "romanization table");
  }
  if (mode == LexiconMode::external) require_file(external_lexicon, "external lexicon");
  if (mode == LexiconMode::pivot) {
    require_file(pivot_lexicon_a, "pivot lexicon (pivot->L1)");
    require_file(pivot_lexicon_b, "pivot lexicon (pivot->L2)");
  }
  if (!test_lexicon.empty()) require_file(test_lexicon, "test lexicon");
  if (max_vocab < 1) throw std::invalid_argument("pipeline config: max_vocab must be >= 1");
  if (threads < 1) throw std::invalid_argument("pipeline config: threads must be >= 1");
  match.validate();
  MappingConfig m = mapping;
  m.seed = seed;
  m.threads = threads;
  m.validate();
}

PipelineArtifacts run_pipeline(const PipelineConfig& config) {
  config.validate();
  fs::create_directories(config.output_dir);
  auto out_path = [&](const char* name) { return (fs::path(config.output_dir) / name).string(); };

  PipelineArtifacts art;
  StageGuard guard;

  EmbeddingSpace src, trg;
  try {
    src = load_embeddings(config.src_embeddings, config.max_vocab, config.src_lang);
    trg = load_embeddings(config.trg_embeddings, config.max_vocab, config.trg_lang);
  } catch (const std::exception& e) {
    stage_fail("load", e);
  }

  EmbeddingSpace src_norm, trg_norm;
  try {
    src_norm = normalize(src, config.plan);
    trg_norm = normalize(trg, config.plan);
  } catch (const std::exception& e) {
    stage_fail("normalize", e);
  }

  SeedLexicon lex;
  try {
    auto build_rom = [&] {
      CandidateList cands = load_candidates(config.candidates_path);
      RomanizationTable table = load_tables(config.tables);
      std::vector<std::pair<std::string, std::size_t>> trg_vocab;
      trg_vocab.reserve(trg.size());
      for (std::size_t i = 0; i < trg.size(); ++i) trg_vocab.emplace_back(trg.words[i], i);
      SeedLexicon rom = match(cands.ranked(), trg_vocab, table, config.match, config.exact_match);
      rom.src_lang = config.src_lang;
      rom.trg_lang = config.trg_lang;
      return rom;
    };
    switch (config.mode) {
      case LexiconMode::id:
        lex = extract_identical(src, trg);
        break;
      case LexiconMode::rom:
        lex = build_rom();
        break;
      case LexiconMode::idpp:
        lex = merge(extract_identical(src, trg), build_rom());
        break;
      case LexiconMode::external:
        lex = load_lexicon(config.external_lexicon);
        lex.src_lang = config.src_lang;
        lex.trg_lang = config.trg_lang;
        break;
      case LexiconMode::pivot: {
        SeedLexicon a = load_lexicon(config.pivot_lexicon_a);
        SeedLexicon b = load_lexicon(config.pivot_lexicon_b);
        lex = pivot_join(a, b);
        lex.src_lang = config.src_lang;
        lex.trg_lang = config.trg_lang;
        break;
      }
    }
    art.seed_pairs = lex.size();
    art.oov = oov_report(lex, src, trg);

    art.seed_lexicon_path = out_path("seed_lexicon.tsv");
    save_lexicon(lex, art.seed_lexicon_path);
    guard.track(art.seed_lexicon_path);

    art.oov_report_path = out_path("oov_report.tsv");
    std::ofstream oov(art.oov_report_path, std::ios::binary);
    oov << "total_pairs\t" << art.oov.total_pairs << '\n'
        << "usable_pairs\t" << art.oov.usable_pairs << '\n'
        << "oov_src\t" << art.oov.oov_src << '\n'
        << "oov_trg\t" << art.oov.oov_trg << '\n';
    if (!oov) throw std::runtime_error("write failed: " + art.oov_report_path);
    guard.track(art.oov_report_path);
  } catch (const std::exception& e) {
    stage_fail("lexicon", e);
  }

  MappingResult mapped;
  EmbeddingSpace mapped_src, mapped_trg;
  try {
    MappingConfig mc = config.mapping;
    mc.seed = config.seed;
    mc.threads = config.threads;
    mapped = self_learn(src_norm, trg_norm, lex, mc);

    art.trace_path = out_path("trace.tsv");
    std::ofstream trace(art.trace_path, std::ios::binary);
    trace << "# iteration\tobjective\tdict_size\tkeep_probability\trank_deficient\n";
    char buf[96];
    for (const auto& rec : mapped.trace) {
      std::snprintf(buf, sizeof(buf), "%d\t%.12f\t%zu\t%.6f\t%d\n", rec.iteration, rec.objective,
                    rec.dict_size, rec.keep_probability, rec.rank_deficient ? 1 : 0);
      trace << buf;
    }
    if (!trace) throw std::runtime_error("write failed: " + art.trace_path);
    guard.track(art.trace_path);

    art.final_objective = mapped.trace.empty() ? 0.0 : mapped.trace[mapped.best_iteration].objective;
    art.iterations = static_cast<int>(mapped.trace.size());

    mapped_src = apply_mapping(src_norm, mapped.w_src);
    mapped_trg = apply_mapping(trg_norm, mapped.w_trg);
    art.mapped_src_path = out_path("mapped_src.vec");
    art.mapped_trg_path = out_path("mapped_trg.vec");
    save_embeddings(mapped_src, art.mapped_src_path);
    guard.track(art.mapped_src_path);
    save_embeddings(mapped_trg, art.mapped_trg_path);
    guard.track(art.mapped_trg_path);
  } catch (const std::exception& e) {
    stage_fail("map", e);
  }

  if (!config.test_lexicon.empty()) {
    try {
      SeedLexicon test = load_lexicon(config.test_lexicon);
      EvalConfig ec;
      ec.csls_k = config.mapping.csls_k;
      ec.threads = config.threads;
      art.eval = evaluate_bdi(mapped_src, mapped_trg, test, ec);
      art.eval_report_path = out_path("eval_report.tsv");
      save_eval_report(*art.eval, art.eval_report_path, config.dump_queries);
      guard.track(art.eval_report_path);
    } catch (const std::exception& e) {
      stage_fail("evaluate", e);
    }
  }

  try {
    art.manifest_path = out_path("run_manifest.txt");
    std::ofstream manifest(art.manifest_path, std::ios::binary);
    char hashbuf[24];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(config.hash()));
    manifest << "config_hash\t" << hashbuf << '\n';
    manifest << "seed\t" << config.seed << '\n';
    manifest << "seed_pairs\t" << art.seed_pairs << '\n';
    manifest << "usable_pairs\t" << art.oov.usable_pairs << '\n';
    manifest << "iterations\t" << art.iterations << '\n';
    manifest << "objective\t" << format_double(art.final_objective) << '\n';
    if (art.eval) manifest << "acc@1\t" << art.eval->acc_percent() << '\n';
    manifest << "--- config ---\n" << config.str();
    if (!manifest) throw std::runtime_error("write failed: " + art.manifest_path);
    guard.track(art.manifest_path);
  } catch (const std::exception& e) {
    stage_fail("write", e);
  }

  guard.commit();
  return art;
}

}  // namespace lexalign
