// lexalign command line: builds seed lexicons from identical strings and
// romanized transliteration matches, aligns embedding spaces, and evaluates
// bilingual dictionary induction.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "lexalign/candidates.hpp"
#include "lexalign/embeddings.hpp"
#include "lexalign/evaluation.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/mapping.hpp"
#include "lexalign/matcher.hpp"
#include "lexalign/pipeline.hpp"
#include "lexalign/romanizer.hpp"

namespace fs = std::filesystem;
using namespace lexalign;

namespace {

std::vector<std::pair<std::string, std::size_t>> ranked_words(const std::vector<std::string>& words) {
  std::vector<std::pair<std::string, std::size_t>> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out.emplace_back(words[i], i);
  return out;
}

std::vector<std::string> read_word_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

void write_trace(const std::vector<IterationRecord>& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "# iteration\tobjective\tdict_size\tkeep_probability\trank_deficient\n";
  char buf[96];
  for (const auto& rec : trace) {
    std::snprintf(buf, sizeof(buf), "%d\t%.12f\t%zu\t%.6f\t%d\n", rec.iteration, rec.objective,
                  rec.dict_size, rec.keep_probability, rec.rank_deficient ? 1 : 0);
    out << buf;
  }
}

void add_match_options(CLI::App* cmd, MatchConfig& mc, bool* exact) {
  cmd->add_option("--k", mc.k, "Symmetric-Delete depth");
  cmd->add_option("--sim-threshold", mc.sim_threshold, "minimum normalized similarity");
  cmd->add_option("--min-len", mc.min_len, "minimum word length in codepoints");
  cmd->add_option("--min-freq", mc.min_freq, "minimum frequency (counts not supported; must be 1)");
  if (exact)
    cmd->add_flag("--exact-match", *exact, "score every pair instead of using the delete index");
}

void add_mapping_options(CLI::App* cmd, MappingConfig& mc) {
  cmd->add_option("--csls-k", mc.csls_k, "CSLS neighborhood size");
  cmd->add_option("--vocab-cutoff", mc.vocab_cutoff, "words per side used during induction");
  cmd->add_option("--convergence-threshold", mc.convergence_threshold, "stop threshold");
  cmd->add_option("--max-iterations", mc.max_iterations, "iteration cap");
  cmd->add_option("--keep-initial", mc.stochastic_keep_initial, "initial keep probability");
  cmd->add_option("--keep-multiplier", mc.stochastic_multiplier, "keep probability growth factor");
  std::map<std::string, InduceDirection> dirs{{"forward", InduceDirection::forward},
                                              {"backward", InduceDirection::backward},
                                              {"union", InduceDirection::union_both}};
  cmd->add_option("--direction", mc.direction, "induction direction")
      ->transform(CLI::CheckedTransformer(dirs, CLI::ignore_case));
  cmd->add_flag("--advanced-transform", mc.advanced_transform,
                "whiten/re-weight/de-whiten instead of pure Procrustes");
}

int run(int argc, char** argv) {
  CLI::App app{"bilingual word embeddings from cheap monolingual signals"};
  app.require_subcommand(1);

  // ---- extract-identical ----
  auto* id_cmd = app.add_subcommand("extract-identical",
                                    "seed lexicon from strings present in both vocabularies");
  struct {
    std::string src, trg, out;
    std::string src_lang = "src", trg_lang = "trg";
    std::size_t max_vocab = 200000;
  } id_opt;
  id_cmd->add_option("--src-embeddings", id_opt.src)->required();
  id_cmd->add_option("--trg-embeddings", id_opt.trg)->required();
  id_cmd->add_option("--output", id_opt.out)->required();
  id_cmd->add_option("--max-vocab", id_opt.max_vocab);
  id_cmd->add_option("--src-lang", id_opt.src_lang);
  id_cmd->add_option("--trg-lang", id_opt.trg_lang);
  id_cmd->callback([&] {
    EmbeddingSpace a = load_embeddings(id_opt.src, id_opt.max_vocab, id_opt.src_lang);
    EmbeddingSpace b = load_embeddings(id_opt.trg, id_opt.max_vocab, id_opt.trg_lang);
    bool empty = false;
    SeedLexicon lex = extract_identical(a, b, &empty);
    if (empty) std::cerr << "warning: vocabularies share no identical strings\n";
    save_lexicon(lex, id_opt.out);
    std::cout << "identical pairs: " << lex.size() << '\n';
  });

  // ---- romanize ----
  auto* rom_cmd = app.add_subcommand("romanize", "transliterate a word list to Latin");
  struct {
    std::vector<std::string> tables;
    std::string words, embeddings, out;
    std::size_t max_vocab = 200000;
  } rom_opt;
  rom_cmd->add_option("--table", rom_opt.tables, "romanization table file (repeatable)")->required();
  rom_cmd->add_option("--words", rom_opt.words, "plain word list, one per line");
  rom_cmd->add_option("--embeddings", rom_opt.embeddings, "take words from this vocabulary");
  rom_cmd->add_option("--max-vocab", rom_opt.max_vocab);
  rom_cmd->add_option("--output", rom_opt.out)->required();
  rom_cmd->callback([&] {
    if (rom_opt.words.empty() == rom_opt.embeddings.empty())
      throw CLI::ValidationError("romanize", "give exactly one of --words / --embeddings");
    RomanizationTable table = load_tables(rom_opt.tables);
    std::vector<std::string> words = rom_opt.words.empty()
                                         ? load_vocab(rom_opt.embeddings, rom_opt.max_vocab)
                                         : read_word_list(rom_opt.words);
    std::ofstream out(rom_opt.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + rom_opt.out);
    std::size_t uncovered_total = 0;
    for (const auto& w : words) {
      RomanizeResult r = romanize(w, table);
      uncovered_total += r.uncovered;
      out << w << '\t' << r.text << '\n';
    }
    std::cout << "romanized " << words.size() << " words, " << uncovered_total
              << " uncovered codepoints\n";
  });

  // ---- candidates ----
  auto* cand_cmd = app.add_subcommand("candidates", "build or normalize a source candidate list");
  struct {
    std::string corpus, list, out;
    HeuristicConfig heur;
  } cand_opt;
  cand_cmd->add_option("--corpus", cand_opt.corpus, "plain text corpus for the capitalization heuristic");
  cand_cmd->add_option("--list", cand_opt.list, "existing candidate list to lowercase/deduplicate");
  cand_cmd->add_option("--output", cand_opt.out)->required();
  cand_cmd->add_option("--min-count", cand_opt.heur.min_count);
  cand_cmd->add_option("--min-length", cand_opt.heur.min_length);
  cand_cmd->add_option("--capitalized-ratio", cand_opt.heur.capitalized_ratio);
  cand_cmd->callback([&] {
    if (cand_opt.corpus.empty() == cand_opt.list.empty())
      throw CLI::ValidationError("candidates", "give exactly one of --corpus / --list");
    CandidateList list;
    if (!cand_opt.corpus.empty()) {
      std::ifstream in(cand_opt.corpus, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open corpus: " + cand_opt.corpus);
      bool empty = false;
      list = heuristic_candidates(in, cand_opt.heur, &empty);
      if (empty) std::cerr << "warning: no candidates found in corpus\n";
    } else {
      list = load_candidates(cand_opt.list);
    }
    save_candidates(list, cand_opt.out);
    std::cout << "candidates: " << list.words.size() << '\n';
  });

  // ---- match ----
  auto* match_cmd = app.add_subcommand("match", "romanized approximate transliteration pairs");
  struct {
    std::string candidates, trg, out;
    std::vector<std::string> tables;
    std::string src_lang = "src", trg_lang = "trg";
    std::size_t max_vocab = 200000;
    MatchConfig mc;
    bool exact = false;
  } match_opt;
  match_cmd->add_option("--candidates", match_opt.candidates)->required();
  match_cmd->add_option("--trg-embeddings", match_opt.trg)->required();
  match_cmd->add_option("--table", match_opt.tables)->required();
  match_cmd->add_option("--output", match_opt.out)->required();
  match_cmd->add_option("--max-vocab", match_opt.max_vocab);
  match_cmd->add_option("--src-lang", match_opt.src_lang);
  match_cmd->add_option("--trg-lang", match_opt.trg_lang);
  add_match_options(match_cmd, match_opt.mc, &match_opt.exact);
  match_cmd->callback([&] {
    CandidateList cands = load_candidates(match_opt.candidates);
    RomanizationTable table = load_tables(match_opt.tables);
    std::vector<std::string> vocab = load_vocab(match_opt.trg, match_opt.max_vocab);
    MatchStats stats;
    SeedLexicon lex =
        match(cands.ranked(), ranked_words(vocab), table, match_opt.mc, match_opt.exact, &stats);
    lex.src_lang = match_opt.src_lang;
    lex.trg_lang = match_opt.trg_lang;
    if (stats.no_coverage)
      std::cerr << "warning: romanization tables matched nothing in the target vocabulary\n";
    save_lexicon(lex, match_opt.out);
    std::cout << "romanized pairs: " << lex.size() << " (scored " << stats.pairs_scored
              << " candidate pairs)\n";
  });

  // ---- merge ----
  auto* merge_cmd = app.add_subcommand("merge", "union of two lexicons");
  struct {
    std::string a, b, out;
  } merge_opt;
  merge_cmd->add_option("--a", merge_opt.a)->required();
  merge_cmd->add_option("--b", merge_opt.b)->required();
  merge_cmd->add_option("--output", merge_opt.out)->required();
  merge_cmd->callback([&] {
    SeedLexicon lex = merge(load_lexicon(merge_opt.a), load_lexicon(merge_opt.b));
    save_lexicon(lex, merge_opt.out);
    std::cout << "merged pairs: " << lex.size() << '\n';
  });

  // ---- pivot-join ----
  auto* pivot_cmd = app.add_subcommand("pivot-join", "join two lexicons on a shared pivot side");
  struct {
    std::string a, b, out;
  } pivot_opt;
  pivot_cmd->add_option("--a", pivot_opt.a, "pivot -> L1 lexicon")->required();
  pivot_cmd->add_option("--b", pivot_opt.b, "pivot -> L2 lexicon")->required();
  pivot_cmd->add_option("--output", pivot_opt.out)->required();
  pivot_cmd->callback([&] {
    SeedLexicon lex = pivot_join(load_lexicon(pivot_opt.a), load_lexicon(pivot_opt.b));
    save_lexicon(lex, pivot_opt.out);
    std::cout << "pivot pairs: " << lex.size() << '\n';
  });

  // ---- subset ----
  auto* subset_cmd = app.add_subcommand("subset", "frequency-band subset of a lexicon");
  struct {
    std::string lexicon, src, out;
    std::size_t n = 0, max_vocab = 200000;
    bool lowest = false, highest = false;
  } subset_opt;
  subset_cmd->add_option("--lexicon", subset_opt.lexicon)->required();
  subset_cmd->add_option("--src-embeddings", subset_opt.src)->required();
  subset_cmd->add_option("--n", subset_opt.n)->required();
  subset_cmd->add_flag("--lowest", subset_opt.lowest);
  subset_cmd->add_flag("--highest", subset_opt.highest);
  subset_cmd->add_option("--max-vocab", subset_opt.max_vocab);
  subset_cmd->add_option("--output", subset_opt.out)->required();
  subset_cmd->callback([&] {
    if (subset_opt.lowest == subset_opt.highest)
      throw CLI::ValidationError("subset", "give exactly one of --lowest / --highest");
    EmbeddingSpace src = load_embeddings(subset_opt.src, subset_opt.max_vocab);
    SeedLexicon lex = subset_by_frequency(
        load_lexicon(subset_opt.lexicon), src, subset_opt.n,
        subset_opt.lowest ? FrequencyEnd::lowest : FrequencyEnd::highest);
    save_lexicon(lex, subset_opt.out);
    std::cout << "subset pairs: " << lex.size() << '\n';
  });

  // ---- filter-names ----
  auto* filter_cmd = app.add_subcommand("filter-names", "drop pairs whose words appear in a list");
  struct {
    std::string lexicon, names, out, side = "src";
  } filter_opt;
  filter_cmd->add_option("--lexicon", filter_opt.lexicon)->required();
  filter_cmd->add_option("--names", filter_opt.names, "word list, one per line")->required();
  filter_cmd->add_option("--side", filter_opt.side)->check(CLI::IsMember({"src", "trg", "either"}));
  filter_cmd->add_option("--output", filter_opt.out)->required();
  filter_cmd->callback([&] {
    std::unordered_set<std::string> names;
    for (auto& w : read_word_list(filter_opt.names)) names.insert(std::move(w));
    PairSide side = filter_opt.side == "src"   ? PairSide::src
                    : filter_opt.side == "trg" ? PairSide::trg
                                               : PairSide::either;
    SeedLexicon in = load_lexicon(filter_opt.lexicon);
    SeedLexicon out = filter_pairs_by_wordlist(in, names, side);
    save_lexicon(out, filter_opt.out);
    std::cout << "kept " << out.size() << " of " << in.size() << " pairs\n";
  });

  // ---- oov-report ----
  auto* oov_cmd = app.add_subcommand("oov-report", "usable-pair counts against two vocabularies");
  struct {
    std::string lexicon, src, trg, out;
    std::size_t max_vocab = 200000;
  } oov_opt;
  oov_cmd->add_option("--lexicon", oov_opt.lexicon)->required();
  oov_cmd->add_option("--src-embeddings", oov_opt.src)->required();
  oov_cmd->add_option("--trg-embeddings", oov_opt.trg)->required();
  oov_cmd->add_option("--max-vocab", oov_opt.max_vocab);
  oov_cmd->add_option("--output", oov_opt.out, "also write the report to this file");
  oov_cmd->callback([&] {
    EmbeddingSpace src = load_embeddings(oov_opt.src, oov_opt.max_vocab);
    EmbeddingSpace trg = load_embeddings(oov_opt.trg, oov_opt.max_vocab);
    OovReport rep = oov_report(load_lexicon(oov_opt.lexicon), src, trg);
    std::string text = "total_pairs\t" + std::to_string(rep.total_pairs) + "\nusable_pairs\t" +
                       std::to_string(rep.usable_pairs) + "\noov_src\t" +
                       std::to_string(rep.oov_src) + "\noov_trg\t" + std::to_string(rep.oov_trg) +
                       "\n";
    std::cout << text;
    if (!oov_opt.out.empty()) {
      std::ofstream f(oov_opt.out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write: " + oov_opt.out);
      f << text;
    }
  });

  // ---- map ----
  auto* map_cmd = app.add_subcommand("map", "self-learning alignment from a seed lexicon");
  struct {
    std::string src, trg, lexicon, out_dir;
    std::string normalize_plan = "unit,center,unit";
    std::size_t max_vocab = 200000;
    MappingConfig mc;
    std::uint64_t seed = 0;
    int threads = 1;
  } map_opt;
  map_cmd->add_option("--src-embeddings", map_opt.src)->required();
  map_cmd->add_option("--trg-embeddings", map_opt.trg)->required();
  map_cmd->add_option("--lexicon", map_opt.lexicon)->required();
  map_cmd->add_option("--output-dir", map_opt.out_dir)->required();
  map_cmd->add_option("--max-vocab", map_opt.max_vocab);
  map_cmd->add_option("--normalize", map_opt.normalize_plan, "comma list of unit|center steps");
  map_cmd->add_option("--seed", map_opt.seed, "RNG seed");
  map_cmd->add_option("--threads", map_opt.threads);
  add_mapping_options(map_cmd, map_opt.mc);
  map_cmd->callback([&] {
    NormalizationPlan plan = NormalizationPlan::parse(map_opt.normalize_plan);
    EmbeddingSpace src = normalize(load_embeddings(map_opt.src, map_opt.max_vocab), plan);
    EmbeddingSpace trg = normalize(load_embeddings(map_opt.trg, map_opt.max_vocab), plan);
    SeedLexicon lex = load_lexicon(map_opt.lexicon);
    map_opt.mc.seed = map_opt.seed;
    map_opt.mc.threads = map_opt.threads;
    MappingResult res = self_learn(src, trg, lex, map_opt.mc);

    fs::create_directories(map_opt.out_dir);
    save_embeddings(apply_mapping(src, res.w_src),
                    (fs::path(map_opt.out_dir) / "mapped_src.vec").string());
    save_embeddings(apply_mapping(trg, res.w_trg),
                    (fs::path(map_opt.out_dir) / "mapped_trg.vec").string());
    write_trace(res.trace, (fs::path(map_opt.out_dir) / "trace.tsv").string());
    std::cout << "iterations: " << res.trace.size() << ", best objective "
              << res.trace[res.best_iteration].objective << " at iteration " << res.best_iteration
              << ", dictionary " << res.induced_dict.size() << " pairs\n";
  });

  // ---- evaluate ----
  auto* eval_cmd = app.add_subcommand("evaluate", "acc@1 with CSLS retrieval on mapped spaces");
  struct {
    std::string src, trg, test, out;
    std::size_t max_vocab = 200000;
    EvalConfig ec;
    bool per_query = false;
  } eval_opt;
  eval_cmd->add_option("--src-mapped", eval_opt.src)->required();
  eval_cmd->add_option("--trg-mapped", eval_opt.trg)->required();
  eval_cmd->add_option("--test-lexicon", eval_opt.test)->required();
  eval_cmd->add_option("--max-vocab", eval_opt.max_vocab);
  eval_cmd->add_option("--csls-k", eval_opt.ec.csls_k);
  eval_cmd->add_option("--threads", eval_opt.ec.threads);
  eval_cmd->add_flag("--per-query", eval_opt.per_query, "dump per-query predictions");
  eval_cmd->add_flag("--count-skipped-as-errors", eval_opt.ec.count_skipped_as_errors);
  eval_cmd->add_option("--output", eval_opt.out, "write the report to this file");
  eval_cmd->callback([&] {
    EmbeddingSpace src = load_embeddings(eval_opt.src, eval_opt.max_vocab);
    EmbeddingSpace trg = load_embeddings(eval_opt.trg, eval_opt.max_vocab);
    EvalReport rep = evaluate_bdi(src, trg, load_lexicon(eval_opt.test), eval_opt.ec);
    std::cout << "acc@1: " << rep.acc_percent() << " (" << rep.hits << "/"
              << rep.evaluated_queries << " queries, " << rep.skipped_oov << " skipped)\n";
    if (!eval_opt.out.empty()) save_eval_report(rep, eval_opt.out, eval_opt.per_query);
  });

  // ---- pipeline ----
  auto* pipe_cmd = app.add_subcommand("pipeline", "end-to-end run driven by a config file");
  pipe_cmd->set_config("--config", "", "declarative config file; flags override");
  PipelineConfig pc;
  std::string mode_name = "id";
  std::string plan_str = "unit,center,unit";
  pipe_cmd->add_option("--src-embeddings", pc.src_embeddings);
  pipe_cmd->add_option("--trg-embeddings", pc.trg_embeddings);
  pipe_cmd->add_option("--table", pc.tables);
  pipe_cmd->add_option("--candidates", pc.candidates_path);
  pipe_cmd->add_option("--test-lexicon", pc.test_lexicon);
  pipe_cmd->add_option("--external-lexicon", pc.external_lexicon);
  pipe_cmd->add_option("--pivot-a", pc.pivot_lexicon_a);
  pipe_cmd->add_option("--pivot-b", pc.pivot_lexicon_b);
  pipe_cmd->add_option("--output-dir", pc.output_dir);
  pipe_cmd->add_option("--src-lang", pc.src_lang);
  pipe_cmd->add_option("--trg-lang", pc.trg_lang);
  pipe_cmd->add_option("--mode", mode_name)
      ->check(CLI::IsMember({"id", "rom", "idpp", "external", "pivot"}));
  pipe_cmd->add_option("--max-vocab", pc.max_vocab);
  pipe_cmd->add_option("--normalize", plan_str, "comma list of unit|center steps");
  pipe_cmd->add_option("--seed", pc.seed);
  pipe_cmd->add_option("--threads", pc.threads);
  pipe_cmd->add_flag("--per-query", pc.dump_queries);
  add_match_options(pipe_cmd, pc.match, &pc.exact_match);
  add_mapping_options(pipe_cmd, pc.mapping);
  pipe_cmd->callback([&] {
    pc.mode = parse_lexicon_mode(mode_name);
    pc.plan = NormalizationPlan::parse(plan_str);
    PipelineArtifacts art = run_pipeline(pc);
    std::cout << "seed pairs: " << art.seed_pairs << " (" << art.oov.usable_pairs << " usable)\n";
    std::cout << "iterations: " << art.iterations << ", objective " << art.final_objective << '\n';
    if (art.eval) std::cout << "acc@1: " << art.eval->acc_percent() << '\n';
    std::cout << "artifacts in " << pc.output_dir << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
