#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "forge/acquire/snippet.hpp"
#include "forge/common/error.hpp"
#include "forge/coref/merge.hpp"
#include "forge/corpus/standoff.hpp"
#include "forge/corpus/validate.hpp"
#include "forge/discourse/segment.hpp"
#include "forge/ensemble/model.hpp"
#include "forge/metrics/coref.hpp"
#include "forge/metrics/rst.hpp"
#include "forge/metrics/scores.hpp"
#include "forge/pipeline/runner.hpp"
#include "forge/pipeline/state.hpp"
#include "forge/split/splitter.hpp"
#include "forge/tokenize/rules.hpp"
#include "forge/tokenize/tokenizer.hpp"

namespace fs = std::filesystem;
using forge::Error;
using forge::corpus::Document;
using ordered_json = nlohmann::ordered_json;

namespace {

// State-style document directories under root (any subdir with a text.txt).
std::vector<fs::path> doc_dirs(const fs::path& root) {
  std::vector<fs::path> dirs;
  if (!fs::is_directory(root)) throw Error("io", "not a directory: " + root.string());
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && fs::exists(e.path() / "text.txt")) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

std::set<std::string> abbrev_or_default(const std::string& path) {
  if (path.empty()) return forge::tokenize::default_abbreviations();
  return forge::acquire::stoplist_from_text(forge::pipeline::read_file(path));
}

ordered_json prf_json(const forge::metrics::Prf& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

int run_eval(const std::string& layer, const fs::path& gold_root, const fs::path& pred_root,
             bool keep_singletons, bool boundary_mode, const std::string& out_path) {
  using namespace forge::metrics;

  std::vector<std::string> ids;
  for (const auto& dir : doc_dirs(gold_root)) {
    const std::string id = dir.filename().string();
    if (fs::exists(pred_root / id / "text.txt")) ids.push_back(id);
  }
  if (ids.empty()) throw Error("input", "no documents shared between gold and pred");

  ordered_json per_doc = ordered_json::object();
  MatchCounts match_total;
  TagCounts tag_total;
  AttachmentCounts attach_total;
  CorefCounts coref_total;
  RstCounts rst_total;

  for (const auto& id : ids) {
    const Document gold = forge::pipeline::load_document(gold_root / id);
    const Document pred = forge::pipeline::load_document(pred_root / id);
    ordered_json entry;
    if (layer == "tokens") {
      if (!gold.tokens || !pred.tokens) throw Error("input", "missing token layer in " + id);
      auto spans = [](const Document& d) {
        std::vector<Span> out;
        for (const auto& t : *d.tokens) out.push_back({t.start, t.end});
        return out;
      };
      const auto c = boundary_mode ? token_boundary_counts(spans(gold), spans(pred))
                                   : tokenization_counts(spans(gold), spans(pred));
      match_total.add(c);
      entry = prf_json(c.prf());
    } else if (layer == "tags") {
      if (!gold.tokens || !pred.tokens) throw Error("input", "missing token layer in " + id);
      auto tags = [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& t : *d.tokens) out.push_back(t.xpos);
        return out;
      };
      const auto c = tagging_counts(tags(gold), tags(pred));
      tag_total.add(c);
      entry["accuracy"] = c.accuracy();
    } else if (layer == "attachment") {
      if (!gold.arcs || !pred.arcs) throw Error("input", "missing arc layer in " + id);
      const auto c = attachment_counts(*gold.arcs, *pred.arcs);
      attach_total.add(c);
      entry["uas"] = c.scores().uas;
      entry["las"] = c.scores().las;
    } else if (layer == "entities") {
      if (!gold.mentions || !pred.mentions) throw Error("input", "missing entity layer in " + id);
      const auto c = nested_entity_counts(*gold.mentions, *pred.mentions);
      match_total.add(c);
      entry = prf_json(c.prf());
    } else if (layer == "coref") {
      if (!gold.mentions || !pred.mentions) throw Error("input", "missing entity layer in " + id);
      auto chains_of = [](const Document& d) {
        std::map<std::string, Chain> by_id;
        std::map<std::string, std::pair<std::size_t, std::size_t>> span_of;
        for (const auto& m : *d.mentions) span_of[m.id] = {m.first_token, m.last_token};
        std::vector<Chain> chains;
        if (d.chains)
          for (const auto& c : *d.chains) {
            Chain chain;
            for (const auto& mid : c.mentions)
              if (span_of.count(mid)) chain.push_back(span_of[mid]);
            if (!chain.empty()) chains.push_back(std::move(chain));
          }
        // Unchained mentions score as singleton chains.
        for (const auto& m : *d.mentions)
          if (m.chain.empty()) chains.push_back({{m.first_token, m.last_token}});
        return chains;
      };
      const auto c = coref_counts(chains_of(gold), chains_of(pred), keep_singletons);
      coref_total.add(c);
      const auto s = c.finish();
      entry["muc"] = prf_json(s.muc);
      entry["b3"] = prf_json(s.b3);
      entry["ceaf_phi4"] = prf_json(s.ceaf_e);
      entry["avg_f1"] = s.avg_f1;
    } else if (layer == "rst") {
      if (!gold.rst || !pred.rst) throw Error("input", "missing rst layer in " + id);
      const auto c = rst_counts(*gold.rst, *pred.rst);
      rst_total.add(c);
      const auto s = c.scores();
      entry["span"] = s.span;
      entry["nuclearity"] = s.nuclearity;
      entry["relation"] = s.relation;
    } else {
      throw Error("config", "unknown eval layer: " + layer);
    }
    per_doc[id] = std::move(entry);
  }

  ordered_json corpus;
  if (layer == "tokens" || layer == "entities") {
    corpus = prf_json(match_total.prf());
  } else if (layer == "tags") {
    corpus["accuracy"] = tag_total.accuracy();
  } else if (layer == "attachment") {
    corpus["uas"] = attach_total.scores().uas;
    corpus["las"] = attach_total.scores().las;
  } else if (layer == "coref") {
    const auto s = coref_total.finish();
    corpus["muc"] = prf_json(s.muc);
    corpus["b3"] = prf_json(s.b3);
    corpus["ceaf_phi4"] = prf_json(s.ceaf_e);
    corpus["avg_f1"] = s.avg_f1;
  } else if (layer == "rst") {
    const auto s = rst_total.scores();
    corpus["span"] = s.span;
    corpus["nuclearity"] = s.nuclearity;
    corpus["relation"] = s.relation;
  }

  ordered_json report;
  report["layer"] = layer;
  report["documents"] = std::move(per_doc);
  report["corpus"] = std::move(corpus);
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    forge::pipeline::write_file(out_path, text);
  return 0;
}

std::string read_pred_input(const std::string& path) {
  std::string merged;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".tsv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) merged += forge::pipeline::read_file(f);
  } else {
    merged = forge::pipeline::read_file(path);
  }
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge — genre-balanced corpus construction and evaluation toolkit"};
  app.require_subcommand(1);

  try {
    // ---------------- run ----------------
    auto* run = app.add_subcommand("run", "run the pipeline stages from a config file");
    std::string run_config;
    std::uint64_t run_seed = 0;
    int run_workers = 1;
    std::string run_report_path;
    run->add_option("--config", run_config, "pipeline config file")->required();
    run->add_option("--seed", run_seed, "corpus seed");
    run->add_option("--workers", run_workers, "parallel workers");
    run->add_option("--report", run_report_path, "where to write the run report JSON");
    run->callback([&]() {
      auto cfg = forge::pipeline::Config::load(run_config);
      if (run->count("--seed") == 0) run_seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
      const auto report = forge::pipeline::run_pipeline(cfg, run_seed, run_workers, std::cerr);
      const std::string path = !run_report_path.empty()
                                   ? run_report_path
                                   : cfg.get("state", "state") + "_report.json";
      forge::pipeline::write_file(path, report.to_json());
      std::cerr << "documents: " << report.documents << ", hard errors: " << report.hard_errors
                << ", elapsed: " << report.elapsed_ms << " ms\n";
      if (report.hard_errors > 0) throw CLI::RuntimeError(1);
    });

    // ---------------- acquire ----------------
    auto* acq = app.add_subcommand("acquire", "screen candidates and extract snippets");
    std::string acq_in, acq_out, acq_genre, acq_stoplist;
    std::uint64_t acq_seed = 0;
    long acq_min = 400, acq_cap = 1000;
    double acq_ratio = 0.10;
    long acq_emails = 5;
    acq->add_option("--in", acq_in, "candidate directory (*.json)")->required();
    acq->add_option("--out", acq_out, "state directory to write")->required();
    acq->add_option("--genre", acq_genre, "only acquire this genre");
    acq->add_option("--seed", acq_seed, "corpus seed");
    acq->add_option("--min-words", acq_min, "minimum snippet words");
    acq->add_option("--cap-words", acq_cap, "word cap before the slice stops");
    acq->add_option("--stoplist", acq_stoplist, "stoplist file (one form per line)");
    acq->add_option("--max-link-ratio", acq_ratio, "forum URL-token ratio cap");
    acq->add_option("--max-email-count", acq_emails, "forum email token cap");
    acq->callback([&]() {
      forge::pipeline::Config cfg;
      cfg.set("stages", "acquire");
      cfg.set("candidates", acq_in);
      cfg.set("state", acq_out);
      if (!acq_genre.empty()) cfg.set("genre", acq_genre);
      cfg.set("acquire.min_words", std::to_string(acq_min));
      cfg.set("acquire.cap_words", std::to_string(acq_cap));
      if (!acq_stoplist.empty()) cfg.set("acquire.stoplist", acq_stoplist);
      cfg.set("acquire.max_link_ratio", std::to_string(acq_ratio));
      cfg.set("acquire.max_email_count", std::to_string(acq_emails));
      const auto report = forge::pipeline::run_pipeline(cfg, acq_seed, 1, std::cerr);
      forge::pipeline::write_file(acq_out + "_report.json", report.to_json());
      if (report.hard_errors > 0) throw CLI::RuntimeError(1);
    });

    // ---------------- tokenize ----------------
    auto* tok = app.add_subcommand("tokenize", "tokenize state documents");
    std::string tok_docs, tok_rules, tok_abbrev;
    tok->add_option("--docs", tok_docs, "state directory")->required();
    tok->add_option("--rules", tok_rules, "postprocessing rule file (JSON)");
    tok->add_option("--abbrev", tok_abbrev, "abbreviation list");
    tok->callback([&]() {
      std::vector<forge::tokenize::TokenRule> rules;
      if (!tok_rules.empty())
        rules = forge::tokenize::rules_from_json(forge::pipeline::read_file(tok_rules));
      forge::tokenize::TokenizerOptions opts;
      opts.abbreviations = abbrev_or_default(tok_abbrev);
      for (const auto& dir : doc_dirs(tok_docs)) {
        Document doc = forge::pipeline::load_document(dir);
        auto tokens = forge::tokenize::tokenize(doc.raw_text, doc.markup, opts);
        if (!rules.empty())
          tokens = forge::tokenize::apply_rules(
              doc.raw_text, tokens, forge::tokenize::rules_for_genre(rules, doc.genre));
        doc.tokens = std::move(tokens);
        doc.sentences.reset();
        doc.arcs.reset();
        forge::pipeline::save_document(dir, doc);
      }
    });

    // ---------------- split ----------------
    auto* spl = app.add_subcommand("split", "sentence-split state documents");
    std::string spl_docs, spl_abbrev, spl_boundaries;
    spl->add_option("--docs", spl_docs, "state directory")->required();
    spl->add_option("--abbrev", spl_abbrev, "abbreviation list");
    spl->add_option("--boundaries", spl_boundaries,
                    "directory of external sentence-start files (<doc>.txt)");
    spl->callback([&]() {
      forge::split::SplitterOptions opts;
      opts.abbreviations = abbrev_or_default(spl_abbrev);
      for (const auto& dir : doc_dirs(spl_docs)) {
        Document doc = forge::pipeline::load_document(dir);
        if (!doc.tokens) throw Error("input", "no tokens in " + dir.string());
        std::vector<std::string> tags;
        for (const auto& t : *doc.tokens) tags.push_back(t.xpos);
        if (!spl_boundaries.empty()) {
          const fs::path bpath = fs::path(spl_boundaries) / (doc.id + ".txt");
          std::set<std::size_t> starts;
          if (fs::exists(bpath))
            starts = forge::discourse::boundaries_from_text(forge::pipeline::read_file(bpath));
          doc.sentences = forge::split::split_sentences_with(starts, *doc.tokens, tags, doc.markup);
        } else {
          doc.sentences = forge::split::split_sentences(*doc.tokens, tags, doc.markup, opts);
        }
        forge::pipeline::save_document(dir, doc);
      }
    });

    // ---------------- ensemble ----------------
    auto* ens = app.add_subcommand("ensemble", "tag-ensemble stacking operations");
    ens->require_subcommand(1);

    auto* folds_cmd = ens->add_subcommand("folds", "build a genre-stratified fold plan");
    std::string folds_manifest, folds_out;
    int folds_k = 5;
    std::uint64_t folds_seed = 0;
    folds_cmd->add_option("--manifest", folds_manifest, "manifest JSONL")->required();
    folds_cmd->add_option("--k", folds_k, "fold count");
    folds_cmd->add_option("--seed", folds_seed, "seed");
    folds_cmd->add_option("--out", folds_out, "fold plan JSON")->required();
    folds_cmd->callback([&]() {
      const auto manifest =
          forge::corpus::manifest_from_jsonl(forge::pipeline::read_file(folds_manifest));
      std::vector<std::pair<std::string, forge::corpus::Genre>> docs;
      for (const auto& e : manifest) docs.emplace_back(e.id, e.genre);
      const auto plan = forge::ensemble::make_folds(docs, folds_k, folds_seed);
      forge::pipeline::write_file(folds_out, plan.to_json());
    });

    auto* matrix_cmd = ens->add_subcommand("matrix", "assemble the stacked training matrix");
    std::string mx_docs, mx_folds, mx_out;
    std::vector<std::string> mx_fold_preds, mx_full_preds;
    matrix_cmd->add_option("--docs", mx_docs, "state directory with gold tags")->required();
    matrix_cmd->add_option("--folds", mx_folds, "fold plan JSON")->required();
    matrix_cmd->add_option("--fold-preds", mx_fold_preds, "re-trained prediction TSV(s)")
        ->required();
    matrix_cmd->add_option("--full-preds", mx_full_preds, "pre-trained prediction TSV(s)");
    matrix_cmd->add_option("--out", mx_out, "matrix TSV")->required();
    matrix_cmd->callback([&]() {
      std::vector<forge::ensemble::GoldToken> gold;
      for (const auto& dir : doc_dirs(mx_docs)) {
        const Document doc = forge::pipeline::load_document(dir);
        if (!doc.tokens) throw Error("input", "no tokens in " + dir.string());
        for (const auto& t : *doc.tokens) gold.push_back({{doc.id, t.index}, t.form, t.xpos});
      }
      const auto plan =
          forge::ensemble::FoldPlan::from_json(forge::pipeline::read_file(mx_folds));
      std::vector<forge::ensemble::TaggerPredictions> taggers;
      for (const auto& f : mx_fold_preds)
        for (auto& tp : forge::ensemble::predictions_from_tsv(read_pred_input(f), true))
          taggers.push_back(std::move(tp));
      for (const auto& f : mx_full_preds)
        for (auto& tp : forge::ensemble::predictions_from_tsv(read_pred_input(f), false))
          taggers.push_back(std::move(tp));
      const auto matrix = forge::ensemble::assemble_stack_matrix(taggers, gold, plan);
      forge::pipeline::write_file(mx_out, matrix.to_tsv());
    });

    auto* fit_cmd = ens->add_subcommand("fit", "train the meta-combiner");
    std::string fit_matrix, fit_out;
    forge::ensemble::GbdtParams fit_params;
    bool fit_tags_only = false;
    fit_cmd->add_option("--matrix", fit_matrix, "matrix TSV")->required();
    fit_cmd->add_option("--out", fit_out, "model JSON")->required();
    fit_cmd->add_option("--trees", fit_params.n_trees, "boosting rounds");
    fit_cmd->add_option("--depth", fit_params.max_depth, "tree depth");
    fit_cmd->add_option("--lr", fit_params.learning_rate, "shrinkage");
    fit_cmd->add_option("--seed", fit_params.seed, "seed");
    fit_cmd->add_flag("--tags-only", fit_tags_only, "use tag columns only, no shape features");
    fit_cmd->callback([&]() {
      const auto matrix =
          forge::ensemble::StackMatrix::from_tsv(forge::pipeline::read_file(fit_matrix));
      const auto model = forge::ensemble::fit_meta(matrix, fit_params, fit_tags_only);
      forge::pipeline::write_file(fit_out, model.to_json());
      std::cerr << "training accuracy: " << model.train_accuracy << "\n";
    });

    auto* apply_cmd = ens->add_subcommand("apply", "apply the ensemble to base predictions");
    std::string ap_model, ap_preds, ap_out;
    apply_cmd->add_option("--model", ap_model, "model JSON")->required();
    apply_cmd->add_option("--preds", ap_preds, "base prediction TSV or directory")->required();
    apply_cmd->add_option("--out", ap_out, "output TSV (doc, ordinal, tag)")->required();
    apply_cmd->callback([&]() {
      const auto model = forge::ensemble::StackModel::from_json(forge::pipeline::read_file(ap_model));
      const auto taggers = forge::ensemble::predictions_from_tsv(read_pred_input(ap_preds), false);
      const auto base = forge::ensemble::pivot_predictions(taggers, model.tagger_order);
      const auto tags = forge::ensemble::apply_ensemble(base, model);
      std::string out;
      for (std::size_t i = 0; i < tags.size(); ++i)
        out += base.rows[i].key.doc + "\t" + std::to_string(base.rows[i].key.ordinal) + "\t" +
               tags[i] + "\n";
      forge::pipeline::write_file(ap_out, out);
    });

    auto* vote_cmd = ens->add_subcommand("vote", "majority-vote baseline");
    std::string vt_preds, vt_priority, vt_out;
    vote_cmd->add_option("--preds", vt_preds, "base prediction TSV or directory")->required();
    vote_cmd->add_option("--priority", vt_priority, "comma-separated tagger priority")->required();
    vote_cmd->add_option("--out", vt_out, "output TSV (doc, ordinal, tag)")->required();
    vote_cmd->callback([&]() {
      std::vector<std::string> priority;
      std::size_t start = 0;
      while (start <= vt_priority.size()) {
        auto comma = vt_priority.find(',', start);
        if (comma == std::string::npos) comma = vt_priority.size();
        priority.push_back(vt_priority.substr(start, comma - start));
        if (comma == vt_priority.size()) break;
        start = comma + 1;
      }
      const auto taggers = forge::ensemble::predictions_from_tsv(read_pred_input(vt_preds), false);
      const auto base = forge::ensemble::pivot_predictions(taggers, priority);
      const auto tags = forge::ensemble::majority_vote(base, priority);
      std::string out;
      for (std::size_t i = 0; i < tags.size(); ++i)
        out += base.rows[i].key.doc + "\t" + std::to_string(base.rows[i].key.ordinal) + "\t" +
               tags[i] + "\n";
      forge::pipeline::write_file(vt_out, out);
    });

    // ---------------- eval ----------------
    auto* ev = app.add_subcommand("eval", "score a layer: tokens|tags|attachment|entities|coref|rst");
    std::string ev_layer, ev_gold, ev_pred, ev_out;
    bool ev_keep_singletons = false, ev_boundary = false;
    ev->add_option("layer", ev_layer, "layer to score")->required();
    ev->add_option("--gold", ev_gold, "gold state directory")->required();
    ev->add_option("--pred", ev_pred, "predicted state directory")->required();
    ev->add_flag("--keep-singletons", ev_keep_singletons, "keep singleton chains in coref scoring");
    ev->add_flag("--boundaries", ev_boundary, "boundary-based tokenization scoring");
    ev->add_option("--out", ev_out, "write the report here instead of stdout");
    ev->callback([&]() {
      run_eval(ev_layer, ev_gold, ev_pred, ev_keep_singletons, ev_boundary, ev_out);
    });

    // ---------------- budget ----------------
    auto* bud = app.add_subcommand("budget", "per-genre token totals vs targets");
    std::string bud_manifest, bud_state;
    long bud_target = 500000;
    bud->add_option("--manifest", bud_manifest, "manifest JSONL")->required();
    bud->add_option("--state", bud_state, "state root (defaults to the manifest directory)");
    bud->add_option("--target", bud_target, "per-genre token target");
    bud->callback([&]() {
      const auto manifest =
          forge::corpus::manifest_from_jsonl(forge::pipeline::read_file(bud_manifest));
      const fs::path state_root =
          bud_state.empty() ? fs::path(bud_manifest).parent_path() : fs::path(bud_state);
      const auto rows = forge::pipeline::genre_budget_report(manifest, state_root, bud_target);
      std::cout << forge::pipeline::budget_to_json(rows);
    });

    // ---------------- standoff ----------------
    auto* soff = app.add_subcommand("standoff", "pack/unpack stand-off bundles");
    soff->require_subcommand(1);
    auto* pack = soff->add_subcommand("pack", "document directory -> bundle JSON");
    std::string pk_doc, pk_out;
    pack->add_option("--doc", pk_doc, "document state directory")->required();
    pack->add_option("--out", pk_out, "bundle JSON path")->required();
    pack->callback([&]() {
      const Document doc = forge::pipeline::load_document(pk_doc);
      const auto bundle = forge::corpus::to_standoff(doc);
      forge::pipeline::write_file(pk_out, forge::corpus::bundle_to_json(bundle));
    });
    auto* unpack = soff->add_subcommand("unpack", "bundle JSON + recovered text -> document");
    std::string up_bundle, up_text, up_out;
    unpack->add_option("--bundle", up_bundle, "bundle JSON path")->required();
    unpack->add_option("--text", up_text, "recovered raw text file")->required();
    unpack->add_option("--out", up_out, "document state directory to write")->required();
    unpack->callback([&]() {
      const auto bundle =
          forge::corpus::bundle_from_json(forge::pipeline::read_file(up_bundle));
      const Document doc =
          forge::corpus::rehydrate(bundle, forge::pipeline::read_file(up_text));
      forge::pipeline::save_document(up_out, doc);
    });

    // ---------------- validate ----------------
    auto* val = app.add_subcommand("validate", "validate every document in a state directory");
    std::string val_docs;
    val->add_option("--docs", val_docs, "state directory")->required();
    val->callback([&]() {
      std::size_t bad = 0;
      for (const auto& dir : doc_dirs(val_docs)) {
        const Document doc = forge::pipeline::load_document(dir);
        const auto report = forge::corpus::validate_document(doc);
        if (!report.ok()) {
          ++bad;
          for (const auto& v : report.violations)
            std::cout << doc.id << "\t" << v.rule << "\t" << v.layer << "\t" << v.location << "\t"
                      << v.message << "\n";
        }
      }
      std::cerr << (bad == 0 ? "all documents valid\n"
                             : std::to_string(bad) + " document(s) with violations\n");
      if (bad > 0) throw CLI::RuntimeError(1);
    });

    // ---------------- features ----------------
    auto* feat = app.add_subcommand("features", "emit per-EDU discourse feature tables");
    std::string ft_docs;
    std::vector<std::string> ft_external;
    feat->add_option("--docs", ft_docs, "state directory")->required();
    feat->add_option("--external", ft_external,
                     "name=dir of per-doc column files (<doc>.txt, one value per EDU)");
    feat->callback([&]() {
      for (const auto& dir : doc_dirs(ft_docs)) {
        const Document doc = forge::pipeline::load_document(dir);
        if (!doc.tokens || !doc.sentences || !doc.edus)
          throw Error("input", "features need tokens, sentences and EDUs: " + dir.string());
        std::vector<forge::discourse::ExternalColumn> external;
        for (const auto& spec : ft_external) {
          const auto eq = spec.find('=');
          if (eq == std::string::npos) throw Error("config", "--external expects name=dir");
          forge::discourse::ExternalColumn col;
          col.name = spec.substr(0, eq);
          const fs::path path = fs::path(spec.substr(eq + 1)) / (doc.id + ".txt");
          std::istringstream in{forge::pipeline::read_file(path)};
          std::string line;
          while (std::getline(in, line)) col.values.push_back(line);
          external.push_back(std::move(col));
        }
        const auto table = forge::discourse::featurize_edus(*doc.edus, *doc.tokens,
                                                            *doc.sentences, doc.markup,
                                                            doc.genre, external);
        forge::pipeline::write_file(dir / "edu_features.tsv", table.to_tsv());
      }
    });

    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
