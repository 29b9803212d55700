#include "forge/pipeline/runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "forge/acquire/boilerplate.hpp"
#include "forge/acquire/snippet.hpp"
#include "forge/common/error.hpp"
#include "forge/common/rng.hpp"
#include "forge/common/text.hpp"
#include "forge/coref/merge.hpp"
#include "forge/corpus/validate.hpp"
#include "forge/discourse/segment.hpp"
#include "forge/ensemble/model.hpp"
#include "forge/pipeline/state.hpp"
#include "forge/split/splitter.hpp"
#include "forge/tokenize/rules.hpp"
#include "forge/tokenize/tokenizer.hpp"

namespace forge::pipeline {

namespace fs = std::filesystem;
using corpus::Document;
using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kStageOrder = {
    "acquire", "tokenize", "split", "tag", "merge-entities", "constrain-edus", "validate"};

namespace {

struct DocOutcome {
  std::string doc;
  bool ok = true;
  std::string rejected;  // non-empty = filtered out with this reason
  std::string error;     // non-empty = hard failure
};

// Runs fn over indices [0,n) with up to `workers` threads; outcomes keep
// input order so reports and manifests stay deterministic.
template <typename Fn>
std::vector<DocOutcome> for_each_doc(std::size_t n, int workers, Fn fn) {
  std::vector<DocOutcome> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::future<void>> futures;
  for (std::size_t t = 0; t < w; ++t) {
    futures.push_back(std::async(std::launch::async, [&, t]() {
      for (std::size_t i = t; i < n; i += w) out[i] = fn(i);
    }));
  }
  for (auto& f : futures) f.get();
  return out;
}

std::set<std::string> load_stoplist_file(const std::string& path) {
  if (path.empty()) return {};
  return acquire::stoplist_from_text(read_file(path));
}

std::set<std::string> load_abbrev_file(const std::string& path) {
  if (path.empty()) return tokenize::default_abbreviations();
  return acquire::stoplist_from_text(read_file(path));
}

void flatten_thread(const acquire::ThreadNode& node, std::vector<acquire::ThreadNode>& out) {
  out.push_back(node);
  for (const auto& c : node.children) flatten_thread(c, out);
}

// Slice a snippet out of a document: markup fully inside survives, re-based.
Document slice_document(const Document& doc, std::size_t start, std::size_t end) {
  Document out;
  out.id = doc.id;
  out.genre = doc.genre;
  out.source = doc.source;
  out.raw_text = text::slice(doc.raw_text, start, end);
  for (const auto& span : doc.markup)
    if (span.start >= start && span.end <= end)
      out.markup.push_back({span.kind, span.start - start, span.end - start, span.attrs});
  return out;
}

struct AcquireSettings {
  std::size_t min_words = 400;
  std::size_t cap_words = 1000;
  std::set<std::string> stoplist;
  double max_link_ratio = 0.10;
  std::size_t max_email_count = 5;
  acquire::ThreadSampleOptions thread;
};

struct AcquireOutcome {
  std::optional<Document> doc;
  std::string reason;   // empty = accepted
  std::string detail;   // verdict detail (counts, offending form)
  std::size_t words = 0;
};

// Screening + extent sampling for one candidate.
AcquireOutcome acquire_candidate(const Candidate& cand, const AcquireSettings& s,
                                 std::uint64_t seed) {
  AcquireOutcome out;
  if (cand.thread) {
    auto verdict = acquire::screen_forum(*cand.thread, s.max_link_ratio, s.max_email_count);
    if (!verdict.accepted) {
      out.reason = std::string(to_string(verdict.reason));
      out.detail = verdict.detail;
      return out;
    }
    std::vector<acquire::ThreadNode> posts;
    flatten_thread(*cand.thread, posts);
    auto sampled = acquire::sample_thread(posts, seed, s.thread);
    if (!sampled.sample) {
      out.reason = std::string(to_string(sampled.reject));
      return out;
    }
    Document doc = std::move(sampled.sample->doc);
    doc.id = cand.id;
    doc.genre = cand.genre;
    doc.source = cand.source;
    out.words = sampled.sample->snippet.word_count;
    out.doc = std::move(doc);
    return out;
  }

  const Document& plain = *cand.plain;
  if (cand.genre == corpus::Genre::fiction) {
    auto verdict = acquire::screen_fiction(plain.raw_text, cand.metadata_keywords, s.stoplist);
    if (!verdict.accepted) {
      out.reason = std::string(to_string(verdict.reason));
      out.detail = verdict.detail;
      return out;
    }
  } else if (cand.genre == corpus::Genre::forum) {
    acquire::ThreadNode as_thread{cand.id, "", plain.raw_text, {}};
    auto verdict = acquire::screen_forum(as_thread, s.max_link_ratio, s.max_email_count);
    if (!verdict.accepted) {
      out.reason = std::string(to_string(verdict.reason));
      out.detail = verdict.detail;
      return out;
    }
  }

  auto stripped = acquire::strip_boilerplate(plain);
  if (!stripped.doc) {
    out.reason = std::string(to_string(stripped.verdict.reason));
    return out;
  }

  auto snip = acquire::extract_snippet(*stripped.doc, seed, s.min_words, s.cap_words);
  if (!snip.snippet) {
    out.reason = std::string(to_string(snip.reject));
    out.words = text::count_words(stripped.doc->raw_text);
    return out;
  }
  out.words = snip.snippet->word_count;
  out.doc = slice_document(*stripped.doc, snip.snippet->start_char, snip.snippet->end_char);
  return out;
}

std::map<std::string, std::vector<ensemble::TaggerPredictions::Row>> group_rows_by_doc(
    const std::vector<ensemble::TaggerPredictions>& taggers, const std::string& tagger) {
  std::map<std::string, std::vector<ensemble::TaggerPredictions::Row>> out;
  for (const auto& tp : taggers) {
    if (tp.tagger != tagger) continue;
    for (const auto& row : tp.rows) out[row.key.doc].push_back(row);
  }
  return out;
}

}  // namespace

std::string RunReport::to_json() const {
  ordered_json j;
  j["documents"] = documents;
  j["hard_errors"] = hard_errors;
  j["elapsed_ms"] = elapsed_ms;
  ordered_json stages_json = ordered_json::array();
  for (const auto& s : stages) {
    ordered_json sj;
    sj["stage"] = s.name;
    sj["processed"] = s.processed;
    sj["succeeded"] = s.succeeded;
    ordered_json rejects = ordered_json::array();
    for (const auto& [doc, reason] : s.rejected) rejects.push_back({{"doc", doc}, {"reason", reason}});
    sj["rejected"] = std::move(rejects);
    ordered_json failures = ordered_json::array();
    for (const auto& [doc, error] : s.failed) failures.push_back({{"doc", doc}, {"error", error}});
    sj["failed"] = std::move(failures);
    stages_json.push_back(std::move(sj));
  }
  j["stages"] = std::move(stages_json);
  return j.dump(2) + "\n";
}

RunReport run_pipeline(const Config& config, std::uint64_t seed, int workers, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();

  // --- configuration validation, before any processing ---
  const auto stages = config.get_list("stages");
  if (stages.empty()) throw Error("config", "no stages configured");
  if (stages.size() > kStageOrder.size())
    throw Error("config", "too many stages");
  for (std::size_t i = 0; i < stages.size(); ++i)
    if (stages[i] != kStageOrder[i])
      throw Error("config", "stages must form a prefix of acquire -> tokenize -> split -> tag -> "
                            "merge-entities -> constrain-edus -> validate; got '" +
                                stages[i] + "' at position " + std::to_string(i));
  const auto has_stage = [&](const std::string& name) {
    return std::find(stages.begin(), stages.end(), name) != stages.end();
  };

  const fs::path state_root = config.get("state", "state");
  const fs::path candidates_dir = config.get("candidates", "");
  if (has_stage("acquire") && (candidates_dir.empty() || !fs::is_directory(candidates_dir)))
    throw Error("config", "acquire stage needs an existing candidates directory");

  const std::string rules_path = config.get("tokenize.rules", "");
  if (!rules_path.empty() && !fs::exists(rules_path))
    throw Error("config", "tokenizer rule file not found: " + rules_path);

  ensemble::StackModel model;
  std::vector<ensemble::TaggerPredictions> tag_predictions;
  if (has_stage("tag")) {
    const std::string model_path = config.get("tag.model", "");
    const std::string pred_path = config.get("tag.predictions", "");
    if (model_path.empty() || !fs::exists(model_path))
      throw Error("config", "tag stage needs tag.model");
    if (pred_path.empty() || !fs::exists(pred_path))
      throw Error("config", "tag stage needs tag.predictions");
    model = ensemble::StackModel::from_json(read_file(model_path));
    std::string merged;
    if (fs::is_directory(pred_path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(pred_path))
        if (e.path().extension() == ".tsv") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) merged += read_file(f);
    } else {
      merged = read_file(pred_path);
    }
    tag_predictions = ensemble::predictions_from_tsv(merged, false);
  }

  fs::path mentions_dir, ner_dir;
  if (has_stage("merge-entities")) {
    mentions_dir = config.get("entities.mentions", "");
    ner_dir = config.get("entities.ner", "");
    if (mentions_dir.empty() || !fs::is_directory(mentions_dir))
      throw Error("config", "merge-entities stage needs entities.mentions directory");
    if (ner_dir.empty() || !fs::is_directory(ner_dir))
      throw Error("config", "merge-entities stage needs entities.ner directory");
  }

  AcquireSettings acquire_settings;
  acquire_settings.min_words =
      static_cast<std::size_t>(config.get_int("acquire.min_words", 400));
  acquire_settings.cap_words =
      static_cast<std::size_t>(config.get_int("acquire.cap_words", 1000));
  acquire_settings.stoplist = load_stoplist_file(config.get("acquire.stoplist", ""));
  acquire_settings.max_link_ratio = config.get_double("acquire.max_link_ratio", 0.10);
  acquire_settings.max_email_count =
      static_cast<std::size_t>(config.get_int("acquire.max_email_count", 5));
  acquire_settings.thread.root_min_words =
      static_cast<std::size_t>(config.get_int("acquire.forum_root_min", 25));
  acquire_settings.thread.root_max_words =
      static_cast<std::size_t>(config.get_int("acquire.forum_root_max", 500));
  acquire_settings.thread.total_min_words =
      static_cast<std::size_t>(config.get_int("acquire.forum_total_min", 500));
  acquire_settings.thread.total_max_words =
      static_cast<std::size_t>(config.get_int("acquire.forum_total_max", 1000));

  const std::string genre_filter = config.get("genre", "");

  tokenize::TokenizerOptions tok_options;
  tok_options.abbreviations = load_abbrev_file(config.get("tokenize.abbreviations", ""));
  std::vector<tokenize::TokenRule> rules;
  if (!rules_path.empty()) rules = tokenize::rules_from_json(read_file(rules_path));

  split::SplitterOptions split_options;
  split_options.abbreviations = load_abbrev_file(
      config.get("split.abbreviations", config.get("tokenize.abbreviations", "")));
  const std::string split_boundaries_dir = config.get("split.boundaries", "");
  const std::string edu_boundaries_dir = config.get("edus.boundaries", "");

  RunReport report;
  std::vector<corpus::ManifestEntry> manifest;

  // --- acquire ---
  if (has_stage("acquire")) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(candidates_dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    StageReport stage;
    stage.name = "acquire";
    std::string filter_report;
    std::vector<std::optional<corpus::ManifestEntry>> entries(files.size());
    std::vector<std::size_t> words(files.size(), 0);
    std::vector<std::string> details(files.size());

    auto outcomes = for_each_doc(files.size(), workers, [&](std::size_t i) -> DocOutcome {
      DocOutcome o;
      o.doc = files[i].stem().string();
      try {
        Candidate cand = load_candidate(files[i]);
        o.doc = cand.id;
        if (!genre_filter.empty() && std::string(to_string(cand.genre)) != genre_filter) {
          o.rejected = "genre_filter";
          return o;
        }
        auto outcome = acquire_candidate(cand, acquire_settings, derive_seed(seed, cand.id));
        words[i] = outcome.words;
        details[i] = outcome.detail;
        if (!outcome.doc) {
          o.rejected = outcome.reason;
          return o;
        }
        save_document(state_root / cand.id, *outcome.doc);
        entries[i] = corpus::ManifestEntry{cand.id, cand.genre, cand.source, cand.id};
      } catch (const std::exception& e) {
        o.ok = false;
        o.error = e.what();
      }
      return o;
    });

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& o = outcomes[i];
      ++stage.processed;
      ordered_json line;
      line["doc"] = o.doc;
      if (!o.error.empty()) {
        stage.failed.emplace_back(o.doc, o.error);
        line["accepted"] = false;
        line["reason"] = "error: " + o.error;
      } else if (!o.rejected.empty()) {
        stage.rejected.emplace_back(o.doc, o.rejected);
        line["accepted"] = false;
        line["reason"] = o.rejected;
      } else {
        ++stage.succeeded;
        line["accepted"] = true;
        line["reason"] = "ok";
        manifest.push_back(*entries[i]);
      }
      line["words"] = words[i];
      if (!details[i].empty()) line["detail"] = details[i];
      filter_report += line.dump() + "\n";
    }
    write_file(state_root / "filter_report.jsonl", filter_report);
    write_file(state_root / "manifest.jsonl", corpus::manifest_to_jsonl(manifest));
    report.stages.push_back(std::move(stage));
  } else {
    const auto manifest_path = state_root / "manifest.jsonl";
    if (!fs::exists(manifest_path))
      throw Error("config", "no manifest at " + manifest_path.string() +
                                " (run the acquire stage first)");
    manifest = corpus::manifest_from_jsonl(read_file(manifest_path));
  }
  report.documents = static_cast<int>(manifest.size());

  // --- per-document stages over the manifest ---
  std::set<std::string> dead;  // failed docs, skipped downstream

  auto run_doc_stage = [&](const std::string& name,
                           const std::function<void(const corpus::ManifestEntry&)>& fn) {
    if (!has_stage(name)) return;
    StageReport stage;
    stage.name = name;
    auto outcomes = for_each_doc(manifest.size(), workers, [&](std::size_t i) -> DocOutcome {
      DocOutcome o;
      o.doc = manifest[i].id;
      if (dead.count(manifest[i].id)) {
        o.rejected = "skipped_after_failure";
        return o;
      }
      try {
        fn(manifest[i]);
      } catch (const std::exception& e) {
        o.ok = false;
        o.error = e.what();
      }
      return o;
    });
    for (const auto& o : outcomes) {
      ++stage.processed;
      if (!o.error.empty()) {
        stage.failed.emplace_back(o.doc, o.error);
        dead.insert(o.doc);
      } else if (!o.rejected.empty()) {
        stage.rejected.emplace_back(o.doc, o.rejected);
      } else {
        ++stage.succeeded;
      }
    }
    log << "stage " << name << ": " << stage.succeeded << "/" << stage.processed << " ok\n";
    report.stages.push_back(std::move(stage));
  };

  run_doc_stage("tokenize", [&](const corpus::ManifestEntry& entry) {
    const fs::path dir = state_root / entry.dir;
    Document doc = load_document(dir);
    auto tokens = tokenize::tokenize(doc.raw_text, doc.markup, tok_options);
    if (!rules.empty())
      tokens = tokenize::apply_rules(doc.raw_text, tokens,
                                     tokenize::rules_for_genre(rules, doc.genre));
    doc.tokens = std::move(tokens);
    doc.sentences.reset();
    doc.arcs.reset();
    save_document(dir, doc);
  });

  run_doc_stage("split", [&](const corpus::ManifestEntry& entry) {
    const fs::path dir = state_root / entry.dir;
    Document doc = load_document(dir);
    if (!doc.tokens) throw Error("input", "split stage needs tokens");
    std::vector<std::string> tags;
    tags.reserve(doc.tokens->size());
    for (const auto& t : *doc.tokens) tags.push_back(t.xpos);
    if (!split_boundaries_dir.empty()) {
      const fs::path bpath = fs::path(split_boundaries_dir) / (entry.id + ".txt");
      std::set<std::size_t> starts;
      if (fs::exists(bpath)) starts = discourse::boundaries_from_text(read_file(bpath));
      doc.sentences = split::split_sentences_with(starts, *doc.tokens, tags, doc.markup);
    } else {
      doc.sentences = split::split_sentences(*doc.tokens, tags, doc.markup, split_options);
    }
    save_document(dir, doc);
  });

  // Predictions grouped once: tagger -> doc -> rows.
  std::map<std::string, std::map<std::string, std::vector<ensemble::TaggerPredictions::Row>>>
      rows_by_tagger;
  if (has_stage("tag"))
    for (const auto& name : model.tagger_order)
      rows_by_tagger[name] = group_rows_by_doc(tag_predictions, name);

  run_doc_stage("tag", [&](const corpus::ManifestEntry& entry) {
    const fs::path dir = state_root / entry.dir;
    Document doc = load_document(dir);
    if (!doc.tokens) throw Error("input", "tag stage needs tokens");
    ensemble::BasePredictions base;
    base.tagger_names = model.tagger_order;
    base.rows.resize(doc.tokens->size());
    std::vector<std::size_t> filled(doc.tokens->size(), 0);
    for (std::size_t c = 0; c < model.tagger_order.size(); ++c) {
      const auto& rows = rows_by_tagger.at(model.tagger_order[c]);
      auto it = rows.find(entry.id);
      if (it == rows.end())
        throw Error("schema", "no predictions for document " + entry.id + " from tagger " +
                                  model.tagger_order[c]);
      for (const auto& row : it->second) {
        if (row.key.ordinal >= doc.tokens->size())
          throw Error("schema", "prediction ordinal out of range in " + entry.id);
        auto& r = base.rows[row.key.ordinal];
        r.key = row.key;
        r.form = (*doc.tokens)[row.key.ordinal].form;
        if (r.tags.empty()) r.tags.assign(model.tagger_order.size(), std::string());
        r.tags[c] = row.tag;
        ++filled[row.key.ordinal];
      }
    }
    for (std::size_t i = 0; i < filled.size(); ++i)
      if (filled[i] != model.tagger_order.size())
        throw Error("schema", "token " + entry.id + ":" + std::to_string(i) +
                                  " lacks predictions from some tagger");
    const auto tags = ensemble::apply_ensemble(base, model);
    for (std::size_t i = 0; i < tags.size(); ++i) (*doc.tokens)[i].xpos = tags[i];
    // Sentence types may depend on tags; refresh them.
    if (doc.sentences) {
      std::vector<std::string> xpos;
      for (const auto& t : *doc.tokens) xpos.push_back(t.xpos);
      for (auto& s : *doc.sentences) {
        std::vector<corpus::Token> sent_tokens(doc.tokens->begin() + s.first_token,
                                               doc.tokens->begin() + s.last_token + 1);
        std::vector<std::string> sent_tags(xpos.begin() + s.first_token,
                                           xpos.begin() + s.last_token + 1);
        s.stype = split::classify_sentence_type(sent_tokens, sent_tags,
                                                doc.arcs ? &*doc.arcs : nullptr);
      }
    }
    save_document(dir, doc);
  });

  run_doc_stage("merge-entities", [&](const corpus::ManifestEntry& entry) {
    const fs::path dir = state_root / entry.dir;
    Document doc = load_document(dir);
    if (!doc.tokens) throw Error("input", "merge-entities stage needs tokens");
    const fs::path mpath = mentions_dir / (entry.id + ".tsv");
    if (!fs::exists(mpath)) throw Error("input", "no entity file for " + entry.id);
    corpus::entities_from_tsv(read_file(mpath), doc);
    std::vector<coref::NerPrediction> ner;
    const fs::path npath = ner_dir / (entry.id + ".tsv");
    if (fs::exists(npath)) ner = coref::ner_from_tsv(read_file(npath));
    auto injected = coref::inject_types(std::move(*doc.mentions), ner);
    doc.mentions = coref::harmonize_chain_types(std::move(injected.mentions), *doc.chains);
    save_document(dir, doc);
  });

  run_doc_stage("constrain-edus", [&](const corpus::ManifestEntry& entry) {
    const fs::path dir = state_root / entry.dir;
    Document doc = load_document(dir);
    if (!doc.tokens || !doc.sentences)
      throw Error("input", "constrain-edus stage needs tokens and sentences");
    std::set<std::size_t> candidates;
    if (!edu_boundaries_dir.empty()) {
      const fs::path bpath = fs::path(edu_boundaries_dir) / (entry.id + ".txt");
      if (fs::exists(bpath)) candidates = discourse::boundaries_from_text(read_file(bpath));
    }
    doc.edus =
        discourse::constrain_segmentation(candidates, *doc.tokens, *doc.sentences, doc.markup);
    save_document(dir, doc);
  });

  run_doc_stage("validate", [&](const corpus::ManifestEntry& entry) {
    const Document doc = load_document(state_root / entry.dir);
    const auto vr = corpus::validate_document(doc);
    if (!vr.ok()) {
      std::string rules;
      for (const auto& v : vr.violations) {
        if (!rules.empty()) rules += ", ";
        rules += v.rule + "@" + v.layer + ":" + v.location;
      }
      throw Error("validation", std::to_string(vr.violations.size()) + " violation(s): " + rules);
    }
  });

  for (const auto& s : report.stages) report.hard_errors += static_cast<int>(s.failed.size());
  report.elapsed_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                            std::chrono::steady_clock::now() - t0)
                                            .count());
  return report;
}

std::vector<GenreBudgetRow> genre_budget_report(const std::vector<corpus::ManifestEntry>& manifest,
                                                const fs::path& state_root, long target) {
  std::map<corpus::Genre, GenreBudgetRow> rows;
  for (corpus::Genre g : corpus::kAllGenres) rows[g] = {g, 0, 0, 0.0, target, -target};
  for (const auto& entry : manifest) {
    const Document doc = load_document(state_root / entry.dir);
    if (!doc.tokens) throw Error("input", "document " + entry.id + " has no token layer");
    auto& row = rows[entry.genre];
    row.docs += 1;
    row.tokens += static_cast<long>(doc.tokens->size());
  }
  std::vector<GenreBudgetRow> out;
  for (corpus::Genre g : corpus::kAllGenres) {
    auto row = rows[g];
    row.mean_size = row.docs > 0 ? static_cast<double>(row.tokens) / row.docs : 0.0;
    row.delta = row.tokens - target;
    out.push_back(row);
  }
  return out;
}

std::string budget_to_json(const std::vector<GenreBudgetRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["genre"] = std::string(to_string(r.genre));
    j["docs"] = r.docs;
    j["tokens"] = r.tokens;
    j["mean_size"] = r.mean_size;
    j["target"] = r.target;
    j["delta"] = r.delta;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace forge::pipeline
