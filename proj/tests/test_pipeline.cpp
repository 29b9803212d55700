#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "forge/common/error.hpp"
#include "forge/common/rng.hpp"
#include "forge/corpus/validate.hpp"
#include "forge/pipeline/config.hpp"
#include "forge/pipeline/runner.hpp"
#include "forge/pipeline/state.hpp"
#include "support/generators.hpp"

using namespace forge;
using namespace forge::pipeline;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("forge_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string words(std::size_t n, const std::string& stem) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += stem + std::to_string(i);
  }
  return out;
}

void write_plain_candidate(const fs::path& dir, const std::string& id, const std::string& genre,
                           std::size_t body_words) {
  std::ostringstream j;
  j << "{\"id\":\"" << id << "\",\"genre\":\"" << genre << "\",\"source\":\"unit\","
    << "\"metadata_keywords\":[\"fiction\"],"
    << "\"blocks\":[{\"kind\":\"heading\",\"text\":\"Top Section\"},"
    << "{\"kind\":\"paragraph\",\"text\":\"" << words(body_words, id) << "\"}]}";
  write_file(dir / (id + ".json"), j.str());
}

}  // namespace

TEST_CASE("config parsing") {
  const std::string src = R"(
# pipeline
stages = acquire, tokenize
state = out/state

[acquire]
min_words = 120
cap_words = 240
max_link_ratio = 0.25
quoted = "hello world"
flag = true
)";
  const auto cfg = Config::parse(src);
  CHECK(cfg.get_list("stages") == std::vector<std::string>{"acquire", "tokenize"});
  CHECK(cfg.get("state") == "out/state");
  CHECK(cfg.get_int("acquire.min_words", 0) == 120);
  CHECK(cfg.get_double("acquire.max_link_ratio", 0) == doctest::Approx(0.25));
  CHECK(cfg.get("acquire.quoted") == "hello world");
  CHECK(cfg.get_bool("acquire.flag", false));
  CHECK(cfg.get_int("missing", 7) == 7);
  CHECK_THROWS_AS(Config::parse("not a key value line"), Error);
}

TEST_CASE("document state directory round trip") {
  TempDir tmp("state");
  Rng rng(321);
  for (int i = 0; i < 10; ++i) {
    testgen::DocGenOptions opt;
    opt.with_arcs = rng.chance(0.5);
    opt.with_entities = rng.chance(0.8);
    opt.with_edus = true;
    opt.with_rst = rng.chance(0.8);
    corpus::Document doc = testgen::random_document(rng, opt);
    REQUIRE(corpus::validate_document(doc).ok());
    const fs::path dir = tmp.path / doc.id;
    save_document(dir, doc);
    corpus::Document back = load_document(dir);
    if (doc.mentions) {
      // Entities are persisted in document order.
      std::sort(doc.mentions->begin(), doc.mentions->end(), corpus::mention_before);
      std::sort(doc.chains->begin(), doc.chains->end(),
                [](const corpus::CorefChain& a, const corpus::CorefChain& b) {
                  return a.id < b.id;
                });
    }
    CHECK(back == doc);
  }
}

TEST_CASE("candidate parsing") {
  SUBCASE("blocks form") {
    const auto c = candidate_from_json(
        R"({"id":"x1","genre":"howto","source":"wiki",
            "blocks":[{"kind":"heading","text":"Fix a Flat"},
                      {"kind":"list","items":["Open the kit","Patch the tube"]}]})");
    CHECK(c.id == "x1");
    CHECK(c.genre == corpus::Genre::howto);
    REQUIRE(c.plain);
    CHECK(c.plain->raw_text.find("Fix a Flat") == 0);
    CHECK(!c.plain->markup.empty());
  }
  SUBCASE("thread form") {
    const auto c = candidate_from_json(
        R"({"id":"t1","genre":"forum","thread":
            {"id":"root","author":"ann","body":"first post",
             "children":[{"id":"c1","author":"bob","body":"a reply","children":[]}]}})");
    REQUIRE(c.thread);
    CHECK(c.thread->children.size() == 1);
  }
  SUBCASE("raw text + markup form") {
    const auto c = candidate_from_json(
        R"({"id":"r1","genre":"news","text":"Hello world",
            "markup":[{"kind":"paragraph","start":0,"end":11}]})");
    REQUIRE(c.plain);
    CHECK(c.plain->markup.size() == 1);
  }
}

TEST_CASE("run_pipeline") {
  TempDir tmp("run");
  const fs::path cand = tmp.path / "candidates";
  fs::create_directories(cand);
  write_plain_candidate(cand, "doc_a", "news", 150);
  write_plain_candidate(cand, "doc_b", "fiction", 160);
  write_plain_candidate(cand, "doc_c", "travel", 40);  // too short

  Config cfg;
  cfg.set("stages", "acquire,tokenize,split");
  cfg.set("candidates", cand.string());
  cfg.set("state", (tmp.path / "state").string());
  cfg.set("acquire.min_words", "100");
  cfg.set("acquire.cap_words", "300");

  std::ostringstream log;
  SUBCASE("stages run, rejects recorded, outputs valid") {
    const auto report = run_pipeline(cfg, 11, 1, log);
    CHECK(report.hard_errors == 0);
    REQUIRE(report.stages.size() == 3);
    CHECK(report.stages[0].succeeded == 2);
    REQUIRE(report.stages[0].rejected.size() == 1);
    CHECK(report.stages[0].rejected[0].first == "doc_c");
    CHECK(report.stages[0].rejected[0].second == "too_short");
    CHECK(report.stages[1].succeeded == 2);
    CHECK(report.stages[2].succeeded == 2);
    for (const std::string id : {"doc_a", "doc_b"}) {
      const auto doc = load_document(tmp.path / "state" / id);
      CHECK(doc.tokens.has_value());
      CHECK(doc.sentences.has_value());
      CHECK(corpus::validate_document(doc).ok());
    }
    CHECK(!report.to_json().empty());
  }
  SUBCASE("same seed twice is byte-identical") {
    cfg.set("state", (tmp.path / "s1").string());
    run_pipeline(cfg, 42, 1, log);
    cfg.set("state", (tmp.path / "s2").string());
    run_pipeline(cfg, 42, 1, log);
    for (auto it = fs::recursive_directory_iterator(tmp.path / "s1");
         it != fs::recursive_directory_iterator(); ++it) {
      if (!it->is_regular_file()) continue;
      const auto rel = fs::relative(it->path(), tmp.path / "s1");
      CHECK(read_file(it->path()) == read_file(tmp.path / "s2" / rel));
    }
  }
  SUBCASE("invalid stage lists are config errors") {
    cfg.set("stages", "tokenize,acquire");
    CHECK_THROWS_AS(run_pipeline(cfg, 1, 1, log), Error);
    cfg.set("stages", "acquire,split");
    CHECK_THROWS_AS(run_pipeline(cfg, 1, 1, log), Error);
  }
  SUBCASE("tag stage without inputs is a config error before processing") {
    cfg.set("stages", "acquire,tokenize,split,tag");
    try {
      run_pipeline(cfg, 1, 1, log);
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.code() == "config");
    }
    // Nothing was written.
    CHECK(!fs::exists(tmp.path / "state" / "doc_a"));
  }
  SUBCASE("parallel workers produce the sequential result") {
    cfg.set("state", (tmp.path / "seq").string());
    run_pipeline(cfg, 5, 1, log);
    cfg.set("state", (tmp.path / "par").string());
    run_pipeline(cfg, 5, 4, log);
    for (auto it = fs::recursive_directory_iterator(tmp.path / "seq");
         it != fs::recursive_directory_iterator(); ++it) {
      if (!it->is_regular_file()) continue;
      const auto rel = fs::relative(it->path(), tmp.path / "seq");
      CHECK(read_file(it->path()) == read_file(tmp.path / "par" / rel));
    }
  }
}

TEST_CASE("genre budget report") {
  TempDir tmp("budget");
  SUBCASE("empty manifest gives eight zero rows") {
    const auto rows = genre_budget_report({}, tmp.path, 500000);
    REQUIRE(rows.size() == 8);
    for (const auto& r : rows) {
      CHECK(r.docs == 0);
      CHECK(r.tokens == 0);
      CHECK(r.delta == -500000);
    }
  }
  SUBCASE("counts sum and surplus is positive") {
    Rng rng(9);
    std::vector<corpus::ManifestEntry> manifest;
    long total = 0;
    for (int i = 0; i < 4; ++i) {
      auto doc = testgen::random_document(rng);
      doc.id = "b" + std::to_string(i);
      doc.genre = corpus::Genre::academic;
      save_document(tmp.path / doc.id, doc);
      manifest.push_back({doc.id, doc.genre, "unit", doc.id});
      total += static_cast<long>(doc.tokens->size());
    }
    const auto rows = genre_budget_report(manifest, tmp.path, 100);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].genre == corpus::Genre::academic);
    CHECK(rows[0].docs == 4);
    CHECK(rows[0].tokens == total);
    CHECK(rows[0].delta == total - 100);
    CHECK(rows[0].mean_size == doctest::Approx(static_cast<double>(total) / 4.0));
    long sum = 0;
    for (const auto& r : rows) sum += r.tokens;
    CHECK(sum == total);
    CHECK(!budget_to_json(rows).empty());
  }
}
