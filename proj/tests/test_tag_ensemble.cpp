#include <doctest.h>

#include <map>
#include <set>

#include "forge/common/error.hpp"
#include "forge/common/rng.hpp"
#include "forge/ensemble/folds.hpp"
#include "forge/ensemble/model.hpp"
#include "forge/ensemble/stack.hpp"

using namespace forge;
using namespace forge::ensemble;
using corpus::Genre;

namespace {

std::vector<std::pair<std::string, Genre>> two_docs_per_genre(std::size_t genres) {
  std::vector<std::pair<std::string, Genre>> docs;
  for (std::size_t g = 0; g < genres; ++g) {
    docs.emplace_back("doc_" + std::string(to_string(corpus::kAllGenres[g])) + "_1",
                      corpus::kAllGenres[g]);
    docs.emplace_back("doc_" + std::string(to_string(corpus::kAllGenres[g])) + "_2",
                      corpus::kAllGenres[g]);
  }
  return docs;
}

// Fixture: 2 folds, 4 tokens per fold, 2 retrained + 2 pretrained taggers.
struct MatrixFixture {
  FoldPlan plan;
  std::vector<GoldToken> gold;
  std::vector<TaggerPredictions> taggers;
};

MatrixFixture small_fixture() {
  MatrixFixture f;
  f.plan.k = 2;
  f.plan.assignment = {{"d0", 0}, {"d1", 1}};
  for (int d = 0; d < 2; ++d)
    for (std::size_t i = 0; i < 4; ++i)
      f.gold.push_back({{"d" + std::to_string(d), i}, "w" + std::to_string(i),
                        i % 2 ? "NN" : "VB"});
  for (const std::string name : {"ret_a", "ret_b"}) {
    TaggerPredictions tp;
    tp.tagger = name;
    tp.retrained = true;
    for (const auto& g : f.gold) {
      TaggerPredictions::Row row;
      row.key = g.key;
      row.form = g.form;
      row.tag = g.tag;
      row.fold = f.plan.fold_of(g.key.doc);
      tp.rows.push_back(row);
    }
    f.taggers.push_back(std::move(tp));
  }
  for (const std::string name : {"pre_a", "pre_b"}) {
    TaggerPredictions tp;
    tp.tagger = name;
    tp.retrained = false;
    for (const auto& g : f.gold) {
      TaggerPredictions::Row row;
      row.key = g.key;
      row.form = g.form;
      row.tag = "XX";
      tp.rows.push_back(row);
    }
    f.taggers.push_back(std::move(tp));
  }
  return f;
}

}  // namespace

TEST_CASE("make_folds") {
  SUBCASE("10 docs, 5 genres x 2, k=5:each fold gets two docs of distinct genres") {
    const auto docs = two_docs_per_genre(5);
    const auto plan = make_folds(docs, 5, 17);
    std::map<int, std::vector<Genre>> by_fold;
    for (const auto& [id, genre] : docs) by_fold[plan.fold_of(id)].push_back(genre);
    // Exhaustive stratification check on the fixture.
    CHECK(by_fold.size() == 5);
    for (const auto& [fold, genres] : by_fold) {
      CHECK(genres.size() == 2);
      CHECK(genres[0] != genres[1]);
    }
    // Per-genre fold sizes differ by <= 1.
    for (std::size_t g = 0; g < 5; ++g) {
      std::map<int, int> counts;
      for (const auto& [id, genre] : docs)
        if (genre == corpus::kAllGenres[g]) ++counts[plan.fold_of(id)];
      for (const auto& [fold, n] : counts) CHECK(n <= 1);
    }
  }
  SUBCASE("k larger than the document count") {
    CHECK_THROWS_AS(make_folds({{"a", Genre::news}}, 2, 0), Error);
  }
  SUBCASE("k below two") {
    CHECK_THROWS_AS(make_folds(two_docs_per_genre(2), 1, 0), Error);
  }
  SUBCASE("same seed, same plan; different seed may differ") {
    const auto docs = two_docs_per_genre(8);
    CHECK(make_folds(docs, 4, 7) == make_folds(docs, 4, 7));
  }
  SUBCASE("json round trip") {
    const auto plan = make_folds(two_docs_per_genre(3), 3, 9);
    CHECK(FoldPlan::from_json(plan.to_json()) == plan);
  }
}

TEST_CASE("assemble_stack_matrix") {
  SUBCASE("8 rows by 4 tag columns on the small fixture") {
    auto f = small_fixture();
    const auto m = assemble_stack_matrix(f.taggers, f.gold, f.plan);
    CHECK(m.gold.size() == 8);
    CHECK(m.tagger_order ==
          std::vector<std::string>{"ret_a", "ret_b", "pre_a", "pre_b"});
    for (const auto& row : m.tag_cells) CHECK(row.size() == 4);
    CHECK(m.shapes.size() == 8);
  }
  SUBCASE("token covered twice is an overlap error") {
    auto f = small_fixture();
    f.taggers[0].rows.push_back(f.taggers[0].rows[0]);
    CHECK_THROWS_AS(assemble_stack_matrix(f.taggers, f.gold, f.plan), Error);
  }
  SUBCASE("coverage gap is a matrix error") {
    auto f = small_fixture();
    f.taggers[0].rows.pop_back();
    CHECK_THROWS_AS(assemble_stack_matrix(f.taggers, f.gold, f.plan), Error);
  }
  SUBCASE("training-fold leak is rejected") {
    auto f = small_fixture();
    // A fold-0 model predicting a fold-0 training token... the row carries
    // the WRONG fold id relative to the plan.
    f.taggers[0].rows[0].fold = 1;  // d0 lives in fold 0
    try {
      assemble_stack_matrix(f.taggers, f.gold, f.plan);
      FAIL("expected fold error");
    } catch (const Error& e) {
      CHECK(e.code() == "fold");
    }
  }
  SUBCASE("K=1 single-column matrix is allowed") {
    auto f = small_fixture();
    std::vector<TaggerPredictions> one = {f.taggers[0]};
    const auto m = assemble_stack_matrix(one, f.gold, f.plan);
    CHECK(m.tagger_order.size() == 1);
    for (const auto& row : m.tag_cells) CHECK(row.size() == 1);
  }
  SUBCASE("matrix tsv round trip") {
    auto f = small_fixture();
    const auto m = assemble_stack_matrix(f.taggers, f.gold, f.plan);
    const auto m2 = StackMatrix::from_tsv(m.to_tsv());
    CHECK(m2.tagger_order == m.tagger_order);
    CHECK(m2.gold == m.gold);
    CHECK(m2.tag_cells == m.tag_cells);
    CHECK(m2.forms == m.forms);
  }
}

TEST_CASE("fit_meta and apply_ensemble") {
  // Synthetic oracle-column fixture: tagger #2 is always correct, the
  // others are noise; the meta-learner must learn to copy column 2.
  Rng rng(1234);
  static const std::vector<std::string> kTags = {"NN", "VB", "JJ", "DT", "IN"};
  StackMatrix m;
  m.tagger_order = {"t1", "t2", "t3"};
  for (int i = 0; i < 400; ++i) {
    const std::string gold = kTags[rng.below(kTags.size())];
    std::vector<std::string> tags = {kTags[rng.below(kTags.size())], gold,
                                     kTags[rng.below(kTags.size())]};
    m.tag_cells.push_back(tags);
    m.gold.push_back(gold);
    m.forms.push_back("w" + std::to_string(i % 7));
    m.shapes.push_back(shape_of(m.forms.back()));
    m.keys.push_back({"d", static_cast<std::size_t>(i)});
  }
  GbdtParams params;
  params.n_trees = 30;
  params.max_depth = 4;

  SUBCASE("oracle column is learned to 100% training accuracy") {
    const auto model = fit_meta(m, params);
    CHECK(model.train_accuracy == doctest::Approx(1.0));
    BasePredictions base;
    base.tagger_names = m.tagger_order;
    for (std::size_t r = 0; r < m.gold.size(); ++r)
      base.rows.push_back({m.keys[r], m.forms[r], m.tag_cells[r]});
    const auto out = apply_ensemble(base, model);
    for (std::size_t r = 0; r < out.size(); ++r) CHECK(out[r] == m.tag_cells[r][1]);
  }
  SUBCASE("single-class gold yields a constant predictor") {
    StackMatrix constant = m;
    for (auto& g : constant.gold) g = "NN";
    const auto model = fit_meta(constant, params);
    CHECK(model.train_accuracy == doctest::Approx(1.0));
    BasePredictions base;
    base.tagger_names = m.tagger_order;
    base.rows.push_back({{"d", 0}, "zzz", {"JJ", "IN", "DT"}});
    CHECK(apply_ensemble(base, model) == std::vector<std::string>{"NN"});
  }
  SUBCASE("same seed, identical model; serialization round trips") {
    const auto a = fit_meta(m, params);
    const auto b = fit_meta(m, params);
    CHECK(a.to_json() == b.to_json());
    const auto back = StackModel::from_json(a.to_json());
    CHECK(back.to_json() == a.to_json());
  }
  SUBCASE("unseen tag value falls back to the majority vote") {
    const auto model = fit_meta(m, params);
    BasePredictions base;
    base.tagger_names = m.tagger_order;
    base.rows.push_back({{"d", 0}, "w0", {"NN", "ZZZ_UNSEEN", "NN"}});
    const auto out = apply_ensemble(base, model);
    CHECK(out == std::vector<std::string>{"NN"});  // modal among the row
  }
  SUBCASE("tagger order mismatch is a schema error") {
    const auto model = fit_meta(m, params);
    BasePredictions base;
    base.tagger_names = {"t2", "t1", "t3"};
    base.rows.push_back({{"d", 0}, "w0", {"NN", "NN", "NN"}});
    CHECK_THROWS_AS(apply_ensemble(base, model), Error);
  }
  SUBCASE("tags-only mode drops the shape features and still learns the oracle") {
    const auto model = fit_meta(m, params, /*tags_only=*/true);
    CHECK(model.tags_only);
    CHECK(model.train_accuracy == doctest::Approx(1.0));
    BasePredictions base;
    base.tagger_names = m.tagger_order;
    base.rows.push_back({{"d", 0}, "", {"NN", "JJ", "VB"}});  // no form needed
    CHECK(apply_ensemble(base, model) == std::vector<std::string>{"JJ"});
  }
}

TEST_CASE("majority_vote") {
  BasePredictions base;
  base.tagger_names = {"t1", "t2", "t3", "t4"};
  auto row = [&](std::vector<std::string> tags) {
    base.rows.clear();
    base.rows.push_back({{"d", 0}, "w", std::move(tags)});
  };
  SUBCASE("strict majority") {
    row({"NN", "NN", "VB", "NN"});
    CHECK(majority_vote(base, base.tagger_names) == std::vector<std::string>{"NN"});
  }
  SUBCASE("tie broken by earliest tagger in priority") {
    row({"NN", "VB", "NN", "VB"});
    CHECK(majority_vote(base, {"t1", "t2", "t3", "t4"}) == std::vector<std::string>{"NN"});
    CHECK(majority_vote(base, {"t2", "t1", "t3", "t4"}) == std::vector<std::string>{"VB"});
  }
  SUBCASE("K=1 returns that column") {
    BasePredictions one;
    one.tagger_names = {"only"};
    one.rows.push_back({{"d", 0}, "w", {"JJ"}});
    CHECK(majority_vote(one, {"only"}) == std::vector<std::string>{"JJ"});
  }
  SUBCASE("permutation invariance when priority is permuted identically") {
    Rng rng(4242);
    static const std::vector<std::string> kTags = {"A", "B", "C"};
    for (int it = 0; it < 40; ++it) {
      BasePredictions b1;
      b1.tagger_names = {"t1", "t2", "t3", "t4"};
      std::vector<std::string> tags;
      for (int k = 0; k < 4; ++k) tags.push_back(kTags[rng.below(3)]);
      b1.rows.push_back({{"d", 0}, "w", tags});
      // Permute columns and the priority identically.
      std::vector<std::size_t> perm = {0, 1, 2, 3};
      rng.shuffle(perm);
      BasePredictions b2;
      std::vector<std::string> priority2;
      for (std::size_t p : perm) {
        b2.tagger_names.push_back(b1.tagger_names[p]);
        priority2.push_back(b1.tagger_names[p]);
      }
      std::vector<std::string> tags2;
      for (std::size_t p : perm) tags2.push_back(tags[p]);
      b2.rows.push_back({{"d", 0}, "w", tags2});
      // Priority order must also match the per-row priority semantics:
      // compare vote under (b1, priority2) vs (b2, priority2).
      CHECK(majority_vote(b1, priority2) == majority_vote(b2, priority2));
    }
  }
  SUBCASE("priority must be a permutation") {
    row({"NN", "NN", "NN", "NN"});
    CHECK_THROWS_AS(majority_vote(base, {"t1", "t2"}), Error);
    CHECK_THROWS_AS(majority_vote(base, {"t1", "t2", "t3", "tX"}), Error);
  }
}

TEST_CASE("predictions tsv round trip") {
  auto f = small_fixture();
  const auto tsv = predictions_to_tsv(f.taggers);
  const auto back_re = predictions_from_tsv(tsv, true);
  REQUIRE(back_re.size() == 4);
  // Sorted by tagger name on load.
  CHECK(back_re[0].tagger == "pre_a");
  CHECK(back_re[3].tagger == "ret_b");
  for (const auto& tp : back_re)
    if (tp.tagger.rfind("ret_", 0) == 0)
      for (const auto& row : tp.rows) CHECK(row.fold.has_value());
}
