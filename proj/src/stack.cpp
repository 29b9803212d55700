#include "forge/ensemble/stack.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::ensemble {

ShapeFeatures shape_of(const std::string& form) {
  ShapeFeatures f;
  bool any_letter = false, any_lower = false, any_upper = false, any_alnum = false;
  bool first_upper = false, rest_lower = true;
  bool first = true;
  std::size_t len = 0;
  for (char32_t c : text::decode(form)) {
    ++len;
    const bool letter = text::is_letter(c);
    const bool upper = c >= U'A' && c <= U'Z';
    const bool lower = letter && !upper;
    any_letter |= letter;
    any_lower |= lower;
    any_upper |= upper;
    any_alnum |= text::is_alnum(c);
    if (text::is_digit(c)) f.has_digit = 1;
    if (first) {
      first_upper = upper;
      first = false;
    } else if (upper) {
      rest_lower = false;
    }
  }
  if (!any_letter)
    f.case_pattern = 4;
  else if (any_upper && !any_lower)
    f.case_pattern = 1;
  else if (first_upper && rest_lower)
    f.case_pattern = 2;
  else if (any_upper)
    f.case_pattern = 3;
  else
    f.case_pattern = 0;
  f.is_punct = any_alnum ? 0 : 1;
  if (len <= 1)
    f.length_bucket = 0;
  else if (len == 2)
    f.length_bucket = 1;
  else if (len == 3)
    f.length_bucket = 2;
  else if (len <= 6)
    f.length_bucket = 3;
  else if (len <= 10)
    f.length_bucket = 4;
  else
    f.length_bucket = 5;
  return f;
}

std::string StackMatrix::to_tsv() const {
  std::ostringstream out;
  out << "doc\tordinal\tform";
  for (const auto& t : tagger_order) out << "\ttag:" << t;
  out << "\tgold\n";
  for (std::size_t r = 0; r < gold.size(); ++r) {
    out << keys[r].doc << '\t' << keys[r].ordinal << '\t' << forms[r];
    for (const auto& tag : tag_cells[r]) out << '\t' << tag;
    out << '\t' << gold[r] << "\n";
  }
  return out.str();
}

StackMatrix StackMatrix::from_tsv(std::string_view tsv) {
  StackMatrix m;
  std::istringstream in{std::string(tsv)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cols.size() < 5) throw Error("matrix", "matrix line needs at least 5 columns: " + line);
    if (header) {
      for (std::size_t i = 3; i + 1 < cols.size(); ++i) {
        if (cols[i].rfind("tag:", 0) != 0)
          throw Error("matrix", "bad matrix header column: " + cols[i]);
        m.tagger_order.push_back(cols[i].substr(4));
      }
      header = false;
      continue;
    }
    if (cols.size() != m.tagger_order.size() + 4)
      throw Error("matrix", "matrix row width mismatch: " + line);
    m.keys.push_back({cols[0], std::stoull(cols[1])});
    m.forms.push_back(cols[2]);
    m.tag_cells.emplace_back(cols.begin() + 3, cols.end() - 1);
    m.gold.push_back(cols.back());
    m.shapes.push_back(shape_of(cols[2]));
  }
  return m;
}

StackMatrix assemble_stack_matrix(const std::vector<TaggerPredictions>& taggers,
                                  const std::vector<GoldToken>& gold, const FoldPlan& plan) {
  std::vector<GoldToken> sorted = gold;
  std::sort(sorted.begin(), sorted.end(),
            [](const GoldToken& a, const GoldToken& b) { return a.key < b.key; });

  std::map<TokenKey, std::size_t> row_of;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto [it, inserted] = row_of.emplace(sorted[i].key, i);
    if (!inserted)
      throw Error("matrix", "duplicate gold token " + sorted[i].key.doc + ":" +
                                std::to_string(sorted[i].key.ordinal));
  }

  StackMatrix m;
  m.tag_cells.assign(sorted.size(), std::vector<std::string>(taggers.size()));
  m.shapes.reserve(sorted.size());
  for (const auto& g : sorted) {
    m.keys.push_back(g.key);
    m.forms.push_back(g.form);
    m.gold.push_back(g.tag);
    m.shapes.push_back(shape_of(g.form));
  }

  for (std::size_t c = 0; c < taggers.size(); ++c) {
    const auto& tp = taggers[c];
    m.tagger_order.push_back(tp.tagger);
    std::vector<bool> covered(sorted.size(), false);
    for (const auto& row : tp.rows) {
      auto it = row_of.find(row.key);
      if (it == row_of.end())
        throw Error("matrix", "prediction for unknown token " + row.key.doc + ":" +
                                  std::to_string(row.key.ordinal) + " from tagger " + tp.tagger);
      if (covered[it->second])
        throw Error("matrix", "token " + row.key.doc + ":" + std::to_string(row.key.ordinal) +
                                  " covered twice by tagger " + tp.tagger);
      if (tp.retrained) {
        if (!row.fold)
          throw Error("fold", "re-trained prediction without a fold id from tagger " + tp.tagger);
        // Held-out discipline: a re-trained model may only predict tokens of
        // the fold it was held out on.
        const int doc_fold = plan.fold_of(row.key.doc);
        if (doc_fold != *row.fold)
          throw Error("fold", "tagger " + tp.tagger + " predicts token " + row.key.doc + ":" +
                                  std::to_string(row.key.ordinal) + " of fold " +
                                  std::to_string(doc_fold) + " with the fold-" +
                                  std::to_string(*row.fold) + " model (training fold leak)");
      }
      covered[it->second] = true;
      m.tag_cells[it->second][c] = row.tag;
    }
    for (std::size_t r = 0; r < covered.size(); ++r)
      if (!covered[r])
        throw Error("matrix", "token " + sorted[r].key.doc + ":" +
                                  std::to_string(sorted[r].key.ordinal) +
                                  " not covered by tagger " + tp.tagger);
  }
  return m;
}

std::vector<TaggerPredictions> predictions_from_tsv(std::string_view tsv, bool retrained) {
  std::map<std::string, TaggerPredictions> by_tagger;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    std::size_t nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string line(tsv.substr(start, nl - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t next = nl == tsv.size() ? tsv.size() + 1 : nl + 1;
    start = next;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t p = 0;
    while (true) {
      auto tab = line.find('\t', p);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(p));
        break;
      }
      cols.push_back(line.substr(p, tab - p));
      p = tab + 1;
    }
    if (cols.size() < 4)
      throw Error("format", "prediction line needs doc/ordinal/tagger/xpos: " + line);
    TaggerPredictions::Row row;
    row.key = {cols[0], std::stoull(cols[1])};
    row.tag = cols[3];
    if (cols.size() >= 5 && cols[4] != "_") row.form = cols[4];
    if (cols.size() >= 6 && !cols[5].empty() && cols[5] != "_") row.fold = std::stoi(cols[5]);
    auto& tp = by_tagger[cols[2]];
    tp.tagger = cols[2];
    tp.retrained = retrained;
    tp.rows.push_back(std::move(row));
  }
  std::vector<TaggerPredictions> out;
  for (auto& [name, tp] : by_tagger) {
    std::sort(tp.rows.begin(), tp.rows.end(),
              [](const TaggerPredictions::Row& a, const TaggerPredictions::Row& b) {
                return a.key < b.key;
              });
    out.push_back(std::move(tp));
  }
  return out;
}

std::string predictions_to_tsv(const std::vector<TaggerPredictions>& taggers) {
  std::ostringstream out;
  for (const auto& tp : taggers)
    for (const auto& r : tp.rows) {
      out << r.key.doc << '\t' << r.key.ordinal << '\t' << tp.tagger << '\t' << r.tag << '\t'
          << (r.form.empty() ? "_" : r.form);
      if (r.fold)
        out << '\t' << *r.fold;
      out << "\n";
    }
  return out.str();
}

BasePredictions pivot_predictions(const std::vector<TaggerPredictions>& taggers,
                                  const std::vector<std::string>& order) {
  BasePredictions base;
  base.tagger_names = order;
  if (taggers.empty()) return base;

  std::map<std::string, const TaggerPredictions*> by_name;
  for (const auto& tp : taggers) by_name[tp.tagger] = &tp;

  std::vector<const TaggerPredictions*> ordered;
  for (const auto& name : order) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error("schema", "missing predictions for tagger " + name);
    ordered.push_back(it->second);
  }

  std::map<TokenKey, std::size_t> row_of;
  for (const auto& row : ordered.front()->rows) {
    BasePredictions::Row r;
    r.key = row.key;
    r.form = row.form;
    r.tags.assign(order.size(), std::string());
    row_of.emplace(row.key, base.rows.size());
    base.rows.push_back(std::move(r));
  }
  for (std::size_t c = 0; c < ordered.size(); ++c) {
    if (ordered[c]->rows.size() != base.rows.size())
      throw Error("schema", "tagger " + order[c] + " covers a different token set");
    for (const auto& row : ordered[c]->rows) {
      auto it = row_of.find(row.key);
      if (it == row_of.end())
        throw Error("schema", "tagger " + order[c] + " covers a different token set");
      base.rows[it->second].tags[c] = row.tag;
      if (base.rows[it->second].form.empty()) base.rows[it->second].form = row.form;
    }
  }
  return base;
}

}  // namespace forge::ensemble
