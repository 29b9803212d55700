#include "forge/corpus/standoff.hpp"

#include <json.hpp>

#include "forge/common/hash.hpp"
#include "forge/common/text.hpp"
#include "forge/corpus/formats.hpp"

namespace forge::corpus {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json span_to_json(const MarkupSpan& s) {
  ordered_json j;
  j["kind"] = std::string(to_string(s.kind));
  j["start"] = s.start;
  j["end"] = s.end;
  if (!s.attrs.empty()) {
    ordered_json a = ordered_json::object();
    for (const auto& [k, v] : s.attrs) a[k] = v;
    j["attrs"] = a;
  }
  return j;
}

MarkupSpan span_from_json(const ordered_json& j) {
  MarkupSpan s;
  auto k = markup_kind_from_string(j.at("kind").get<std::string>());
  if (!k) throw Error("corrupt-bundle", "unknown markup kind");
  s.kind = *k;
  s.start = j.at("start").get<std::size_t>();
  s.end = j.at("end").get<std::size_t>();
  if (j.contains("attrs"))
    for (auto& [key, value] : j.at("attrs").items()) s.attrs[key] = value.get<std::string>();
  return s;
}

}  // namespace

InvalidDocumentError::InvalidDocumentError(std::string doc_id, ValidationReport report)
    : Error("invalid-document",
            doc_id + ": " + std::to_string(report.violations.size()) + " violation(s), first: " +
                (report.violations.empty() ? std::string("-") : report.violations.front().rule)),
      report_(std::move(report)) {}

StandoffBundle to_standoff(const Document& doc) {
  ValidationReport report = validate_document(doc);
  if (!report.ok()) throw InvalidDocumentError(doc.id, std::move(report));

  StandoffBundle b;
  b.doc_id = doc.id;
  b.genre = doc.genre;
  b.source = doc.source;
  b.text_hash = sha256_hex(doc.raw_text);
  b.text_scalars = text::scalar_count(doc.raw_text);
  b.markup = doc.markup;
  if (doc.tokens) {
    std::vector<StandoffToken> toks;
    toks.reserve(doc.tokens->size());
    for (const auto& t : *doc.tokens) {
      StandoffToken st;
      st.start = t.start;
      st.end = t.end;
      if (t.lemma == t.form && !t.lemma.empty())
        st.lemma_is_form = true;
      else
        st.lemma = t.lemma;
      st.xpos = t.xpos;
      st.upos = t.upos;
      st.feats = t.feats;
      toks.push_back(std::move(st));
    }
    b.tokens = std::move(toks);
  }
  b.sentences = doc.sentences;
  b.arcs = doc.arcs;
  b.mentions = doc.mentions;
  b.chains = doc.chains;
  b.edus = doc.edus;
  b.rst = doc.rst;
  return b;
}

Document rehydrate(const StandoffBundle& bundle, std::string_view raw_text) {
  if (sha256_hex(raw_text) != bundle.text_hash)
    throw Error("hash-mismatch",
                "text digest does not match bundle for document '" + bundle.doc_id + "'");

  const std::size_t n = text::scalar_count(raw_text);
  Document doc;
  doc.id = bundle.doc_id;
  doc.genre = bundle.genre;
  doc.source = bundle.source;
  doc.raw_text = std::string(raw_text);
  doc.markup = bundle.markup;

  if (bundle.tokens) {
    std::vector<Token> toks;
    toks.reserve(bundle.tokens->size());
    for (std::size_t i = 0; i < bundle.tokens->size(); ++i) {
      const auto& st = (*bundle.tokens)[i];
      if (st.start >= st.end || st.end > n)
        throw Error("corrupt-bundle", "token offset out of bounds in '" + bundle.doc_id + "'");
      Token t;
      t.index = i;
      t.start = st.start;
      t.end = st.end;
      t.form = text::slice(raw_text, st.start, st.end);
      t.lemma = st.lemma_is_form ? t.form : st.lemma;
      t.xpos = st.xpos;
      t.upos = st.upos;
      t.feats = st.feats;
      toks.push_back(std::move(t));
    }
    doc.tokens = std::move(toks);
  }
  doc.sentences = bundle.sentences;
  doc.arcs = bundle.arcs;
  doc.mentions = bundle.mentions;
  doc.chains = bundle.chains;
  doc.edus = bundle.edus;
  doc.rst = bundle.rst;
  return doc;
}

std::string bundle_to_json(const StandoffBundle& b) {
  ordered_json j;
  j["format"] = "standoff-bundle/1";
  j["doc_id"] = b.doc_id;
  j["genre"] = std::string(to_string(b.genre));
  j["source"] = b.source;
  j["text_sha256"] = b.text_hash;
  j["text_scalars"] = b.text_scalars;
  j["markup"] = ordered_json::array();
  for (const auto& s : b.markup) j["markup"].push_back(span_to_json(s));
  if (b.tokens) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : *b.tokens) {
      ordered_json tj;
      tj["s"] = t.start;
      tj["e"] = t.end;
      if (t.lemma_is_form)
        tj["lemma_is_form"] = true;
      else if (!t.lemma.empty())
        tj["lemma"] = t.lemma;
      if (!t.xpos.empty()) tj["xpos"] = t.xpos;
      if (!t.upos.empty()) tj["upos"] = t.upos;
      if (!t.feats.empty()) tj["feats"] = t.feats;
      arr.push_back(std::move(tj));
    }
    j["tokens"] = std::move(arr);
  }
  if (b.sentences) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : *b.sentences) {
      ordered_json sj;
      sj["first"] = s.first_token;
      sj["last"] = s.last_token;
      sj["stype"] = std::string(to_string(s.stype));
      arr.push_back(std::move(sj));
    }
    j["sentences"] = std::move(arr);
  }
  if (b.arcs) {
    ordered_json arr = ordered_json::array();
    for (const auto& a : *b.arcs) {
      ordered_json aj;
      aj["dep"] = a.dependent;
      aj["head"] = a.head;
      aj["rel"] = a.deprel;
      arr.push_back(std::move(aj));
    }
    j["arcs"] = std::move(arr);
  }
  if (b.mentions) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : *b.mentions) {
      ordered_json mj;
      mj["id"] = m.id;
      mj["first"] = m.first_token;
      mj["last"] = m.last_token;
      mj["etype"] = std::string(to_string(m.etype));
      if (!m.chain.empty()) mj["chain"] = m.chain;
      arr.push_back(std::move(mj));
    }
    j["mentions"] = std::move(arr);
  }
  if (b.chains) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : *b.chains) {
      ordered_json cj;
      cj["id"] = c.id;
      cj["mentions"] = c.mentions;
      arr.push_back(std::move(cj));
    }
    j["chains"] = std::move(arr);
  }
  if (b.edus) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : *b.edus) {
      ordered_json ej;
      ej["id"] = e.id;
      ej["first"] = e.first_token;
      ej["last"] = e.last_token;
      arr.push_back(std::move(ej));
    }
    j["edus"] = std::move(arr);
  }
  if (b.rst) {
    std::string tree = rst_to_text(*b.rst);
    if (!tree.empty() && tree.back() == '\n') tree.pop_back();
    j["rst"] = tree;
  }
  return j.dump(2) + "\n";
}

StandoffBundle bundle_from_json(std::string_view json_text) {
  auto j = ordered_json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw Error("corrupt-bundle", "bundle is not valid JSON");
  StandoffBundle b;
  try {
    b.doc_id = j.at("doc_id").get<std::string>();
    auto g = genre_from_string(j.at("genre").get<std::string>());
    if (!g) throw Error("corrupt-bundle", "unknown genre");
    b.genre = *g;
    b.source = j.value("source", std::string());
    b.text_hash = j.at("text_sha256").get<std::string>();
    b.text_scalars = j.at("text_scalars").get<std::size_t>();
    for (const auto& sj : j.value("markup", ordered_json::array()))
      b.markup.push_back(span_from_json(sj));
    if (j.contains("tokens")) {
      std::vector<StandoffToken> toks;
      for (const auto& tj : j.at("tokens")) {
        StandoffToken t;
        t.start = tj.at("s").get<std::size_t>();
        t.end = tj.at("e").get<std::size_t>();
        t.lemma_is_form = tj.value("lemma_is_form", false);
        t.lemma = tj.value("lemma", std::string());
        t.xpos = tj.value("xpos", std::string());
        t.upos = tj.value("upos", std::string());
        t.feats = tj.value("feats", std::string());
        toks.push_back(std::move(t));
      }
      b.tokens = std::move(toks);
    }
    if (j.contains("sentences")) {
      std::vector<Sentence> sents;
      for (const auto& sj : j.at("sentences")) {
        Sentence s;
        s.first_token = sj.at("first").get<std::size_t>();
        s.last_token = sj.at("last").get<std::size_t>();
        auto t = sentence_type_from_string(sj.at("stype").get<std::string>());
        if (!t) throw Error("corrupt-bundle", "unknown sentence type");
        s.stype = *t;
        sents.push_back(s);
      }
      b.sentences = std::move(sents);
    }
    if (j.contains("arcs")) {
      std::vector<DepArc> arcs;
      for (const auto& aj : j.at("arcs"))
        arcs.push_back({aj.at("dep").get<std::size_t>(), aj.at("head").get<long>(),
                        aj.value("rel", std::string())});
      b.arcs = std::move(arcs);
    }
    if (j.contains("mentions")) {
      std::vector<EntityMention> mentions;
      for (const auto& mj : j.at("mentions")) {
        auto t = entity_type_from_string(mj.at("etype").get<std::string>());
        if (!t) throw Error("corrupt-bundle", "unknown entity type");
        mentions.push_back({mj.at("id").get<std::string>(), mj.at("first").get<std::size_t>(),
                            mj.at("last").get<std::size_t>(), *t,
                            mj.value("chain", std::string())});
      }
      b.mentions = std::move(mentions);
    }
    if (j.contains("chains")) {
      std::vector<CorefChain> chains;
      for (const auto& cj : j.at("chains"))
        chains.push_back(
            {cj.at("id").get<std::string>(), cj.at("mentions").get<std::vector<std::string>>()});
      b.chains = std::move(chains);
    }
    if (j.contains("edus")) {
      std::vector<Edu> edus;
      for (const auto& ej : j.at("edus"))
        edus.push_back({ej.at("id").get<int>(), ej.at("first").get<std::size_t>(),
                        ej.at("last").get<std::size_t>()});
      b.edus = std::move(edus);
    }
    if (j.contains("rst")) b.rst = rst_from_text(j.at("rst").get<std::string>());
  } catch (const ordered_json::exception& e) {
    throw Error("corrupt-bundle", e.what());
  }
  return b;
}

}  // namespace forge::corpus
