#include "forge/pipeline/state.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "forge/common/error.hpp"
#include "forge/corpus/blocks.hpp"

namespace forge::pipeline {

namespace fs = std::filesystem;
using corpus::Document;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

Document load_document(const fs::path& dir) {
  Document doc;
  doc.raw_text = read_file(dir / "text.txt");

  const auto meta_path = dir / "meta.json";
  if (fs::exists(meta_path)) {
    auto j = ordered_json::parse(read_file(meta_path), nullptr, false);
    if (j.is_discarded()) throw Error("io", "bad meta.json in " + dir.string());
    doc.id = j.value("id", dir.filename().string());
    if (auto g = corpus::genre_from_string(j.value("genre", "news"))) doc.genre = *g;
    doc.source = j.value("source", std::string());
  } else {
    doc.id = dir.filename().string();
  }

  if (fs::exists(dir / "markup.tsv"))
    doc.markup = corpus::markup_from_tsv(read_file(dir / "markup.tsv"));
  if (fs::exists(dir / "tokens.tsv"))
    corpus::tokens_from_tsv(read_file(dir / "tokens.tsv"), doc);
  if (fs::exists(dir / "entities.tsv"))
    corpus::entities_from_tsv(read_file(dir / "entities.tsv"), doc);
  if (fs::exists(dir / "edus.tsv")) doc.edus = corpus::edus_from_tsv(read_file(dir / "edus.tsv"));
  if (fs::exists(dir / "rst.txt")) doc.rst = corpus::rst_from_text(read_file(dir / "rst.txt"));
  return doc;
}

void save_document(const fs::path& dir, const Document& doc) {
  write_file(dir / "text.txt", doc.raw_text);
  ordered_json meta;
  meta["id"] = doc.id;
  meta["genre"] = std::string(to_string(doc.genre));
  meta["source"] = doc.source;
  write_file(dir / "meta.json", meta.dump(2) + "\n");
  write_file(dir / "markup.tsv", corpus::markup_to_tsv(doc.markup));
  if (doc.tokens) write_file(dir / "tokens.tsv", corpus::tokens_to_tsv(doc));
  if (doc.mentions) write_file(dir / "entities.tsv", corpus::entities_to_tsv(doc));
  if (doc.edus) write_file(dir / "edus.tsv", corpus::edus_to_tsv(*doc.edus));
  if (doc.rst) write_file(dir / "rst.txt", corpus::rst_to_text(*doc.rst));
}

namespace {

acquire::ThreadNode thread_from_json(const ordered_json& j) {
  acquire::ThreadNode node;
  node.id = j.value("id", std::string());
  node.author = j.value("author", std::string());
  node.body = j.at("body").get<std::string>();
  if (node.body.empty()) throw Error("input", "thread post with empty body");
  for (const auto& c : j.value("children", ordered_json::array()))
    node.children.push_back(thread_from_json(c));
  return node;
}

}  // namespace

Candidate candidate_from_json(std::string_view json_text) {
  auto j = ordered_json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw Error("input", "candidate is not valid JSON");
  Candidate c;
  c.id = j.at("id").get<std::string>();
  auto g = corpus::genre_from_string(j.value("genre", "news"));
  if (!g) throw Error("input", "unknown genre in candidate " + c.id);
  c.genre = *g;
  c.source = j.value("source", std::string());
  for (const auto& k : j.value("metadata_keywords", ordered_json::array()))
    c.metadata_keywords.insert(k.get<std::string>());

  if (j.contains("thread")) {
    c.thread = thread_from_json(j.at("thread"));
    return c;
  }

  Document doc;
  doc.id = c.id;
  doc.genre = c.genre;
  doc.source = c.source;
  if (j.contains("blocks")) {
    std::vector<corpus::BlockSpec> blocks;
    for (const auto& bj : j.at("blocks")) {
      corpus::BlockSpec b;
      auto kind = corpus::markup_kind_from_string(bj.at("kind").get<std::string>());
      if (!kind) throw Error("input", "unknown block kind in candidate " + c.id);
      b.kind = *kind;
      b.text = bj.value("text", std::string());
      b.who = bj.value("who", std::string());
      for (const auto& item : bj.value("items", ordered_json::array()))
        b.items.push_back(item.get<std::string>());
      blocks.push_back(std::move(b));
    }
    auto assembled = corpus::assemble_blocks(blocks);
    doc.raw_text = std::move(assembled.text);
    doc.markup = std::move(assembled.markup);
  } else {
    doc.raw_text = j.at("text").get<std::string>();
    for (const auto& sj : j.value("markup", ordered_json::array())) {
      auto kind = corpus::markup_kind_from_string(sj.at("kind").get<std::string>());
      if (!kind) throw Error("input", "unknown markup kind in candidate " + c.id);
      corpus::MarkupSpan span;
      span.kind = *kind;
      span.start = sj.at("start").get<std::size_t>();
      span.end = sj.at("end").get<std::size_t>();
      if (sj.contains("attrs"))
        for (auto& [k, v] : sj.at("attrs").items()) span.attrs[k] = v.get<std::string>();
      doc.markup.push_back(span);
    }
  }
  c.plain = std::move(doc);
  return c;
}

Candidate load_candidate(const fs::path& path) { return candidate_from_json(read_file(path)); }

}  // namespace forge::pipeline
