#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>

#include "forge/acquire/screen.hpp"
#include "forge/corpus/formats.hpp"
#include "forge/corpus/types.hpp"

namespace forge::pipeline {

// Per-document state directory, one file per layer:
//   text.txt     raw text (exact bytes)
//   meta.json    id, genre, source
//   markup.tsv   markup spans
//   tokens.tsv   tokens + sentences + arcs (10-column format)
//   entities.tsv mentions + chains
//   edus.tsv     EDUs
//   rst.txt      RST tree
corpus::Document load_document(const std::filesystem::path& dir);
void save_document(const std::filesystem::path& dir, const corpus::Document& doc);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Acquisition candidate: either a plain extracted document (text + markup,
// or structured blocks) or a forum post tree.
struct Candidate {
  std::string id;
  corpus::Genre genre = corpus::Genre::news;
  std::string source;
  std::set<std::string> metadata_keywords;
  std::optional<corpus::Document> plain;
  std::optional<acquire::ThreadNode> thread;
};

Candidate candidate_from_json(std::string_view json_text);
Candidate load_candidate(const std::filesystem::path& path);

}  // namespace forge::pipeline
