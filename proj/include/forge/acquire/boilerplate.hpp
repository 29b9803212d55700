#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forge/acquire/screen.hpp"
#include "forge/corpus/types.hpp"

namespace forge::acquire {

struct BoilerplateOptions {
  // Lowercased heading texts whose whole section (heading plus all blocks
  // until the next heading) is boilerplate.
  std::vector<std::string> section_headings = {
      "references",   "bibliography",    "external links", "see also",
      "further reading", "contents",     "table of contents", "sources",
      "notes",        "acknowledgements", "works cited"};
  // Full-match regexes over lowercased trimmed block text; matching blocks
  // are dropped.
  std::vector<std::string> block_patterns = {
      "copyright .*", "all rights reserved.*", "retrieved from .*",
      "this (article|work) is licensed .*"};
};

struct StripResult {
  std::optional<corpus::Document> doc;  // present iff verdict.accepted
  FilterVerdict verdict;
};

// Removes boilerplate sections, empty sections (a heading with no paragraph
// before the next heading) and pattern-matched blocks. Identity when nothing
// matches; otherwise surviving top-level blocks are re-joined with a blank
// line and all spans re-based. boilerplate_only when nothing survives.
StripResult strip_boilerplate(const corpus::Document& doc,
                              const BoilerplateOptions& options = {});

}  // namespace forge::acquire
