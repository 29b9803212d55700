#pragma once

#include <string>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::corpus {

struct Violation {
  std::string rule;      // stable rule id, e.g. "token.bounds"
  std::string layer;     // "markup", "tokens", "sentences", ...
  std::string location;  // index / id inside the layer
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every documented invariant and returns all violations in a
// deterministic order (fixed rule sequence, ascending locations). Total and
// pure: never throws on malformed layers.
ValidationReport validate_document(const Document& doc);

// RST well-formedness against an EDU sequence 1..edu_count. Shared between
// document validation and the discourse module.
std::vector<Violation> validate_rst(const RstNode& root, std::size_t edu_count);

}  // namespace forge::corpus
