#pragma once

#include <string>
#include <vector>

#include "forge/corpus/types.hpp"

namespace forge::corpus {

// Structured block description of a document body, as produced by upstream
// extraction. assemble_blocks turns it into raw text plus markup spans:
// blocks are joined with a blank line, list items with single newlines.
struct BlockSpec {
  MarkupKind kind = MarkupKind::paragraph;
  std::string text;                // heading/paragraph/caption text
  std::vector<std::string> items;  // list items (kind == list)
  std::string who;                 // speaker name (kind == speaker)
};

struct AssembledBlocks {
  std::string text;
  std::vector<MarkupSpan> markup;
};

AssembledBlocks assemble_blocks(const std::vector<BlockSpec>& blocks);

}  // namespace forge::corpus
