#include "forge/corpus/blocks.hpp"

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::corpus {

AssembledBlocks assemble_blocks(const std::vector<BlockSpec>& blocks) {
  AssembledBlocks out;
  std::size_t pos = 0;  // scalar offset

  auto append = [&](const std::string& piece) {
    out.text += piece;
    pos += text::scalar_count(piece);
  };

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) append("\n\n");
    const auto& b = blocks[i];
    const std::size_t start = pos;
    switch (b.kind) {
      case MarkupKind::heading:
      case MarkupKind::paragraph: {
        if (b.text.empty()) throw Error("input", "empty block text");
        append(b.text);
        out.markup.push_back({b.kind, start, pos, {}});
        break;
      }
      case MarkupKind::caption: {
        // A positioned figure with its caption text.
        if (b.text.empty()) throw Error("input", "empty caption text");
        append(b.text);
        out.markup.push_back({MarkupKind::figure, start, pos, {}});
        out.markup.push_back({MarkupKind::caption, start, pos, {}});
        break;
      }
      case MarkupKind::list: {
        if (b.items.empty()) throw Error("input", "list block without items");
        for (std::size_t k = 0; k < b.items.size(); ++k) {
          if (k > 0) append("\n");
          const std::size_t item_start = pos;
          append(b.items[k]);
          out.markup.push_back({MarkupKind::item, item_start, pos, {}});
        }
        out.markup.push_back({MarkupKind::list, start, pos, {}});
        break;
      }
      case MarkupKind::speaker: {
        if (b.text.empty()) throw Error("input", "empty speaker turn");
        append(b.text);
        MarkupSpan turn{MarkupKind::speaker, start, pos, {}};
        if (!b.who.empty()) turn.attrs["who"] = b.who;
        out.markup.push_back(turn);
        out.markup.push_back({MarkupKind::paragraph, start, pos, {}});
        break;
      }
      default:
        throw Error("input", "unsupported top-level block kind");
    }
  }
  return out;
}

}  // namespace forge::corpus
