#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hybrid/blocks/block_document.hpp"
#include "hybrid/expected.hpp"

namespace hybrid::blocks {

// Serializes a document as XML-like block/socket elements, e.g.
//   <block type="fd" id="1"><socket name="args">100</socket></block>
// Head text, line breaks and indent markers are implied by block types
// and nesting and are not written; clause keywords inside if blocks are.
std::string to_markup(const BlockDocument& doc);

// Inverse of to_markup. Errors carry the byte offset of the problem.
Expected<BlockDocument, MarkupError> from_markup(std::string_view markup);

struct LayoutRow {
  int row = 0;
  int depth = 0;
  std::vector<int> block_ids;  // blocks starting on this row, or the clause owner
  bool leading_blank = false;

  friend bool operator==(const LayoutRow&, const LayoutRow&) = default;
};

// One row per line of the text projection. A top-level block whose type
// differs from the previous top-level block gets a leading blank.
std::vector<LayoutRow> layout(const BlockDocument& doc);

}  // namespace hybrid::blocks
