#pragma once

#include <string>
#include <string_view>

#include "hybrid/blocks/block_document.hpp"
#include "hybrid/expected.hpp"
#include "hybrid/lang/ast.hpp"

namespace hybrid::adapter {

// Block type for a statement: builtin commands map to their own type,
// other calls to "func-call".
std::string block_type(const lang::Stmt& stmt);

// One block per statement, bodies nested, ids in document order from 1.
blocks::BlockDocument ast_to_blocks(const lang::Program& program);

// The text the document mirrors; equals print(p) for docs built from p.
Expected<std::string, blocks::MarkupError> blocks_to_text(const blocks::BlockDocument& doc);
Expected<std::string, blocks::MarkupError> blocks_to_text(std::string_view markup);

bool is_builtin_command(std::string_view name);

}  // namespace hybrid::adapter
