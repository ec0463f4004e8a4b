#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hybrid::adapter {

enum class Category { Movement, Output, Control, Variables, Functions };

std::string_view to_string(Category category);

// A toolbox entry. The id doubles as the block type the adapter emits for
// statements of this kind.
struct PaletteItem {
  std::string id;
  Category category = Category::Movement;
  std::string label;
  std::string template_text;  // canonical text, top-level indentation, trailing newline
  std::vector<std::string> sockets;
};

const std::vector<PaletteItem>& palette();
const PaletteItem* find_palette_item(std::string_view id);

// The template re-indented by `indent_level` units.
std::string instantiate(const PaletteItem& item, int indent_level);

// palette.json: [{id, category, label, template, sockets}]
std::string palette_json();

}  // namespace hybrid::adapter
