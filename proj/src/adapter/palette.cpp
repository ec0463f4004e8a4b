#include "hybrid/adapter/palette.hpp"

#include <json.hpp>

namespace hybrid::adapter {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Movement: return "movement";
    case Category::Output: return "output";
    case Category::Control: return "control";
    case Category::Variables: return "variables";
    case Category::Functions: return "functions";
  }
  return "?";
}

const std::vector<PaletteItem>& palette() {
  // fd 100 / rt 45 / speed 2 / pen red follow the classroom turtle listing.
  static const std::vector<PaletteItem> kPalette{
      {"fd", Category::Movement, "move forward", "fd 100\n", {"args"}},
      {"bk", Category::Movement, "move back", "bk 100\n", {"args"}},
      {"rt", Category::Movement, "turn right", "rt 45\n", {"args"}},
      {"lt", Category::Movement, "turn left", "lt 45\n", {"args"}},
      {"speed", Category::Movement, "set speed", "speed 2\n", {"args"}},
      {"pen", Category::Movement, "pen color", "pen red\n", {"args"}},
      {"write", Category::Output, "write", "write 'hello'\n", {"args"}},
      {"if-else", Category::Control, "if / else", "if 1 > 0\n  write 'yes'\nelse\n  write 'no'\n", {"cond"}},
      {"for-range", Category::Control, "repeat", "for [1..5]\n  fd 100\n", {"range"}},
      {"for-in", Category::Control, "count with", "for i in [1..5]\n  write i\n", {"var", "range"}},
      {"assignment", Category::Variables, "set variable", "x = 0\n", {"name", "value"}},
      {"func-def", Category::Functions, "define function",
       "square = (size) ->\n  for [1..4]\n    fd size\n    rt 90\n", {"name", "params"}},
      {"func-call", Category::Functions, "call function", "square 100\n", {"name", "args"}},
  };
  return kPalette;
}

const PaletteItem* find_palette_item(std::string_view id) {
  for (const PaletteItem& item : palette()) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

std::string instantiate(const PaletteItem& item, int indent_level) {
  std::string prefix(static_cast<std::size_t>(indent_level) * 2, ' ');
  std::string out;
  bool at_line_start = true;
  for (char c : item.template_text) {
    if (at_line_start && c != '\n') out += prefix;
    out += c;
    at_line_start = c == '\n';
  }
  if (out.empty() || out.back() != '\n') out += '\n';
  return out;
}

std::string palette_json() {
  nlohmann::json items = nlohmann::json::array();
  for (const PaletteItem& item : palette()) {
    items.push_back({{"id", item.id},
                     {"category", std::string(to_string(item.category))},
                     {"label", item.label},
                     {"template", item.template_text},
                     {"sockets", item.sockets}});
  }
  return items.dump(2) + "\n";
}

}  // namespace hybrid::adapter
