#pragma once

#include <iosfwd>

namespace hybrid::service {

// Subcommands: parse, fmt, blocks, run, grade, serve, palette.
// Exit codes: 0 ok, 1 diagnostics or failed program, 2 usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hybrid::service
