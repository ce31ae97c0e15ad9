#pragma once

namespace mmw {

/// Command-line entry point (subcommands: sweep, contour, compare, topo-gen,
/// schedule). Returns the process exit status; diagnostics go to stderr.
int cli_main(int argc, const char* const* argv);

}  // namespace mmw
