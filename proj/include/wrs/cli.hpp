#pragma once

// Command-line front end.  Subcommands: clifford, flow, revolve,
// bound-scan, mesh.  Exit codes: 0 all checks pass, 1 I/O failure,
// 2 tolerance/verdict failure (including unusable parameters), 3 numerical
// instability.  All default tolerances scale with --tol-scale; identical
// configurations produce byte-identical CSV output.

namespace wrs::cli {

int run(int argc, char** argv);

}  // namespace wrs::cli
