#pragma once

#include <string>
#include <vector>

namespace exeval {

// Full command-line interface: subcommands featurize, loso, compare, synth.
// Returns the process exit code (0 iff the run completed without errors).
int cli_main(const std::vector<std::string>& args);

}  // namespace exeval
