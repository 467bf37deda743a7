#pragma once

// Subcommands: eval, agreement, curves, perturb, correlate, heatmap,
// synth, synth-dataset, validate.
//
// Exit codes: 0 success, 1 usage error, 2 invalid input, 3 computation error.

#include <iosfwd>
#include <string>
#include <vector>

namespace vadeval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCompute = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace vadeval::cli
