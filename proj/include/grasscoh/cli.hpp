#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace grasscoh::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // internal invariant violation or failed duality check
constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. The document goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grasscoh::cli
