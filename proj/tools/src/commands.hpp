#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geotree::cli {

enum ExitCode { kOk = 0, kInternal = 1, kValidation = 2, kInfeasible = 3 };

// Runs the command line; JSON or SVG goes to out (or --out), messages to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geotree::cli
