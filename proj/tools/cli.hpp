#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncx::cli {

// Runs one command line (without the program name). Data goes to out,
// progress and diagnostics to err. Returns the process exit status:
// 0 success, 1 a proven statement failed, 2 usage, 3 capacity or I/O.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncx::cli
