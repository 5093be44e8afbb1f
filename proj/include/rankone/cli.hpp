#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rankone/io.hpp"

namespace rankone::cli {

/// Exit codes: constructed and verified, error, verification failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerificationFailed = 2;

struct RunResult {
  int exit_code = kExitOk;
  io::Report report;
};

/// args excludes the program name. The report goes to `out` (text, or JSON
/// with --json); usage and error messages go to `err`.
RunResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv);

}  // namespace rankone::cli
