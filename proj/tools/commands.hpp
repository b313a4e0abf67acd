#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ornament::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kContract = 2;

/// Runs one command line (args[0] is the program name). JSON reports go to
/// `out`, human-readable summaries and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ornament::cli
