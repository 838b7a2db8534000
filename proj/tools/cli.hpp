#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace echcap::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kPrecondition = 3;  // invalid input or violated precondition
inline constexpr int kIo = 4;
inline constexpr int kConsistency = 5;  // a cross-check failed
inline constexpr int kUnavailable = 6;  // a spectrum could not be extended far enough

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& data);

}  // namespace echcap::cli
