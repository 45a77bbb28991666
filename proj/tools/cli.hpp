#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dstbc::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;

/// Entry point of the `dstbc` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dstbc::cli
