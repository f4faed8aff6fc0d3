#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

/// Entry point of the `ctes` tool. args excludes the program name. Returns 0
/// on success, 1 on usage or domain errors, 2 on I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctes::cli
