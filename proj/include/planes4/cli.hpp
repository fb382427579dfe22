#pragma once

namespace planes4 {

inline constexpr const char* kVersion = "0.1.0";

// Entry point of the planes4 tool. Returns 0 on success, 1 on configuration
// errors (bad flags, unreadable files, violated preconditions), 2 when a
// computation fails its own numerical checks.
int run_command(int argc, const char* const* argv);

}  // namespace planes4
