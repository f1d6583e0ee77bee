#pragma once

#include <ostream>

namespace lawpca {

// Exit codes: 0 success, 2 bad input or usage, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lawpca
