#pragma once

#include <iosfwd>

namespace adelic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // failed verification, selftest or computation
inline constexpr int kExitUsage = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adelic::cli
