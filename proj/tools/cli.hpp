#pragma once

#include <iosfwd>

namespace base_pulse::cli {

// Exit codes of the base_pulse tool.
inline constexpr int kOk = 0;
inline constexpr int kInvalidArguments = 2;
inline constexpr int kIoError = 3;
inline constexpr int kVerificationFailure = 4;

// Entry point shared by the executable and the tests. Normal output goes to
// `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace base_pulse::cli
