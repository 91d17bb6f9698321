#pragma once

namespace jointdrop::cli {

// Exit codes: 0 success, 1 I/O failure, 2 validation or configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;

int Run(int argc, char** argv);

}  // namespace jointdrop::cli
