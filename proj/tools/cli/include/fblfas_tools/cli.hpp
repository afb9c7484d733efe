#pragma once

#include <iosfwd>

namespace fblfas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one invocation. Data goes to `out` (or --out), diagnostics to `err`.
/// Returns 0 on success, 1 when `validate` reports failures, 2 on a usage or
/// validation error, 3 on a numeric failure. Nothing is written to the data
/// stream unless the whole computation succeeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fblfas::cli
