#pragma once

#include <iosfwd>

namespace mhdchar {

/// Exit codes of the command-line front end.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int partial = 1;      ///< per-point science failures without --allow-partial
inline constexpr int usage = 2;        ///< config, schema, usage or IO error
inline constexpr int assertion = 3;    ///< classification errors or failed study assertions
}  // namespace exit_code

/// Commands: speeds, classify, scan, shock-study.
/// Flags: --config <path> (required), --out <dir>, --refine <k>, --allow-partial.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mhdchar
