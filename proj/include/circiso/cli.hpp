#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circiso {

inline constexpr int kExitIsomorphic = 0;
inline constexpr int kExitNotIsomorphic = 1;
inline constexpr int kExitNotInClass = 2;
inline constexpr int kExitParse = 64;
inline constexpr int kExitGuard = 65;
inline constexpr int kExitInternal = 70;

// Runs one command; args excludes the program name. Reports go to out,
// diagnostics to err; the return value is the exit status.
//
//   matrix-iso A B [--emit-certificate] [--emit-canonical] [--dump-tree]
//   class-iso {hca|gamma|convex-round|pca} A B [--emit-certificate]
//             [--trust-helly] [--size-guard N]
//   canonical A [--dump-tree]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circiso
