#pragma once

// Command-line front end. run_cli is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
//   hbvm tableau    --k K --s S [--out FILE]
//   hbvm splitting  --s S [--out FILE]
//   hbvm analyze    [--s 2,3,4,5,6] [--mu 1,2,3] [--points N] [--serial] [--out FILE]
//   hbvm integrate  --problem NAME [--method hbvm|composition6] [--k K] [--s S] [--h H]
//                   [--t-end T] [--solver splitting|newton|fixed-point] [--mu M] [--tol TOL]
//                   [--max-outer N] [--omega W] [--reference] [--every N] [--out FILE] [--stats FILE]
//   hbvm sweep      --spec FILE [--jobs N] [--serial] [--out FILE]
//
// Exit codes: 0 success (a run that fails to converge is a result, not an
// error), 2 usage error, 3 I/O error.

#include <ostream>
#include <string>
#include <vector>

namespace hbvm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hbvm::cli
