#pragma once

#include <iosfwd>

namespace nctherm::cli {

enum ExitCode : int { kOk = 0, kDomainRejected = 1, kUsage = 2, kCheckFailed = 3 };

// Machine-readable output goes to `out`, diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nctherm::cli
