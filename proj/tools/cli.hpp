#pragma once

#include <iosfwd>

namespace vilenkin::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kBackendBoundary = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vilenkin::cli
