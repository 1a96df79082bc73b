// qcli command implementations.
#pragma once

#include <iosfwd>

#include "horrocks/error.hpp"

namespace qcli {

enum ExitCode { Success = 0, PropertyFailure = 1, InputError = 2, PreconditionError = 3 };

ExitCode exit_code(horrocks::ErrorKind k);

/// Runs the command line argv[1..argc) and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcli
