#pragma once

#include <ostream>

namespace stiefel_sr::cli {

/// Parses the command line and runs the selected command. Returns the exit
/// code: 0 success, 1 verification failure, 2 usage or format error,
/// 3 numerical invariant violation.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace stiefel_sr::cli
