#pragma once

#include <ostream>

namespace nmf::cli {

/// Runs the nmf command line. Exit codes: 0 success, 1 a check failed,
/// 2 usage or validation error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nmf::cli
