#pragma once

#include <iosfwd>

namespace tmn::cli {

enum ExitCode : int {
	kOk = 0,
	kViolated = 1,
	kInputError = 2,
	kCycleBudget = 3,
	kInvalid = 4,
	kOutputError = 5,
	kNegativeStock = 6,
};

/// Entry point of the `tmn` tool. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tmn::cli
