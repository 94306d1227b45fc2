#pragma once

#include "balpair/verdict.hpp"

#include <iosfwd>

namespace balpair {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_error = 1,           ///< parse, usage or input error; failed fixture expectation in batch mode
    exit_budget = 2,          ///< finished, but some cell exceeded a budget
    exit_undecidable = 3,     ///< numerics could not classify an eigenvalue
    exit_internal = 4,        ///< internal invariant violation
};

/// Exit code for a finished report: internal > undecidable > cell error > budget > ok.
int exit_code_for(const AnalysisReport& report);

/// Entry point of the balpair tool, with injectable output streams.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace balpair
