#ifndef WRB_CLI_H
#define WRB_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

#include "wrb/report.hpp"

namespace wrb {

// Exhaustive structural checks for the wreathed model with the given n, plus
// the fusion-level checks on the matching catalog group (c4c4-s3 for n = 2,
// c8c8-s3 for n = 3). `filter` selects checks whose name contains it
// (case-insensitive); empty selects everything. Per-check wall-clock times are
// appended to *timings when given.
std::vector<LemmaResult> run_lemma_suite(int n, const std::string& filter = "",
                                         std::vector<StageTiming>* timings = nullptr);

// Command-line surface. Returns the process exit code:
//   0 success, 1 check or verification failure, 2 precondition failure,
//   3 resource cap exceeded, 4 usage or parse error.
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace wrb

#endif
