// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catcode::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full verification suite. One result per criterion, in order.
std::vector<CriterionResult> run_all(int workers);

// Prints one pass/fail line per criterion to `out`; returns true when every
// criterion passed.
bool run_and_report(std::ostream& out, int workers);

} // namespace catcode::acceptance
