// SPDX-License-Identifier: Apache-2.0

// Release gate: runs every verification criterion and prints one pass/fail
// line each. Exit status 0 only when all pass.

#include <iostream>

#include "catcode/acceptance.hpp"

int main() {
    const bool ok = catcode::acceptance::run_and_report(std::cout, 0);
    return ok ? 0 : 1;
}
