#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankp/parse.hpp"

namespace rankp::cli {

struct RunOptions {
    long prec = 32;       // tower working precision when the header has no N
    int window_lo = -64;  // T-window when the header has no window line
    int window_hi = 64;
    enum class Extend { off, automatic, manual } extend = Extend::off;
    uint32_t extend_c = 1; // manual ramified base-change factor
    uint64_t seed = 1;     // randomized property directives
    bool json = false;     // NDJSON instead of the table view
};

// One output line per directive, in directive order.  exit_code is 0 when
// every verdict directive (cartier-check, kummerian, galois-check) passed,
// 1 otherwise.  Directive-level failures never abort the run; they appear
// as structured error lines.  Configuration problems (bad p, impossible
// tower) are thrown as rankp::error -- the caller maps those to exit 2.
struct RunResult {
    std::vector<std::string> lines;
    int exit_code = 0;
};

RunResult run_document(const Document& doc, const RunOptions& opt);

} // namespace rankp::cli
