#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "mdict/trace.hpp"

namespace mdict {

inline constexpr const char* kCsvHeader = "op_index,kind,u_g,work,phi_before,phi_after";

struct BenchSummary {
    std::uint64_t total_work = 0;
    double sum_lg_range = 0.0;  // sum over merges of lg max(u, 2), u the merged key range
    double ratio = 0.0;           // total_work / sum_lg_range, 0 without merges
    std::uint64_t merges = 0;
};

BenchSummary summarize(const RunReport& report);

/// Header, one row per op, then a "# summary ..." line unless the trace was
/// empty.
void write_csv(std::ostream& out, const RunReport& report);

}  // namespace mdict
