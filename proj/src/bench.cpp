#include "mdict/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mdict {

BenchSummary summarize(const RunReport& report) {
    BenchSummary s;
    s.total_work = report.total_work;
    for (const CostRecord& r : report.records) {
        if (r.kind != OpKind::Merge) continue;
        ++s.merges;
        s.sum_lg_range += std::log2(static_cast<double>(std::max<std::uint64_t>(r.key_range, 2)));
    }
    if (s.sum_lg_range > 0) s.ratio = static_cast<double>(s.total_work) / s.sum_lg_range;
    return s;
}

void write_csv(std::ostream& out, const RunReport& report) {
    out << kCsvHeader << '\n';
    char buf[64];
    for (const CostRecord& r : report.records) {
        out << r.op_index << ',' << to_string(r.kind) << ',' << r.key_range << ',' << r.work << ',';
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", r.potential_before, r.potential_after);
        out << buf << '\n';
    }
    if (report.records.empty()) return;
    const BenchSummary s = summarize(report);
    std::snprintf(buf, sizeof buf, "%.3f", s.sum_lg_range);
    out << "# summary total_work=" << s.total_work << " sum_lg_u_merge=" << buf;
    std::snprintf(buf, sizeof buf, "%.4f", s.ratio);
    out << " ratio=" << buf;
    std::snprintf(buf, sizeof buf, "%.1f", report.wall_ms);
    out << " wall_ms=" << buf << '\n';
}

}  // namespace mdict
