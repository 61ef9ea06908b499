#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdict/trace.hpp"

namespace mdict {

enum class WorkloadKind { InterleaveMerge, UnionSplitFind, ShiftHeavy, AdversarialK };

const char* to_string(WorkloadKind kind);
std::optional<WorkloadKind> parse_workload_kind(std::string_view name);

struct WorkloadParams {
    std::uint64_t num_sets = 64;
    unsigned universe_bits = 16;  // keys are drawn from [1, 2^bits]
    std::uint64_t ops = 1000;
};

/// Deterministic trace for a seed. Every op references live sets.
///
/// adversarial-k reads the parameters differently: num_sets is the number of
/// elements on each side of the top merge and ops is the number of merges.
/// Each round makes 2 * num_sets singletons spread evenly over the universe
/// and merges them back together by alternating position, so every merge
/// sees its two inputs perfectly interleaved.
std::vector<TraceOp> gen_workload(WorkloadKind kind, std::uint64_t seed, const WorkloadParams& params);

}  // namespace mdict
