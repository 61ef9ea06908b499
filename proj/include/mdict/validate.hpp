#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mdict/biased_tree.hpp"

namespace mdict {

enum class Check : std::uint8_t {
    Arity,
    WeightSum,
    RankDef,
    RankBounds,
    Bias,
    KeyOrder,
    MinMaxCache,
    ShiftResolution,
    DepthBound,
    GapWeighting,
};

inline constexpr std::size_t kCheckCount = 10;

const char* check_name(Check c);

enum class ValidationMode { Structural, FullWithWeighting };

struct CheckResult {
    bool ran = true;
    bool passed = true;
    std::vector<int> path;  // child indices from the root to the first violation
    std::string detail;
};

struct ValidationReport {
    std::array<CheckResult, kCheckCount> results;

    bool ok() const;
    const CheckResult& operator[](Check c) const { return results[static_cast<std::size_t>(c)]; }
    CheckResult& operator[](Check c) { return results[static_cast<std::size_t>(c)]; }
    /// One line per check: "<name> ok", "<name> skipped" or
    /// "<name> FAIL at [path]: detail".
    std::string to_text() const;
};

/// Full traversal of `t`. Resolves offsets on the fly and never mutates the
/// tree. Structural mode skips the gap-weighting check, which only applies to
/// dictionary sets.
ValidationReport validate_tree(Tree t, ValidationMode mode = ValidationMode::FullWithWeighting);

/// Sum over the keys of lg g+(x) + lg g-(x), evaluated left to right.
double potential(Tree t);

/// Hash over every node field in preorder; equal before and after any
/// read-only pass.
std::uint64_t fingerprint(Tree t);

}  // namespace mdict
