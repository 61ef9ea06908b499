#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mdict/biased_tree.hpp"

namespace mdict {

enum class OpKind : std::uint8_t { MakeSet, Search, Split, Merge, Shift };

const char* to_string(OpKind kind);

/// One trace line. Argument meaning by kind:
///   makeset j      a = j
///   search id j    a = id, b = j
///   split id j     a = id, b = j
///   merge id id    a, b = ids
///   shift id j     a = id, b = j
/// Ids are never written in the trace for results; they follow from the
/// creation order (1, 2, 3, ...; split creates its lower part first).
struct TraceOp {
    OpKind kind = OpKind::MakeSet;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::size_t line = 0;  // 1-based source line, 0 when generated

    friend bool operator==(const TraceOp& x, const TraceOp& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

std::vector<TraceOp> parse_trace(std::string_view text);
std::string format_op(const TraceOp& op);
std::string format_trace(const std::vector<TraceOp>& ops);

/// Engine error raised while replaying; carries the 0-based op index.
class TraceError : public std::runtime_error {
public:
    TraceError(std::size_t op_index, const TraceOp& op, ErrorCode code, const std::string& what)
        : std::runtime_error("op " + std::to_string(op_index) + " (" + format_op(op) + "): " + what),
          op_index_(op_index),
          code_(code) {}
    std::size_t op_index() const noexcept { return op_index_; }
    ErrorCode code() const noexcept { return code_; }

private:
    std::size_t op_index_;
    ErrorCode code_;
};

struct OpOutcome {
    std::optional<Key> found;  // search only
    SetId first = 0;           // makeset, merge, split (lower part)
    SetId second = 0;          // split (upper part)

    friend bool operator==(const OpOutcome&, const OpOutcome&) = default;
};

/// Applies one op to any family exposing the five operations.
template <class Family>
OpOutcome apply_op(Family& family, const TraceOp& op) {
    OpOutcome out;
    switch (op.kind) {
        case OpKind::MakeSet:
            out.first = family.make_set(op.a);
            break;
        case OpKind::Search:
            out.found = family.search(static_cast<SetId>(op.a), op.b);
            break;
        case OpKind::Split: {
            auto [l, r] = family.split(static_cast<SetId>(op.a), op.b);
            out.first = l;
            out.second = r;
            break;
        }
        case OpKind::Merge:
            out.first = family.merge(static_cast<SetId>(op.a), static_cast<SetId>(op.b));
            break;
        case OpKind::Shift:
            family.shift(static_cast<SetId>(op.a), op.b);
            break;
    }
    return out;
}

enum class CheckMode { None, Final, EveryOp };

struct RunOptions {
    CheckMode check = CheckMode::None;
    bool oracle = false;
    // Potential and set sizes cost a full pass over the touched sets per op.
    bool potential = false;
};

struct CostRecord {
    std::size_t op_index = 0;
    OpKind kind = OpKind::MakeSet;
    std::uint64_t key_range = 0;  // max - min of the input set, or of the output for merge
    std::uint64_t work = 0;
    double potential_before = 0.0;  // summed over the sets the op consumes
    double potential_after = 0.0;   // summed over the sets the op leaves behind
    Weight weight_a = 0;
    Weight weight_b = 0;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    std::size_t segments = 0;  // run count k of a merge, 0 otherwise or when unknown
};

struct RunReport {
    std::vector<OpOutcome> outcomes;
    std::vector<CostRecord> records;
    std::vector<std::string> divergences;
    std::vector<std::string> invariant_failures;
    std::uint64_t total_work = 0;
    double wall_ms = 0.0;

    bool clean() const { return divergences.empty() && invariant_failures.empty(); }
};

/// Replays `ops` against the biased engine. Engine errors surface as
/// TraceError; disagreements with the oracle and failed checks are collected
/// in the report instead.
RunReport run_trace(const std::vector<TraceOp>& ops, const RunOptions& options = {});

/// Same replay against the uniform-weight baseline. Gap weighting is not
/// checked there since the baseline does not use it.
RunReport run_baseline(const std::vector<TraceOp>& ops, const RunOptions& options = {});

}  // namespace mdict
