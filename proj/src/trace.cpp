#include "mdict/trace.hpp"

#include <charconv>
#include <chrono>
#include <sstream>

#include "mdict/baseline.hpp"
#include "mdict/dictionary.hpp"
#include "mdict/oracle.hpp"
#include "mdict/validate.hpp"

namespace mdict {

const char* to_string(OpKind kind) {
    switch (kind) {
        case OpKind::MakeSet: return "makeset";
        case OpKind::Search: return "search";
        case OpKind::Split: return "split";
        case OpKind::Merge: return "merge";
        case OpKind::Shift: return "shift";
    }
    return "unknown";
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line, const char* what) {
    std::int64_t v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) throw ParseError(line, std::string(what) + " out of range: " + std::string(tok));
    if (ec != std::errc() || ptr != last) throw ParseError(line, std::string(what) + " is not an integer: " + std::string(tok));
    return v;
}

std::int64_t parse_id(std::string_view tok, std::size_t line) {
    const std::int64_t v = parse_int(tok, line, "set id");
    if (v <= 0) throw ParseError(line, "set id must be positive: " + std::string(tok));
    return v;
}

}  // namespace

std::vector<TraceOp> parse_trace(std::string_view text) {
    std::vector<TraceOp> ops;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto toks = tokenize(line);
        if (toks.empty() || toks.front().front() == '#') continue;

        TraceOp op;
        op.line = line_no;
        const std::string_view name = toks.front();
        std::size_t want = 3;
        if (name == "makeset") {
            op.kind = OpKind::MakeSet;
            want = 2;
        } else if (name == "search") {
            op.kind = OpKind::Search;
        } else if (name == "split") {
            op.kind = OpKind::Split;
        } else if (name == "merge") {
            op.kind = OpKind::Merge;
        } else if (name == "shift") {
            op.kind = OpKind::Shift;
        } else {
            throw ParseError(line_no, "unknown operation '" + std::string(name) + "'");
        }
        if (toks.size() < want) throw ParseError(line_no, std::string(name) + ": missing argument");
        if (toks.size() > want) throw ParseError(line_no, std::string(name) + ": too many arguments");

        if (op.kind == OpKind::MakeSet) {
            op.a = parse_int(toks[1], line_no, "key");
        } else if (op.kind == OpKind::Merge) {
            op.a = parse_id(toks[1], line_no);
            op.b = parse_id(toks[2], line_no);
        } else {
            op.a = parse_id(toks[1], line_no);
            op.b = parse_int(toks[2], line_no, op.kind == OpKind::Shift ? "offset" : "key");
        }
        ops.push_back(op);
    }
    return ops;
}

std::string format_op(const TraceOp& op) {
    std::string s = to_string(op.kind);
    s += ' ';
    s += std::to_string(op.a);
    if (op.kind != OpKind::MakeSet) {
        s += ' ';
        s += std::to_string(op.b);
    }
    return s;
}

std::string format_trace(const std::vector<TraceOp>& ops) {
    std::string out;
    for (const TraceOp& op : ops) {
        out += format_op(op);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<SetId> inputs_of(const TraceOp& op) {
    switch (op.kind) {
        case OpKind::MakeSet: return {};
        case OpKind::Merge: return {static_cast<SetId>(op.a), static_cast<SetId>(op.b)};
        default: return {static_cast<SetId>(op.a)};
    }
}

std::vector<SetId> outputs_of(const TraceOp& op, const OpOutcome& out) {
    switch (op.kind) {
        case OpKind::MakeSet:
        case OpKind::Merge: return {out.first};
        case OpKind::Split: return {out.first, out.second};
        default: return {static_cast<SetId>(op.a)};
    }
}

std::uint64_t universe(Tree t) {
    if (t.empty()) return 0;
    return static_cast<std::uint64_t>(t.max_key() - t.min_key());
}

std::string describe(const OpOutcome& o) {
    std::ostringstream s;
    s << "{found=";
    if (o.found) s << *o.found;
    else s << "none";
    s << " ids=" << o.first << "," << o.second << "}";
    return s.str();
}

template <class Family>
void validate_all(const Family& family, ValidationMode mode, std::size_t op_index, std::vector<std::string>& failures) {
    for (SetId id : family.ids()) {
        const ValidationReport report = validate_tree(family.tree(id), mode);
        if (report.ok()) continue;
        std::ostringstream msg;
        msg << "after op " << op_index << ", set " << id << ":\n" << report.to_text();
        failures.push_back(msg.str());
    }
}

template <class Family>
void compare_final(const Family& family, const OracleFamily& oracle, std::vector<std::string>& divergences) {
    const auto ids = family.ids();
    if (ids.size() != oracle.sets().size()) {
        divergences.push_back("final: engine holds " + std::to_string(ids.size()) + " sets, oracle " +
                              std::to_string(oracle.sets().size()));
    }
    for (SetId id : ids) {
        if (!oracle.contains(id)) {
            divergences.push_back("final: set " + std::to_string(id) + " missing from oracle");
            continue;
        }
        if (family.items(id) != oracle.items(id)) {
            divergences.push_back("final: set " + std::to_string(id) + " differs from oracle");
        }
    }
}

struct SegmentProbe : MergeObserver {
    std::size_t k = 0;
    void on_segments(const SegmentDecomposition& d, bool) override { k = d.k(); }
};

template <class Family>
RunReport replay(Family& family, const std::vector<TraceOp>& ops, const RunOptions& options, ValidationMode mode,
                 SegmentProbe* probe = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.outcomes.reserve(ops.size());
    report.records.reserve(ops.size());
    OracleFamily oracle;

    for (std::size_t i = 0; i < ops.size(); ++i) {
        const TraceOp& op = ops[i];
        CostRecord rec;
        rec.op_index = i;
        rec.kind = op.kind;
        OpOutcome outcome;
        try {
            const std::vector<SetId> in = inputs_of(op);
            if (op.kind != OpKind::Merge && !in.empty()) rec.key_range = universe(family.tree(in[0]));
            if (options.potential && !(op.kind == OpKind::Merge && op.a == op.b)) {
                for (std::size_t k = 0; k < in.size(); ++k) {
                    const Tree t = family.tree(in[k]);
                    rec.potential_before += potential(t);
                    (k == 0 ? rec.weight_a : rec.weight_b) = t.weight();
                    (k == 0 ? rec.size_a : rec.size_b) = Forest::size(t);
                }
            }
            if (probe) probe->k = 0;
            const std::uint64_t w0 = family.work().steps();
            outcome = apply_op(family, op);
            rec.work = family.work().steps() - w0;
            if (probe && op.kind == OpKind::Merge) rec.segments = probe->k;
            const std::vector<SetId> out = outputs_of(op, outcome);
            if (op.kind == OpKind::Merge) rec.key_range = universe(family.tree(out[0]));
            if (options.potential) {
                for (SetId id : out) rec.potential_after += potential(family.tree(id));
            }
        } catch (const DictionaryError& e) {
            throw TraceError(i, op, e.code(), e.what());
        }
        report.outcomes.push_back(outcome);
        report.records.push_back(rec);

        if (options.oracle) {
            try {
                const OpOutcome expect = apply_op(oracle, op);
                if (!(expect == outcome)) {
                    report.divergences.push_back("op " + std::to_string(i) + " (" + format_op(op) + "): engine " +
                                                 describe(outcome) + ", oracle " + describe(expect));
                }
            } catch (const DictionaryError& e) {
                report.divergences.push_back("op " + std::to_string(i) + " (" + format_op(op) +
                                             "): oracle raised " + e.what());
            }
        }
        if (options.check == CheckMode::EveryOp) validate_all(family, mode, i, report.invariant_failures);
    }

    if (options.check == CheckMode::Final) validate_all(family, mode, ops.size(), report.invariant_failures);
    if (options.oracle) compare_final(family, oracle, report.divergences);

    report.total_work = family.work().steps();
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

RunReport run_trace(const std::vector<TraceOp>& ops, const RunOptions& options) {
    SetFamily family;
    SegmentProbe probe;
    family.set_merge_observer(&probe);
    return replay(family, ops, options, ValidationMode::FullWithWeighting, &probe);
}

RunReport run_baseline(const std::vector<TraceOp>& ops, const RunOptions& options) {
    BaselineFamily family;
    return replay(family, ops, options, ValidationMode::Structural);
}

}  // namespace mdict
