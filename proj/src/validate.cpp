#include "mdict/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mdict {

const char* check_name(Check c) {
    switch (c) {
        case Check::Arity: return "arity";
        case Check::WeightSum: return "weight-sum";
        case Check::RankDef: return "rank-def";
        case Check::RankBounds: return "rank-bounds";
        case Check::Bias: return "bias";
        case Check::KeyOrder: return "key-order";
        case Check::MinMaxCache: return "minmax-cache";
        case Check::ShiftResolution: return "shift-resolution";
        case Check::DepthBound: return "depth-bound";
        case Check::GapWeighting: return "gap-weighting";
    }
    return "unknown";
}

bool ValidationReport::ok() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::string ValidationReport::to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < kCheckCount; ++i) {
        const CheckResult& r = results[i];
        out << check_name(static_cast<Check>(i));
        if (!r.ran) {
            out << " skipped\n";
        } else if (r.passed) {
            out << " ok\n";
        } else {
            out << " FAIL at [";
            for (std::size_t j = 0; j < r.path.size(); ++j) out << (j ? "," : "") << r.path[j];
            out << "]: " << r.detail << '\n';
        }
    }
    return out.str();
}

namespace {

struct LeafInfo {
    const Node* leaf;
    Key key;
    int depth;
    std::vector<int> path;
};

class Validator {
public:
    explicit Validator(ValidationReport& report) : report_(report) {}

    void fail(Check c, const std::vector<int>& path, const std::string& detail) {
        CheckResult& r = report_[c];
        if (!r.passed) return;
        r.passed = false;
        r.path = path;
        r.detail = detail;
    }

    // Returns the resolved (min, max) of the subtree, computed from its leaves.
    std::pair<Key, Key> walk(const Node* x, Key above, int depth, std::vector<int>& path) {
        const Key here = above + x->shift;
        if (x->is_leaf()) {
            check_leaf(x, path);
            leaves.push_back({x, here + x->lo, depth, path});
            return {here + x->lo, here + x->hi};
        }

        if (x->arity < 2 || x->arity > 3) {
            fail(Check::Arity, path, "internal node with " + std::to_string(x->arity) + " children");
        }
        for (int i = x->arity; i < 3; ++i) {
            if (x->kids[i] != nullptr) fail(Check::Arity, path, "stale child pointer past arity");
        }

        Weight sum = 0;
        int max_rank = -1;
        std::pair<Key, Key> range{0, 0};
        for (int i = 0; i < x->arity; ++i) {
            const Node* c = x->kids[i];
            if (c == nullptr) {
                fail(Check::Arity, path, "null child in slot " + std::to_string(i));
                continue;
            }
            if (c->parent != x) fail(Check::Arity, path, "child " + std::to_string(i) + " has wrong parent");
            path.push_back(i);
            auto sub = walk(c, here, depth + 1, path);
            path.pop_back();
            if (i == 0) range.first = sub.first;
            range.second = sub.second;
            sum += c->weight;
            max_rank = std::max(max_rank, c->rank);
        }

        if (sum != x->weight) {
            fail(Check::WeightSum, path, "weight " + std::to_string(x->weight) + " but children sum to " +
                                             std::to_string(sum));
        }
        if (x->rank != max_rank + 1) {
            fail(Check::RankDef, path, "rank " + std::to_string(x->rank) + " expected " + std::to_string(max_rank + 1));
        }
        if (x->rank >= 1 && x->rank - 1 < 64 && x->weight < (Weight{1} << (x->rank - 1))) {
            fail(Check::RankBounds, path, "weight below 2^(rank-1)");
        }
        check_bias(x, path);

        const Node* first = x->kids[0];
        const Node* last = x->kids[x->arity - 1];
        if (first && last && (x->lo != first->shift + first->lo || x->hi != last->shift + last->hi)) {
            fail(Check::MinMaxCache, path, "cached range disagrees with the outer children");
        }
        if (here + x->lo != range.first || here + x->hi != range.second) {
            fail(Check::ShiftResolution, path, "resolved range [" + std::to_string(here + x->lo) + "," +
                                                   std::to_string(here + x->hi) + "] but leaves span [" +
                                                   std::to_string(range.first) + "," + std::to_string(range.second) +
                                                   "]");
        }
        return range;
    }

    std::vector<LeafInfo> leaves;

private:
    void check_leaf(const Node* x, const std::vector<int>& path) {
        if (x->weight == 0) fail(Check::WeightSum, path, "leaf with zero weight");
        if (x->multiplicity == 0) fail(Check::WeightSum, path, "leaf with zero multiplicity");
        if (x->lo != x->hi) fail(Check::MinMaxCache, path, "leaf with lo != hi");
        if (x->weight != 0 && x->rank != rank_of_weight(x->weight)) {
            fail(Check::RankDef, path, "leaf rank " + std::to_string(x->rank) + " for weight " +
                                           std::to_string(x->weight));
        }
        const int r = x->rank;
        const bool low_ok = r >= 0 && r < 64 && x->weight >= (Weight{1} << r);
        const bool high_ok = r >= 63 || x->weight < (Weight{1} << (r + 1));
        if (!low_ok || !high_ok) fail(Check::RankBounds, path, "leaf weight outside [2^r, 2^(r+1))");
    }

    void check_bias(const Node* x, std::vector<int>& path) {
        for (int i = 0; i < x->arity; ++i) {
            const Node* c = x->kids[i];
            if (c == nullptr || c->rank >= x->rank - 1) continue;
            for (int n : {i - 1, i + 1}) {
                if (n < 0 || n >= x->arity || x->kids[n] == nullptr) continue;
                const Node* s = x->kids[n];
                if (!s->is_leaf() || s->rank != x->rank - 1) {
                    path.push_back(i);
                    fail(Check::Bias, path, "minor child next to a sibling that is not a major leaf");
                    path.pop_back();
                }
            }
        }
    }

    ValidationReport& report_;
};

// 2^(d-2) * w < W, i.e. d < lg(W/w) + 2, in exact integer arithmetic.
bool depth_ok(int depth, Weight w, Weight total) {
    if (depth < 2) return true;
    const int e = depth - 2;
    if (e >= 64) return false;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(w) << e;
    return lhs < total;
}

}  // namespace

ValidationReport validate_tree(Tree t, ValidationMode mode) {
    ValidationReport report;
    if (mode == ValidationMode::Structural) report[Check::GapWeighting].ran = false;
    if (t.empty()) return report;

    Validator v(report);
    std::vector<int> path;
    if (t.root->parent != nullptr) v.fail(Check::Arity, path, "root has a parent");
    v.walk(t.root, 0, 0, path);

    const auto& leaves = v.leaves;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const LeafInfo& x = leaves[i];
        if (i > 0 && leaves[i - 1].key >= x.key) {
            v.fail(Check::KeyOrder, x.path, "key " + std::to_string(x.key) + " not above " +
                                                std::to_string(leaves[i - 1].key));
        }
        if (!depth_ok(x.depth, x.leaf->weight, t.root->weight)) {
            v.fail(Check::DepthBound, x.path, "depth " + std::to_string(x.depth) + " too deep for weight " +
                                                  std::to_string(x.leaf->weight) + " in total " +
                                                  std::to_string(t.root->weight));
        }
        if (mode == ValidationMode::FullWithWeighting) {
            const Key gm = i == 0 ? 1 : x.key - leaves[i - 1].key;
            const Key gp = i + 1 == leaves.size() ? 1 : leaves[i + 1].key - x.key;
            const Weight want = static_cast<Weight>(gm) + static_cast<Weight>(gp);
            if (x.leaf->weight != want) {
                v.fail(Check::GapWeighting, x.path, "leaf " + std::to_string(x.key) + " weighs " +
                                                        std::to_string(x.leaf->weight) + ", gaps give " +
                                                        std::to_string(want));
            }
        }
    }
    return report;
}

double potential(Tree t) {
    const std::vector<Entry> keys = Forest::items(t);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
        // Each interior gap is the right gap of one key and the left gap of the next.
        total += 2.0 * std::log2(static_cast<double>(keys[i + 1].key - keys[i].key));
    }
    return total;
}

std::uint64_t fingerprint(Tree t) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    if (t.empty()) return h;
    std::vector<const Node*> stack{t.root};
    while (!stack.empty()) {
        const Node* x = stack.back();
        stack.pop_back();
        mix(reinterpret_cast<std::uintptr_t>(x));
        mix(reinterpret_cast<std::uintptr_t>(x->parent));
        mix(x->arity);
        mix(static_cast<std::uint64_t>(x->rank));
        mix(x->weight);
        mix(static_cast<std::uint64_t>(x->shift));
        mix(static_cast<std::uint64_t>(x->lo));
        mix(static_cast<std::uint64_t>(x->hi));
        mix(x->multiplicity);
        for (int i = x->arity - 1; i >= 0; --i) {
            if (x->kids[i]) stack.push_back(x->kids[i]);
        }
    }
    return h;
}

}  // namespace mdict
