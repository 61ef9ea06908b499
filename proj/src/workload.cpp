#include "mdict/workload.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "mdict/oracle.hpp"

namespace mdict {

const char* to_string(WorkloadKind kind) {
    switch (kind) {
        case WorkloadKind::InterleaveMerge: return "interleave-merge";
        case WorkloadKind::UnionSplitFind: return "union-split-find";
        case WorkloadKind::ShiftHeavy: return "shift-heavy";
        case WorkloadKind::AdversarialK: return "adversarial-k";
    }
    return "unknown";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view name) {
    for (auto k : {WorkloadKind::InterleaveMerge, WorkloadKind::UnionSplitFind, WorkloadKind::ShiftHeavy,
                   WorkloadKind::AdversarialK}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

namespace {

// Drives an oracle alongside the emitted ops so every argument is valid.
class Simulator {
public:
    Simulator(std::uint64_t seed, unsigned bits) : rng_(seed), universe_(Key{1} << bits) {}

    std::vector<TraceOp> ops;

    std::size_t live() const { return live_.size(); }

    Key random_key() { return uniform(1, universe_); }

    // A key that already sits in some set, so later merges intersect.
    Key existing_key() {
        for (int attempt = 0; attempt < 4 && !live_.empty(); ++attempt) {
            const auto& s = oracle_.items(live_[pick()]);
            if (!s.empty()) return s[uniform(0, static_cast<Key>(s.size()) - 1)].key;
        }
        return random_key();
    }

    void make_set(Key k) {
        emit({OpKind::MakeSet, k, 0});
        live_.push_back(oracle_.make_set(k));
    }

    void search() {
        const SetId id = live_[pick()];
        const auto& s = oracle_.items(id);
        const Key j = s.empty() ? random_key() : uniform(s.front().key - 1, s.back().key + 1);
        emit({OpKind::Search, static_cast<std::int64_t>(id), j});
        oracle_.search(id, j);
    }

    void split() {
        const std::size_t i = pick();
        const SetId id = live_[i];
        const auto& s = oracle_.items(id);
        Key j = 0;
        if (s.empty() || uniform(0, 19) == 0) {
            j = s.empty() ? random_key() : uniform(s.front().key - 1, s.back().key);
        } else {
            // Cut between two present keys so both halves are usually non-empty.
            j = s[uniform(0, static_cast<Key>(s.size()) - 1)].key - (s.size() > 1 ? 0 : 1);
            if (j == s.back().key && s.size() > 1) j = s[s.size() - 2].key;
        }
        emit({OpKind::Split, static_cast<std::int64_t>(id), j});
        auto [l, r] = oracle_.split(id, j);
        live_[i] = l;
        live_.push_back(r);
    }

    void merge() {
        const std::size_t i = pick();
        std::size_t k = pick();
        while (k == i) k = pick();
        const SetId a = live_[i];
        const SetId b = live_[k];
        emit({OpKind::Merge, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
        const SetId c = oracle_.merge(a, b);
        live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(std::max(i, k)));
        live_[std::min(i, k)] = c;
    }

    void shift() {
        const SetId id = live_[pick()];
        const auto& s = oracle_.items(id);
        Key d = uniform(-universe_, universe_);
        if (!s.empty() && (!key_in_range(s.front().key + d) || !key_in_range(s.back().key + d))) d = -d;
        emit({OpKind::Shift, static_cast<std::int64_t>(id), d});
        oracle_.shift(id, d);
    }

    Key uniform(Key lo, Key hi) { return std::uniform_int_distribution<Key>(lo, hi)(rng_); }

private:
    std::size_t pick() { return std::uniform_int_distribution<std::size_t>(0, live_.size() - 1)(rng_); }
    void emit(TraceOp op) { ops.push_back(op); }

    std::mt19937_64 rng_;
    Key universe_;
    OracleFamily oracle_;
    std::vector<SetId> live_;
};

std::vector<TraceOp> random_mix(WorkloadKind kind, std::uint64_t seed, const WorkloadParams& p) {
    Simulator sim(seed, p.universe_bits);
    const std::uint64_t initial = std::min<std::uint64_t>(std::max<std::uint64_t>(p.num_sets, 2), p.ops);
    const Key universe = Key{1} << p.universe_bits;
    for (std::uint64_t i = 0; i < initial; ++i) {
        if (kind == WorkloadKind::UnionSplitFind) {
            // Distinct keys spread over the whole universe.
            const Key step = std::max<Key>(1, universe / static_cast<Key>(initial));
            sim.make_set(1 + static_cast<Key>(i) * step + sim.uniform(0, step - 1));
        } else {
            sim.make_set(sim.random_key());
        }
    }

    const std::size_t cap = static_cast<std::size_t>(4 * std::max<std::uint64_t>(p.num_sets, 2));
    while (sim.ops.size() < p.ops) {
        const Key r = sim.uniform(0, 99);
        if (sim.live() < 2) {
            sim.make_set(sim.random_key());
            continue;
        }
        if (sim.live() > cap) {
            sim.merge();
            continue;
        }
        switch (kind) {
            case WorkloadKind::InterleaveMerge:
                if (r < 35) sim.merge();
                else if (r < 65) sim.split();
                else if (r < 90) sim.search();
                else sim.make_set(r % 2 ? sim.existing_key() : sim.random_key());
                break;
            case WorkloadKind::UnionSplitFind:
                if (r < 30) sim.merge();
                else if (r < 60) sim.split();
                else sim.search();
                break;
            case WorkloadKind::ShiftHeavy:
                if (r < 60) sim.shift();
                else if (r < 73) sim.merge();
                else if (r < 86) sim.split();
                else sim.search();
                break;
            case WorkloadKind::AdversarialK: break;
        }
    }
    return std::move(sim.ops);
}

class AdversarialBuilder {
public:
    AdversarialBuilder(std::uint64_t seed, const WorkloadParams& p)
        : rng_(seed), universe_(Key{1} << p.universe_bits), side_(std::max<std::uint64_t>(p.num_sets, 1)),
          target_(p.ops) {}

    std::vector<TraceOp> run() {
        const std::uint64_t n = 2 * side_;
        const Key d = std::max<Key>(1, universe_ / static_cast<Key>(n));
        while (merges_ < target_) {
            std::vector<Key> keys(n);
            for (std::uint64_t i = 0; i < n; ++i) {
                const Key jitter = d > 2 ? std::uniform_int_distribution<Key>(0, d / 2)(rng_) : 0;
                keys[i] = 1 + static_cast<Key>(i) * d + jitter;
            }
            build(keys);
        }
        return std::move(ops_);
    }

private:
    // Merges the even and odd positions of `keys` after building each side
    // recursively; returns the resulting set id or 0 once the budget is spent.
    SetId build(const std::vector<Key>& keys) {
        if (merges_ >= target_) return 0;
        if (keys.size() == 1) {
            ops_.push_back({OpKind::MakeSet, keys[0], 0});
            return next_id_++;
        }
        std::vector<Key> even;
        std::vector<Key> odd;
        for (std::size_t i = 0; i < keys.size(); ++i) (i % 2 ? odd : even).push_back(keys[i]);
        const SetId a = build(even);
        const SetId b = build(odd);
        if (a == 0 || b == 0 || merges_ >= target_) return 0;
        ops_.push_back({OpKind::Merge, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
        ++merges_;
        return next_id_++;
    }

    std::mt19937_64 rng_;
    Key universe_;
    std::uint64_t side_;
    std::uint64_t target_;
    std::uint64_t merges_ = 0;
    SetId next_id_ = 1;
    std::vector<TraceOp> ops_;
};

}  // namespace

std::vector<TraceOp> gen_workload(WorkloadKind kind, std::uint64_t seed, const WorkloadParams& params) {
    if (params.universe_bits == 0 || params.universe_bits > 58) {
        throw std::invalid_argument("universe bits must lie in [1, 58]");
    }
    if (kind == WorkloadKind::AdversarialK) return AdversarialBuilder(seed, params).run();
    return random_mix(kind, seed, params);
}

}  // namespace mdict
