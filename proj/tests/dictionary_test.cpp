#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "mdict/dictionary.hpp"
#include "mdict/validate.hpp"

using namespace mdict;

namespace {

SetId set_of(SetFamily& fam, const std::vector<Key>& keys) {
    SetId id = fam.make_set(keys.at(0));
    for (std::size_t i = 1; i < keys.size(); ++i) id = fam.merge(id, fam.make_set(keys[i]));
    return id;
}

std::vector<Key> keys_of(const SetFamily& fam, SetId id) {
    std::vector<Key> out;
    for (const Entry& e : fam.items(id)) out.push_back(e.key);
    return out;
}

Weight weight_of(SetFamily& fam, SetId id, Key k) { return fam.forest().find_le(fam.tree(id), k)->weight; }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const DictionaryError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::KeyNotFound;
}

}  // namespace

TEST(MakeSet, SingletonWeighsTwo) {
    SetFamily fam;
    const SetId a = fam.make_set(7);
    EXPECT_EQ(fam.tree(a).weight(), 2u);
    EXPECT_EQ(fam.tree(a).rank(), 1);
    const SetId b = fam.make_set(-5);
    EXPECT_NE(a, b);
    EXPECT_EQ(keys_of(fam, b), std::vector<Key>{-5});
    EXPECT_TRUE(validate_tree(fam.tree(b)).ok());
}

TEST(MakeSet, KeyOutsideSupportedRange) {
    SetFamily fam;
    EXPECT_EQ(code_of([&] { fam.make_set(kKeyBound + 1); }), ErrorCode::KeyOutOfRange);
    EXPECT_NO_THROW(fam.make_set(-kKeyBound));
}

TEST(Search, Examples) {
    SetFamily fam;
    const SetId g = set_of(fam, {3, 7, 20});
    EXPECT_EQ(fam.search(g, 19), 7);
    EXPECT_EQ(fam.search(g, 20), 20);
    EXPECT_EQ(fam.search(g, 2), std::nullopt);
    auto [empty, rest] = fam.split(g, 0);
    EXPECT_EQ(fam.search(empty, 100), std::nullopt);
    EXPECT_EQ(code_of([&] { fam.search(g, 1); }), ErrorCode::UnknownSet);
    (void)rest;
}

TEST(Split, BoundaryLeavesAreReweighted) {
    SetFamily fam;
    const SetId g = set_of(fam, {1, 5, 9});
    auto [a, b] = fam.split(g, 5);
    EXPECT_EQ(keys_of(fam, a), (std::vector<Key>{1, 5}));
    EXPECT_EQ(keys_of(fam, b), std::vector<Key>{9});
    EXPECT_EQ(weight_of(fam, a, 1), 5u);
    EXPECT_EQ(weight_of(fam, a, 5), 5u);
    EXPECT_EQ(weight_of(fam, b, 9), 2u);
    EXPECT_FALSE(fam.contains(g));
    EXPECT_LT(a, b);
}

TEST(Split, BelowMinimumLeavesWeightsAlone) {
    SetFamily fam;
    const SetId g = set_of(fam, {1, 5, 9});
    const auto fp = fingerprint(fam.tree(g));
    auto [a, b] = fam.split(g, 0);
    EXPECT_TRUE(fam.tree(a).empty());
    EXPECT_EQ(fingerprint(fam.tree(b)), fp);
}

TEST(Split, ThenMergeRestoresTheSet) {
    SetFamily fam;
    std::mt19937_64 rng(2);
    std::vector<Key> keys;
    for (Key k = 0; keys.size() < 200; k += std::uniform_int_distribution<Key>(1, 1000)(rng)) keys.push_back(k);
    SetId g = set_of(fam, keys);
    for (int i = 0; i < 200; ++i) {
        const Key j = std::uniform_int_distribution<Key>(-10, keys.back() + 10)(rng);
        auto [a, b] = fam.split(g, j);
        ASSERT_TRUE(validate_tree(fam.tree(a)).ok());
        ASSERT_TRUE(validate_tree(fam.tree(b)).ok());
        g = fam.merge(b, a);
        ASSERT_EQ(keys_of(fam, g), keys);
        ASSERT_TRUE(validate_tree(fam.tree(g)).ok()) << validate_tree(fam.tree(g)).to_text();
    }
}

TEST(Shift, MovesEveryKey) {
    SetFamily fam;
    const SetId g = set_of(fam, {3, 7});
    const Weight w3 = weight_of(fam, g, 3);
    fam.shift(g, 5);
    EXPECT_EQ(keys_of(fam, g), (std::vector<Key>{8, 12}));
    EXPECT_EQ(weight_of(fam, g, 8), w3);
    fam.shift(g, 0);
    EXPECT_EQ(keys_of(fam, g), (std::vector<Key>{8, 12}));
    EXPECT_EQ(code_of([&] { fam.shift(g, kKeyBound); }), ErrorCode::Overflow);
    EXPECT_EQ(keys_of(fam, g), (std::vector<Key>{8, 12}));
    EXPECT_EQ(code_of([&] { fam.shift(99, 1); }), ErrorCode::UnknownSet);
}

TEST(Merge, IdsAndErrors) {
    SetFamily fam;
    const SetId a = fam.make_set(1);
    const SetId b = fam.make_set(2);
    EXPECT_EQ(code_of([&] { fam.merge(a, a); }), ErrorCode::SameSet);
    EXPECT_EQ(code_of([&] { fam.merge(a, 42); }), ErrorCode::UnknownSet);
    EXPECT_TRUE(fam.contains(a));
    const SetId c = fam.merge(a, b);
    EXPECT_EQ(c, 3u);
    EXPECT_FALSE(fam.contains(a));
    EXPECT_FALSE(fam.contains(b));
    EXPECT_EQ(fam.ids(), std::vector<SetId>{3});
}

TEST(Merge, ShiftedInterleavedSets) {
    SetFamily fam;
    const SetId a = set_of(fam, {0, 10, 20, 30});
    const SetId b = set_of(fam, {0, 10, 20});
    fam.shift(b, 5);
    const SetId c = fam.merge(a, b);
    EXPECT_EQ(keys_of(fam, c), (std::vector<Key>{0, 5, 10, 15, 20, 25, 30}));
    const auto report = validate_tree(fam.tree(c));
    EXPECT_TRUE(report.ok()) << report.to_text();
}

TEST(Stats, ReportsShape) {
    SetFamily fam;
    const SetId g = set_of(fam, {3, 7, 20});
    const SetStats s = fam.stats(g);
    EXPECT_EQ(s.size, 3u);
    EXPECT_EQ(s.min, 3);
    EXPECT_EQ(s.max, 20);
    EXPECT_EQ(s.universe, 17u);
    EXPECT_EQ(s.weight, 2u * 17 + 2);
    EXPECT_NEAR(s.potential, 4.0 + 2.0 * std::log2(13.0), 1e-9);
}

TEST(Potential, LedgerAcrossRandomOps) {
    struct Segments : MergeObserver {
        std::size_t k = 0;
        void on_segments(const SegmentDecomposition& d, bool) override { k = d.k(); }
    } seen;
    SetFamily fam;
    fam.set_merge_observer(&seen);
    std::mt19937_64 rng(9);
    std::vector<SetId> live;
    for (int i = 0; i < 400; ++i) live.push_back(fam.make_set(std::uniform_int_distribution<Key>(0, 1 << 20)(rng)));
    int interleaved = 0;
    for (int step = 0; step < 6000; ++step) {
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng);
        const double before = fam.stats(live[i]).potential;
        const int r = std::uniform_int_distribution<int>(0, 5)(rng);
        if (r <= 2 && live.size() > 1) {
            std::size_t k = i;
            while (k == i) k = std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng);
            const SetStats sa = fam.stats(live[i]);
            const SetStats sb = fam.stats(live[k]);
            const double both = before + sb.potential;
            seen.k = 0;
            const SetId c = fam.merge(live[i], live[k]);
            const SetStats sc = fam.stats(c);
            const double rise = sc.potential - both;
            if (sa.size == 0 || sb.size == 0) {
                ASSERT_NEAR(rise, 0.0, 1e-6);
            } else if (seen.k >= 2) {
                ++interleaved;
                ASSERT_LE(rise, std::log2(double(sa.weight)) + std::log2(double(sb.weight)) + 1e-6);
            } else {
                // One new gap between the two runs, counted from both sides.
                ASSERT_LE(rise, 2.0 * std::log2(double(sc.weight)) + 1e-6);
                if (*sa.max < *sb.min || *sb.max < *sa.min) {
                    const Key gap = *sa.max < *sb.min ? *sb.min - *sa.max : *sa.min - *sb.max;
                    ASSERT_NEAR(rise, 2.0 * std::log2(double(gap)), 1e-6);
                }
            }
            live[i] = c;
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
        } else if (r <= 3) {
            const SetStats st = fam.stats(live[i]);
            const Key j = st.size ? std::uniform_int_distribution<Key>(*st.min, *st.max)(rng) : 0;
            auto [a, b] = fam.split(live[i], j);
            ASSERT_LE(fam.stats(a).potential + fam.stats(b).potential, before + 1e-6);
            live[i] = a;
            live.push_back(b);
        } else if (r == 4) {
            fam.shift(live[i], std::uniform_int_distribution<Key>(-1000, 1000)(rng));
            ASSERT_NEAR(fam.stats(live[i]).potential, before, 1e-6);
        } else {
            fam.search(live[i], std::uniform_int_distribution<Key>(0, 1 << 20)(rng));
            ASSERT_EQ(fam.stats(live[i]).potential, before);
        }
    }
    EXPECT_GT(interleaved, 50);
}

TEST(Potential, SingletonMergeRisesByTwiceTheGap) {
    SetFamily fam;
    const SetId c = fam.merge(fam.make_set(1), fam.make_set(10));
    EXPECT_NEAR(fam.stats(c).potential, 2.0 * std::log2(9.0), 1e-9);
}
