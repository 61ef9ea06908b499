#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mdict/biased_tree.hpp"
#include "mdict/segment_merge.hpp"

namespace mdict {

struct SetStats {
    std::size_t size = 0;  // distinct keys
    std::optional<Key> min;
    std::optional<Key> max;
    std::uint64_t universe = 0;  // max - min, 0 for empty and singleton sets
    Weight weight = 0;
    double potential = 0.0;
};

/// A family of integer sets supporting search, split, merge of arbitrarily
/// interleaved sets, make-set and shift. Every set is a biased tree whose
/// leaves weigh the sum of their two gaps, which bounds every operation by
/// O(lg (max - min)) amortized.
///
/// Set ids are handed out 1, 2, 3, ... in creation order and never reused.
/// Split creates the lower part first.
class SetFamily {
public:
    SetId make_set(Key j);
    std::optional<Key> search(SetId id, Key j);
    std::optional<Entry> search_entry(SetId id, Key j);
    std::pair<SetId, SetId> split(SetId id, Key j);
    void shift(SetId id, Key j);
    SetId merge(SetId a, SetId b);

    bool contains(SetId id) const { return sets_.contains(id); }
    std::vector<SetId> ids() const;
    Tree tree(SetId id) const;
    std::vector<Entry> items(SetId id) const;
    SetStats stats(SetId id) const;

    Forest& forest() noexcept { return forest_; }
    const Forest& forest() const noexcept { return forest_; }
    const WorkCounter& work() const noexcept { return forest_.work(); }

    void set_merge_observer(MergeObserver* observer) noexcept { observer_ = observer; }

private:
    Tree& lookup(SetId id);
    SetId add(Tree t);

    Forest forest_;
    std::map<SetId, Tree> sets_;
    SetId next_id_ = 1;
    MergeObserver* observer_ = nullptr;
};

}  // namespace mdict
