#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mdict/biased_tree.hpp"

namespace mdict {

/// Set family on the same trees with every leaf weighing 1, merging by the
/// textbook sequential method: peel off the next run of the set with the
/// smaller minimum with a split and append it to the result with a join.
/// Exists to compare costs against SetFamily; same ids, same results.
class BaselineFamily {
public:
    SetId make_set(Key j);
    std::optional<Key> search(SetId id, Key j);
    std::pair<SetId, SetId> split(SetId id, Key j);
    void shift(SetId id, Key j);
    SetId merge(SetId a, SetId b);

    bool contains(SetId id) const { return sets_.contains(id); }
    std::vector<SetId> ids() const;
    Tree tree(SetId id) const;
    std::vector<Entry> items(SetId id) const { return Forest::items(tree(id)); }

    Forest& forest() noexcept { return forest_; }
    const WorkCounter& work() const noexcept { return forest_.work(); }

private:
    Tree& lookup(SetId id);
    SetId add(Tree t);
    Tree merge_runs(Tree a, Tree b);

    Forest forest_;
    std::map<SetId, Tree> sets_;
    SetId next_id_ = 1;
};

}  // namespace mdict
