#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mdict/biased_tree.hpp"

namespace mdict {

/// Brute-force set family over sorted (key, multiplicity) arrays. Same id
/// policy and error codes as SetFamily, no weights and no cost model.
class OracleFamily {
public:
    SetId make_set(Key j);
    std::optional<Key> search(SetId id, Key j) const;
    std::pair<SetId, SetId> split(SetId id, Key j);
    void shift(SetId id, Key j);
    SetId merge(SetId a, SetId b);

    bool contains(SetId id) const { return sets_.contains(id); }
    const std::vector<Entry>& items(SetId id) const;
    const std::map<SetId, std::vector<Entry>>& sets() const noexcept { return sets_; }

private:
    std::vector<Entry>& lookup(SetId id);
    SetId add(std::vector<Entry> s);

    std::map<SetId, std::vector<Entry>> sets_;
    SetId next_id_ = 1;
};

}  // namespace mdict
