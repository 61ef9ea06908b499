#include "mdict/dictionary.hpp"

#include <string>

#include "mdict/validate.hpp"

namespace mdict {

Tree& SetFamily::lookup(SetId id) {
    auto it = sets_.find(id);
    if (it == sets_.end()) throw DictionaryError(ErrorCode::UnknownSet, "unknown set " + std::to_string(id));
    return it->second;
}

SetId SetFamily::add(Tree t) {
    const SetId id = next_id_++;
    sets_.emplace(id, t);
    return id;
}

SetId SetFamily::make_set(Key j) {
    if (!key_in_range(j)) throw DictionaryError(ErrorCode::KeyOutOfRange, "key " + std::to_string(j) + " out of range");
    // A lone element has both gaps equal to 1.
    return add(forest_.make_leaf(j, 2));
}

std::optional<Entry> SetFamily::search_entry(SetId id, Key j) { return forest_.search_le(lookup(id), j); }

std::optional<Key> SetFamily::search(SetId id, Key j) {
    auto e = search_entry(id, j);
    if (!e) return std::nullopt;
    return e->key;
}

std::pair<SetId, SetId> SetFamily::split(SetId id, Key j) {
    Tree t = lookup(id);
    sets_.erase(id);
    auto [left, right] = split_weighted(forest_, t, j);
    const SetId l = add(left);
    const SetId r = add(right);
    return {l, r};
}

void SetFamily::shift(SetId id, Key j) {
    Tree& t = lookup(id);
    t = forest_.shift_tree(t, j);
}

SetId SetFamily::merge(SetId a, SetId b) {
    if (a == b) throw DictionaryError(ErrorCode::SameSet, "cannot merge set " + std::to_string(a) + " with itself");
    Tree ta = lookup(a);
    Tree tb = lookup(b);
    sets_.erase(a);
    sets_.erase(b);
    return add(merge_trees(forest_, ta, tb, observer_));
}

std::vector<SetId> SetFamily::ids() const {
    std::vector<SetId> out;
    out.reserve(sets_.size());
    for (const auto& [id, t] : sets_) out.push_back(id);
    return out;
}

Tree SetFamily::tree(SetId id) const {
    auto it = sets_.find(id);
    if (it == sets_.end()) throw DictionaryError(ErrorCode::UnknownSet, "unknown set " + std::to_string(id));
    return it->second;
}

std::vector<Entry> SetFamily::items(SetId id) const { return Forest::items(tree(id)); }

SetStats SetFamily::stats(SetId id) const {
    const Tree t = tree(id);
    SetStats s;
    s.size = Forest::size(t);
    s.weight = t.weight();
    if (!t.empty()) {
        s.min = t.min_key();
        s.max = t.max_key();
        s.universe = static_cast<std::uint64_t>(*s.max - *s.min);
    }
    s.potential = potential(t);
    return s;
}

}  // namespace mdict
