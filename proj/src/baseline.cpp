#include "mdict/baseline.hpp"

#include <string>

namespace mdict {

Tree& BaselineFamily::lookup(SetId id) {
    auto it = sets_.find(id);
    if (it == sets_.end()) throw DictionaryError(ErrorCode::UnknownSet, "unknown set " + std::to_string(id));
    return it->second;
}

Tree BaselineFamily::tree(SetId id) const {
    auto it = sets_.find(id);
    if (it == sets_.end()) throw DictionaryError(ErrorCode::UnknownSet, "unknown set " + std::to_string(id));
    return it->second;
}

SetId BaselineFamily::add(Tree t) {
    const SetId id = next_id_++;
    sets_.emplace(id, t);
    return id;
}

std::vector<SetId> BaselineFamily::ids() const {
    std::vector<SetId> out;
    for (const auto& [id, t] : sets_) out.push_back(id);
    return out;
}

SetId BaselineFamily::make_set(Key j) {
    if (!key_in_range(j)) throw DictionaryError(ErrorCode::KeyOutOfRange, "key " + std::to_string(j) + " out of range");
    return add(forest_.make_leaf(j, 1));
}

std::optional<Key> BaselineFamily::search(SetId id, Key j) {
    auto e = forest_.search_le(lookup(id), j);
    if (!e) return std::nullopt;
    return e->key;
}

std::pair<SetId, SetId> BaselineFamily::split(SetId id, Key j) {
    Tree t = lookup(id);
    sets_.erase(id);
    auto [left, right] = forest_.split_at_key(t, j);
    const SetId l = add(left);
    const SetId r = add(right);
    return {l, r};
}

void BaselineFamily::shift(SetId id, Key j) {
    Tree& t = lookup(id);
    t = forest_.shift_tree(t, j);
}

SetId BaselineFamily::merge(SetId a, SetId b) {
    if (a == b) throw DictionaryError(ErrorCode::SameSet, "cannot merge set " + std::to_string(a) + " with itself");
    Tree ta = lookup(a);
    Tree tb = lookup(b);
    sets_.erase(a);
    sets_.erase(b);
    return add(merge_runs(ta, tb));
}

Tree BaselineFamily::merge_runs(Tree a, Tree b) {
    Tree out;
    while (!a.empty() && !b.empty()) {
        if (b.min_key() < a.min_key()) std::swap(a, b);
        if (a.min_key() == b.min_key()) {
            // Fold b's copy of the shared minimum into a's leaf.
            const Key k = b.min_key();
            auto [dup, rest] = forest_.split_at_key(b, k);
            Node* keep = forest_.leftmost(a);
            keep->multiplicity += dup.root->multiplicity;
            forest_.work().tick();
            forest_.destroy(dup);
            b = rest;
            continue;
        }
        auto [run, rest] = forest_.split_at_key(a, b.min_key() - 1);
        out = forest_.join(out, run);
        a = rest;
    }
    out = forest_.join(out, a);
    return forest_.join(out, b);
}

}  // namespace mdict
