#include "mdict/oracle.hpp"

#include <algorithm>
#include <string>

namespace mdict {

std::vector<Entry>& OracleFamily::lookup(SetId id) {
    auto it = sets_.find(id);
    if (it == sets_.end()) throw DictionaryError(ErrorCode::UnknownSet, "unknown set " + std::to_string(id));
    return it->second;
}

const std::vector<Entry>& OracleFamily::items(SetId id) const {
    auto it = sets_.find(id);
    if (it == sets_.end()) throw DictionaryError(ErrorCode::UnknownSet, "unknown set " + std::to_string(id));
    return it->second;
}

SetId OracleFamily::add(std::vector<Entry> s) {
    const SetId id = next_id_++;
    sets_.emplace(id, std::move(s));
    return id;
}

SetId OracleFamily::make_set(Key j) {
    if (!key_in_range(j)) throw DictionaryError(ErrorCode::KeyOutOfRange, "key " + std::to_string(j) + " out of range");
    return add({Entry{j, 1}});
}

std::optional<Key> OracleFamily::search(SetId id, Key j) const {
    const auto& s = items(id);
    auto it = std::upper_bound(s.begin(), s.end(), j, [](Key k, const Entry& e) { return k < e.key; });
    if (it == s.begin()) return std::nullopt;
    return std::prev(it)->key;
}

std::pair<SetId, SetId> OracleFamily::split(SetId id, Key j) {
    std::vector<Entry> s = std::move(lookup(id));
    sets_.erase(id);
    auto cut = std::upper_bound(s.begin(), s.end(), j, [](Key k, const Entry& e) { return k < e.key; });
    std::vector<Entry> left(s.begin(), cut);
    std::vector<Entry> right(cut, s.end());
    const SetId l = add(std::move(left));
    const SetId r = add(std::move(right));
    return {l, r};
}

void OracleFamily::shift(SetId id, Key j) {
    auto& s = lookup(id);
    if (s.empty()) return;
    Key lo = 0;
    Key hi = 0;
    if (__builtin_add_overflow(s.front().key, j, &lo) || __builtin_add_overflow(s.back().key, j, &hi) ||
        !key_in_range(lo) || !key_in_range(hi)) {
        throw DictionaryError(ErrorCode::Overflow, "shift by " + std::to_string(j) + " leaves the key range");
    }
    for (Entry& e : s) e.key += j;
}

SetId OracleFamily::merge(SetId a, SetId b) {
    if (a == b) throw DictionaryError(ErrorCode::SameSet, "cannot merge set " + std::to_string(a) + " with itself");
    lookup(a);
    lookup(b);
    std::vector<Entry> x = std::move(sets_[a]);
    std::vector<Entry> y = std::move(sets_[b]);
    sets_.erase(a);
    sets_.erase(b);

    std::vector<Entry> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].key < y[j].key)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].key < x[i].key) {
            out.push_back(y[j++]);
        } else {
            out.push_back({x[i].key, x[i].multiplicity + y[j].multiplicity});
            ++i;
            ++j;
        }
    }
    return add(std::move(out));
}

}  // namespace mdict
