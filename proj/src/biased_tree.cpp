#include "mdict/biased_tree.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>

namespace mdict {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownSet: return "UnknownSet";
        case ErrorCode::SameSet: return "SameSet";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::KeyOutOfRange: return "KeyOutOfRange";
        case ErrorCode::KeyNotFound: return "KeyNotFound";
        case ErrorCode::KeyOverlap: return "KeyOverlap";
    }
    return "Unknown";
}

int rank_of_weight(Weight w) noexcept {
    assert(w > 0);
    return static_cast<int>(std::bit_width(w)) - 1;
}

struct Forest::Pool {
    static constexpr std::size_t kChunk = 4096;
    std::vector<std::unique_ptr<Node[]>> chunks;
    std::size_t used = kChunk;
    Node* free_list = nullptr;

    Node* take() {
        if (free_list) {
            Node* n = free_list;
            free_list = n->parent;
            *n = Node{};
            return n;
        }
        if (used == kChunk) {
            chunks.push_back(std::make_unique<Node[]>(kChunk));
            used = 0;
        }
        return &chunks.back()[used++];
    }

    void give(Node* n) {
        *n = Node{};
        n->parent = free_list;
        free_list = n;
    }
};

Forest::Forest() : pool_(std::make_unique<Pool>()) {}
Forest::~Forest() = default;
Forest::Forest(Forest&&) noexcept = default;
Forest& Forest::operator=(Forest&&) noexcept = default;

Node* Forest::alloc() {
    work_.tick();
    ++live_;
    return pool_->take();
}

void Forest::release(Node* n) {
    work_.tick();
    --live_;
    pool_->give(n);
}

void Forest::set_child(Node* parent, int slot, Node* child) {
    work_.tick();
    parent->kids[slot] = child;
    if (child) child->parent = parent;
}

void Forest::refresh(Node* x) {
    work_.tick();
    Weight w = 0;
    int r = 0;
    for (int i = 0; i < x->arity; ++i) {
        w += x->kids[i]->weight;
        r = std::max(r, x->kids[i]->rank);
    }
    x->weight = w;
    x->rank = r + 1;
    const Node* first = x->kids[0];
    const Node* last = x->kids[x->arity - 1];
    x->lo = first->shift + first->lo;
    x->hi = last->shift + last->hi;
}

Tree Forest::make_leaf(Key key, Weight weight, Count multiplicity) {
    if (weight == 0) throw std::invalid_argument("leaf weight must be positive");
    if (multiplicity == 0) throw std::invalid_argument("leaf multiplicity must be positive");
    Node* n = alloc();
    n->weight = weight;
    n->rank = rank_of_weight(weight);
    n->lo = n->hi = key;
    n->multiplicity = multiplicity;
    return Tree{n};
}

void Forest::destroy(Tree t) {
    if (t.empty()) return;
    std::vector<Node*> stack{t.root};
    while (!stack.empty()) {
        Node* n = stack.back();
        stack.pop_back();
        for (int i = 0; i < n->arity; ++i)
            if (n->kids[i]) stack.push_back(n->kids[i]);
        release(n);
    }
}

void Forest::push_down(Node* x) {
    const Key s = x->shift;
    if (s == 0) return;
    work_.tick();
    x->lo += s;
    x->hi += s;
    for (int i = 0; i < x->arity; ++i)
        if (x->kids[i]) x->kids[i]->shift += s;
    x->shift = 0;
}

Node* Forest::make_parent(Node* a, Node* b) {
    Node* n = alloc();
    n->arity = 2;
    set_child(n, 0, a);
    set_child(n, 1, b);
    refresh(n);
    return n;
}

// Reuses `left_half` for the first two children and hangs both halves under
// a fresh root; both halves keep the rank of the overfull node.
Node* Forest::build_from_four(std::array<Node*, 4> kids) {
    Node* left_half = alloc();
    left_half->arity = 2;
    set_child(left_half, 0, kids[0]);
    set_child(left_half, 1, kids[1]);
    refresh(left_half);
    Node* right_half = alloc();
    right_half->arity = 2;
    set_child(right_half, 0, kids[2]);
    set_child(right_half, 1, kids[3]);
    refresh(right_half);
    return make_parent(left_half, right_half);
}

Node* Forest::join_nodes(Node* x, Node* y) {
    visit(x);
    visit(y);
    return x->rank >= y->rank ? join_left_taller(x, y) : join_right_taller(x, y);
}

// Descends the right spine of the taller left tree.
Node* Forest::join_left_taller(Node* x, Node* y) {
    if (x->rank == y->rank || x->is_leaf()) return make_parent(x, y);

    push_down(x);
    Node* u = x->kids[x->arity - 1];
    set_child(x, x->arity - 1, nullptr);
    --x->arity;
    u->parent = nullptr;

    Node* v = join_nodes(u, y);
    if (v->rank < x->rank) {
        set_child(x, x->arity, v);
        ++x->arity;
        refresh(x);
        return x;
    }

    // v has x's rank, so it is a fresh two-child node; adopt its children.
    assert(v->arity == 2 && v->shift == 0);
    Node* a = v->kids[0];
    Node* b = v->kids[1];
    release(v);
    if (x->arity == 1) {
        set_child(x, 1, a);
        set_child(x, 2, b);
        x->arity = 3;
        refresh(x);
        return x;
    }
    std::array<Node*, 4> four{x->kids[0], x->kids[1], a, b};
    release(x);
    return build_from_four(four);
}

// Mirror image: descends the left spine of the taller right tree.
Node* Forest::join_right_taller(Node* x, Node* y) {
    if (y->is_leaf()) return make_parent(x, y);

    push_down(y);
    Node* u = y->kids[0];
    for (int i = 0; i + 1 < y->arity; ++i) set_child(y, i, y->kids[i + 1]);
    set_child(y, y->arity - 1, nullptr);
    --y->arity;
    u->parent = nullptr;

    Node* v = join_nodes(x, u);
    if (v->rank < y->rank) {
        for (int i = y->arity; i > 0; --i) set_child(y, i, y->kids[i - 1]);
        set_child(y, 0, v);
        ++y->arity;
        refresh(y);
        return y;
    }

    assert(v->arity == 2 && v->shift == 0);
    Node* a = v->kids[0];
    Node* b = v->kids[1];
    release(v);
    if (y->arity == 1) {
        Node* old = y->kids[0];
        set_child(y, 0, a);
        set_child(y, 1, b);
        set_child(y, 2, old);
        y->arity = 3;
        refresh(y);
        return y;
    }
    std::array<Node*, 4> four{a, b, y->kids[0], y->kids[1]};
    release(y);
    return build_from_four(four);
}

Node* Forest::join_roots(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    return join_nodes(a, b);
}

Tree Forest::join(Tree left, Tree right) {
    if (left.empty()) return right;
    if (right.empty()) return left;
    assert(!left.root->parent && !right.root->parent);
    if (left.max_key() >= right.min_key())
        throw DictionaryError(ErrorCode::KeyOverlap,
                              "join: left max " + std::to_string(left.max_key()) +
                                  " is not below right min " + std::to_string(right.min_key()));
    return Tree{join_nodes(left.root, right.root)};
}

// `levels` hold the fragments of each level in key order, deepest level
// first. Left fragments grow leftwards from the cut, right ones rightwards.
Tree Forest::rejoin_left(std::vector<std::vector<Node*>>& levels) {
    Tree acc;
    for (auto& level : levels)
        for (auto it = level.rbegin(); it != level.rend(); ++it) acc = join(Tree{*it}, acc);
    return acc;
}

Tree Forest::rejoin_right(std::vector<std::vector<Node*>>& levels) {
    Tree acc;
    for (auto& level : levels)
        for (Node* piece : level) acc = join(acc, Tree{piece});
    return acc;
}

std::pair<Tree, Tree> Forest::split_at_key(Tree t, Key j) {
    if (t.empty()) return {};
    if (t.max_key() <= j) return {t, Tree{}};
    if (t.min_key() > j) return {Tree{}, t};

    std::vector<std::vector<Node*>> left_levels;
    std::vector<std::vector<Node*>> right_levels;
    Node* x = t.root;
    while (x) {
        visit(x);
        push_down(x);
        assert(!x->is_leaf());
        std::vector<Node*> left;
        std::vector<Node*> right;
        Node* next = nullptr;
        for (int i = 0; i < x->arity; ++i) {
            Node* c = x->kids[i];
            visit(c);
            if (c->shift + c->hi <= j)
                left.push_back(c);
            else if (c->shift + c->lo > j)
                right.push_back(c);
            else
                next = c;
            c->parent = nullptr;
            work_.tick();
        }
        release(x);
        left_levels.push_back(std::move(left));
        right_levels.push_back(std::move(right));
        x = next;
    }
    std::reverse(left_levels.begin(), left_levels.end());
    std::reverse(right_levels.begin(), right_levels.end());
    Tree l = rejoin_left(left_levels);
    Tree r = rejoin_right(right_levels);
    return {l, r};
}

LeafSplit Forest::split_at_leaf(Tree t, Node* leaf) {
    assert(leaf && leaf->is_leaf());
    std::vector<Node*> path;
    for (Node* n = leaf; n; n = n->parent) {
        visit(n);
        path.push_back(n);
    }
    assert(path.back() == t.root);
    (void)t;
    for (auto it = path.rbegin(); it != path.rend(); ++it) push_down(*it);

    std::vector<std::vector<Node*>> left_levels;
    std::vector<std::vector<Node*>> right_levels;
    for (std::size_t i = 1; i < path.size(); ++i) {
        Node* p = path[i];
        const Node* below = path[i - 1];
        std::vector<Node*> left;
        std::vector<Node*> right;
        bool seen = false;
        for (int c = 0; c < p->arity; ++c) {
            Node* kid = p->kids[c];
            if (kid == below)
                seen = true;
            else
                (seen ? right : left).push_back(kid);
            kid->parent = nullptr;
            work_.tick();
        }
        release(p);
        left_levels.push_back(std::move(left));
        right_levels.push_back(std::move(right));
    }
    Tree l = rejoin_left(left_levels);
    Tree r = rejoin_right(right_levels);
    return {l, leaf, r};
}

Tree Forest::reweight_leaf(Tree t, Node* leaf, Weight new_weight) {
    auto [left, cut, right] = split_at_leaf(t, leaf);
    set_singleton_weight(cut, new_weight);
    return join(join(left, Tree{cut}), right);
}

Tree Forest::reweight_leaf(Tree t, Key key, Weight new_weight) {
    Node* leaf = find_le(t, key);
    if (!leaf || pushed_key(leaf) != key)
        throw DictionaryError(ErrorCode::KeyNotFound, "reweight: key " + std::to_string(key) + " not present");
    return reweight_leaf(t, leaf, new_weight);
}

void Forest::set_singleton_weight(Node* leaf, Weight w) {
    assert(leaf->is_leaf() && !leaf->parent);
    if (w == 0) throw std::invalid_argument("leaf weight must be positive");
    work_.tick();
    leaf->weight = w;
    leaf->rank = rank_of_weight(w);
}

Node* Forest::find_le(Tree t, Key j) {
    if (t.empty()) return nullptr;
    Node* x = t.root;
    visit(x);
    push_down(x);
    if (x->lo > j) return nullptr;
    while (!x->is_leaf()) {
        Node* next = x->kids[0];
        for (int i = 1; i < x->arity; ++i) {
            Node* c = x->kids[i];
            if (c->shift + c->lo <= j) next = c;
        }
        x = next;
        visit(x);
        push_down(x);
    }
    return x;
}

std::optional<Entry> Forest::search_le(Tree t, Key j) {
    const Node* leaf = find_le(t, j);
    if (!leaf) return std::nullopt;
    return Entry{pushed_key(leaf), leaf->multiplicity};
}

Node* Forest::leftmost(Tree t) {
    if (t.empty()) return nullptr;
    Node* x = t.root;
    visit(x);
    push_down(x);
    while (!x->is_leaf()) {
        x = x->kids[0];
        visit(x);
        push_down(x);
    }
    return x;
}

Node* Forest::rightmost(Tree t) {
    if (t.empty()) return nullptr;
    Node* x = t.root;
    visit(x);
    push_down(x);
    while (!x->is_leaf()) {
        x = x->kids[x->arity - 1];
        visit(x);
        push_down(x);
    }
    return x;
}

Node* Forest::finger_pred(Node* start, Key j, std::vector<Node*>* path) {
    assert(start && start->is_leaf());
    visit(start);
    push_down(start);
    if (path) path->push_back(start);
    if (start->lo > j) return nullptr;

    Node* v = start;
    while (v->parent && v->shift + v->hi < j) {
        v = v->parent;
        visit(v);
        if (path) path->push_back(v);
    }
    while (!v->is_leaf()) {
        push_down(v);
        Node* next = v->kids[0];
        for (int i = 1; i < v->arity; ++i) {
            Node* c = v->kids[i];
            if (c->shift + c->lo <= j) next = c;
        }
        v = next;
        visit(v);
        push_down(v);
        if (path) path->push_back(v);
    }
    return v;
}

Node* Forest::successor(Node* leaf) {
    Node* v = leaf;
    while (v->parent) {
        Node* p = v->parent;
        visit(p);
        const int i = p->child_index(v);
        if (i + 1 < p->arity) {
            Node* x = p->kids[i + 1];
            visit(x);
            push_down(x);
            while (!x->is_leaf()) {
                x = x->kids[0];
                visit(x);
                push_down(x);
            }
            return x;
        }
        v = p;
    }
    return nullptr;
}

Key Forest::resolved_key(const Node* leaf) noexcept {
    Key k = leaf->lo;
    for (const Node* n = leaf; n; n = n->parent) k += n->shift;
    return k;
}

Tree Forest::shift_tree(Tree t, Key delta) {
    if (t.empty() || delta == 0) return t;
    Key lo = 0;
    Key hi = 0;
    if (__builtin_add_overflow(t.min_key(), delta, &lo) || __builtin_add_overflow(t.max_key(), delta, &hi) ||
        !key_in_range(lo) || !key_in_range(hi))
        throw DictionaryError(ErrorCode::Overflow, "shift by " + std::to_string(delta) + " leaves the key range");
    work_.tick();
    t.root->shift += delta;
    return t;
}

std::vector<Entry> Forest::items(Tree t) {
    std::vector<Entry> out;
    if (t.empty()) return out;
    std::vector<std::pair<const Node*, Key>> stack{{t.root, 0}};
    while (!stack.empty()) {
        auto [n, off] = stack.back();
        stack.pop_back();
        const Key here = off + n->shift;
        if (n->is_leaf()) {
            out.push_back({here + n->lo, n->multiplicity});
            continue;
        }
        for (int i = n->arity - 1; i >= 0; --i) stack.emplace_back(n->kids[i], here);
    }
    return out;
}

std::size_t Forest::size(Tree t) {
    if (t.empty()) return 0;
    std::size_t count = 0;
    std::vector<const Node*> stack{t.root};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->is_leaf()) ++count;
        for (int i = 0; i < n->arity; ++i) stack.push_back(n->kids[i]);
    }
    return count;
}

void Forest::detach_in_place(Node* child) {
    Node* p = child->parent;
    assert(p && p->shift == 0);
    const int i = p->child_index(child);
    assert(i >= 0);
    set_child(p, i, nullptr);
    child->parent = nullptr;
}

void Forest::free_skeleton(Node* root) {
    if (!root) return;
    std::vector<Node*> stack{root};
    while (!stack.empty()) {
        Node* n = stack.back();
        stack.pop_back();
        assert(!n->is_leaf());
        for (int i = 0; i < n->arity; ++i)
            if (n->kids[i]) stack.push_back(n->kids[i]);
        release(n);
    }
}

}  // namespace mdict
