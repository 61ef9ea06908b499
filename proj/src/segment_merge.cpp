#include "mdict/segment_merge.hpp"

#include <array>
#include <cassert>
#include <set>
#include <utility>

namespace mdict {

namespace {

Weight gap_between(Key lo, Key hi) {
    assert(hi > lo);
    return static_cast<Weight>(hi - lo);
}

void fill_baked_gaps(std::vector<Segment>& segs) {
    for (Origin origin : {Origin::A, Origin::B}) {
        Segment* prev = nullptr;
        for (Segment& s : segs) {
            if (s.origin != origin) continue;
            if (prev) {
                const Weight g = gap_between(prev->right_key, s.left_key);
                prev->baked_right = g;
                s.baked_left = g;
            }
            prev = &s;
        }
    }
}

Node* left_end(Forest& forest, Segment& s) {
    if (!s.left_leaf) s.left_leaf = forest.leftmost(s.tree);
    return s.left_leaf;
}

Node* right_end(Forest& forest, Segment& s) {
    if (!s.right_leaf) s.right_leaf = forest.rightmost(s.tree);
    return s.right_leaf;
}

// k = 1: the inputs do not interleave and stay whole.
SegmentDecomposition whole_tree_decomposition(Tree a, Tree b) {
    SegmentDecomposition d;
    d.source_a = a;
    d.source_b = b;
    Segment sa;
    sa.origin = Origin::A;
    sa.left_key = a.min_key();
    sa.right_key = a.max_key();
    sa.tree = a;
    Segment sb;
    sb.origin = Origin::B;
    sb.left_key = b.min_key();
    sb.right_key = b.max_key();
    sb.tree = b;
    d.segments = {sa, sb};
    return d;
}

}  // namespace

std::size_t SegmentDecomposition::count(Origin origin) const {
    std::size_t n = 0;
    for (const Segment& s : segments)
        if (s.origin == origin) ++n;
    return n;
}

GapTable gap_table(const SegmentDecomposition& d) {
    std::vector<const Segment*> as;
    std::vector<const Segment*> bs;
    for (const Segment& s : d.segments) (s.origin == Origin::A ? as : bs).push_back(&s);
    GapTable g;
    g.k = as.size();
    const std::size_t n = g.k + 1;
    g.a_gap.assign(n, 1);
    g.b_gap.assign(n, 1);
    g.a_to_b.assign(n, 1);
    g.b_to_a.assign(n, 1);
    for (std::size_t i = 1; i <= as.size(); ++i) {
        if (i < as.size()) g.a_gap[i] = as[i]->left_key - as[i - 1]->right_key;
        if (i <= bs.size()) g.a_to_b[i] = bs[i - 1]->left_key - as[i - 1]->right_key;
        if (i <= bs.size() && i < as.size()) g.b_to_a[i] = as[i]->left_key - bs[i - 1]->right_key;
    }
    for (std::size_t i = 1; i < bs.size(); ++i) g.b_gap[i] = bs[i]->left_key - bs[i - 1]->right_key;
    return g;
}

std::pair<Tree, Tree> split_weighted(Forest& forest, Tree t, Key j) {
    auto [left, right] = forest.split_at_key(t, j);
    if (left.empty() || right.empty()) return {left, right};
    const Weight gap = gap_between(left.max_key(), right.min_key());
    left = rebake_end(forest, left, forest.rightmost(left), gap, 1);
    right = rebake_end(forest, right, forest.leftmost(right), gap, 1);
    return {left, right};
}

Tree rebake_end(Forest& forest, Tree t, Node* leaf, Weight old_gap, Weight new_gap) {
    if (old_gap == new_gap) return t;
    const Weight w = leaf->weight - old_gap + new_gap;
    if (t.root == leaf) {
        forest.set_singleton_weight(leaf, w);
        return t;
    }
    return forest.reweight_leaf(t, leaf, w);
}

NormalizedInputs normalize(Forest& forest, Tree a, Tree b) {
    NormalizedInputs n{a, b, Tree{}, false};
    if (a.empty() || b.empty()) return n;
    if (b.min_key() < a.min_key()) {
        std::swap(n.a, n.b);
        n.swapped = true;
    }
    if (n.a.max_key() > n.b.max_key()) {
        auto [head, tail] = split_weighted(forest, n.a, n.b.max_key());
        n.a = head;
        n.suffix = tail;
    }
    return n;
}

SegmentDecomposition find_profiles(Forest& forest, Tree a, Tree b) {
    assert(!a.empty() && !b.empty());
    assert(a.min_key() <= b.min_key() && a.max_key() <= b.max_key());
    SegmentDecomposition d;
    d.source_a = a;
    d.source_b = b;

    auto add = [&](Origin origin, Node* l, Node* r) {
        Segment s;
        s.origin = origin;
        s.left_leaf = l;
        s.right_leaf = r;
        s.left_key = Forest::pushed_key(l);
        s.right_key = Forest::pushed_key(r);
        d.segments.push_back(s);
    };

    Node* a_left = forest.leftmost(a);
    Node* b_left = forest.leftmost(b);
    for (;;) {
        Node* a_right = forest.finger_pred(a_left, Forest::pushed_key(b_left));
        assert(a_right);
        add(Origin::A, a_left, a_right);
        Node* a_next = forest.successor(a_right);
        if (!a_next) {
            add(Origin::B, b_left, forest.finger_pred(b_left, b.max_key()));
            break;
        }
        Node* b_right = forest.finger_pred(b_left, Forest::pushed_key(a_next));
        assert(b_right);
        add(Origin::B, b_left, b_right);
        Node* b_next = forest.successor(b_right);
        if (!b_next) {
            add(Origin::A, a_next, forest.finger_pred(a_next, a.max_key()));
            break;
        }
        a_left = a_next;
        b_left = b_next;
    }
    fill_baked_gaps(d.segments);
    return d;
}

Profile collect_profile(Forest& forest, Node* left_leaf, Node* right_leaf) {
    Profile p;
    p.left_leaf = left_leaf;
    p.right_leaf = right_leaf;
    if (left_leaf == right_leaf) return p;

    // Every node on both root paths carries a zero offset here, so stored
    // extremes are resolved keys.
    const Key right_key = Forest::pushed_key(right_leaf);
    std::vector<Node*> up{left_leaf};
    Node* v = left_leaf;
    while (v->hi < right_key) {
        v = v->parent;
        forest.visit(v);
        up.push_back(v);
    }
    p.top = up.back();
    up.pop_back();

    std::vector<Node*> down{right_leaf};
    for (Node* w = right_leaf; w->parent != p.top;) {
        w = w->parent;
        forest.visit(w);
        down.push_back(w);
    }

    for (std::size_t i = 1; i < up.size(); ++i) {
        const Node* parent = up[i];
        std::vector<Node*> step;
        for (int c = parent->child_index(up[i - 1]) + 1; c < parent->arity; ++c) step.push_back(parent->kids[c]);
        p.left_steps.push_back(std::move(step));
    }
    {
        std::vector<Node*> step;
        const int from = p.top->child_index(up.back());
        const int to = p.top->child_index(down.back());
        for (int c = from + 1; c < to; ++c) step.push_back(p.top->kids[c]);
        p.left_steps.push_back(std::move(step));
    }
    for (std::size_t i = 1; i < down.size(); ++i) {
        const Node* parent = down[i];
        std::vector<Node*> step;
        const int below = parent->child_index(down[i - 1]);
        for (int c = 0; c < below; ++c) step.push_back(parent->kids[c]);
        p.right_steps.push_back(std::move(step));
    }
    return p;
}

Tree construct_segment_tree(Forest& forest, const Profile& p) {
    auto take = [&](Node* n) {
        assert(n);
        if (n->parent) forest.detach_in_place(n);
        return n;
    };
    // Two hanging siblings become one tree of the parent's rank before they
    // are joined on; a single sibling is joined directly.
    auto gather = [&](const std::vector<Node*>& step) -> Tree {
        if (step.size() == 2) return Tree{forest.make_parent(take(step[0]), take(step[1]))};
        if (step.size() == 1) return Tree{take(step[0])};
        return Tree{};
    };

    Tree left{take(p.left_leaf)};
    if (p.left_leaf == p.right_leaf) return left;
    for (const auto& step : p.left_steps) left = forest.join(left, gather(step));
    Tree right{take(p.right_leaf)};
    for (const auto& step : p.right_steps) right = forest.join(gather(step), right);
    return forest.join(left, right);
}

void build_segment_trees(Forest& forest, SegmentDecomposition& d) {
    std::vector<Profile> profiles;
    profiles.reserve(d.segments.size());
    for (Segment& s : d.segments) profiles.push_back(collect_profile(forest, s.left_leaf, s.right_leaf));
    for (std::size_t i = 0; i < d.segments.size(); ++i)
        d.segments[i].tree = construct_segment_tree(forest, profiles[i]);
    for (Tree src : {d.source_a, d.source_b})
        if (!src.root->is_leaf()) forest.free_skeleton(src.root);
    d.source_a = Tree{};
    d.source_b = Tree{};
}

void prune_trees(Forest& forest, SegmentDecomposition& d) {
    auto& segs = d.segments;
    for (std::size_t t = 0; t + 1 < segs.size(); ++t) {
        Segment& left = segs[t];
        Segment& right = segs[t + 1];
        if (left.pruned || right.pruned || left.right_key != right.left_key) continue;

        const bool left_single = left.tree.is_singleton();
        const bool right_single = right.tree.is_singleton();
        if (left_single && !right_single) {
            left_end(forest, right)->multiplicity += left.tree.root->multiplicity;
            forest.destroy(left.tree);
            left = Segment{left.origin, nullptr, nullptr, 0, 0, 1, 1, Tree{}, true};
        } else if (right_single) {
            right_end(forest, left)->multiplicity += right.tree.root->multiplicity;
            forest.destroy(right.tree);
            right = Segment{right.origin, nullptr, nullptr, 0, 0, 1, 1, Tree{}, true};
        } else {
            auto [rest, cut, empty] = forest.split_at_leaf(left.tree, right_end(forest, left));
            assert(empty.empty());
            (void)empty;
            left_end(forest, right)->multiplicity += cut->multiplicity;
            forest.destroy(Tree{cut});
            // The new maximum already weighs the gap up to the removed key,
            // which is exactly its gap to the surviving copy.
            left.tree = rest;
            left.right_leaf = nullptr;
            left.baked_right = gap_between(rest.max_key(), left.right_key);
            left.right_key = rest.max_key();
        }
        forest.work().tick();
    }
}

void reweight_segments(Forest& forest, SegmentDecomposition& d) {
    std::vector<Segment*> live;
    for (Segment& s : d.segments)
        if (!s.pruned) live.push_back(&s);
    for (std::size_t i = 0; i < live.size(); ++i) {
        Segment& s = *live[i];
        const Weight want_left = i > 0 ? gap_between(live[i - 1]->right_key, s.left_key) : 1;
        const Weight want_right = i + 1 < live.size() ? gap_between(s.right_key, live[i + 1]->left_key) : 1;
        if (s.tree.is_singleton()) {
            const Weight w = want_left + want_right;
            if (s.tree.root->weight != w) forest.set_singleton_weight(s.tree.root, w);
        } else {
            if (want_left != s.baked_left) {
                s.tree = rebake_end(forest, s.tree, left_end(forest, s), s.baked_left, want_left);
            }
            if (want_right != s.baked_right) {
                s.tree = rebake_end(forest, s.tree, right_end(forest, s), s.baked_right, want_right);
            }
        }
        s.baked_left = want_left;
        s.baked_right = want_right;
    }
}

Tree join_segments(Forest& forest, std::vector<Tree> trees) {
    std::erase_if(trees, [](Tree t) { return t.empty(); });
    const std::size_t n = trees.size();
    if (n == 0) return Tree{};

    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> prev(n);
    std::vector<std::size_t> next(n);
    std::set<std::pair<int, std::size_t>> by_rank;  // (rank, position)
    for (std::size_t i = 0; i < n; ++i) {
        prev[i] = i == 0 ? kNone : i - 1;
        next[i] = i + 1 == n ? kNone : i + 1;
        by_rank.emplace(trees[i].rank(), i);
    }

    for (std::size_t alive = n; alive > 1; --alive) {
        forest.work().tick();
        const std::size_t i = by_rank.begin()->second;
        const std::size_t p = prev[i];
        const std::size_t q = next[i];
        const bool use_left = q == kNone || (p != kNone && trees[p].rank() <= trees[q].rank());
        const std::size_t lo = use_left ? p : i;
        const std::size_t hi = use_left ? i : q;

        by_rank.erase({trees[lo].rank(), lo});
        by_rank.erase({trees[hi].rank(), hi});
        trees[lo] = forest.join(trees[lo], trees[hi]);
        trees[hi] = Tree{};
        by_rank.emplace(trees[lo].rank(), lo);
        next[lo] = next[hi];
        if (next[hi] != kNone) prev[next[hi]] = lo;
    }
    return trees[by_rank.begin()->second];
}

namespace {

Tree merge_normalized(Forest& forest, Tree a, Tree b, MergeObserver* observer) {
    SegmentDecomposition d;
    const bool whole = a.max_key() <= b.min_key();
    if (whole) {
        d = whole_tree_decomposition(a, b);
    } else {
        d = find_profiles(forest, a, b);
        build_segment_trees(forest, d);
    }
    if (observer) observer->on_segments(d, whole);
    prune_trees(forest, d);
    reweight_segments(forest, d);
    std::vector<Tree> trees;
    trees.reserve(d.segments.size());
    for (const Segment& s : d.segments)
        if (!s.pruned) trees.push_back(s.tree);
    return join_segments(forest, std::move(trees));
}

}  // namespace

Tree merge_trees(Forest& forest, Tree a, Tree b, MergeObserver* observer) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    NormalizedInputs n = normalize(forest, a, b);
    Tree merged = merge_normalized(forest, n.a, n.b, observer);
    if (n.suffix.empty()) return merged;

    // max(merged) = max(n.b) carries an outer gap of 1, as does min(suffix).
    const Weight gap = gap_between(merged.max_key(), n.suffix.min_key());
    merged = rebake_end(forest, merged, forest.rightmost(merged), 1, gap);
    Tree suffix = rebake_end(forest, n.suffix, forest.leftmost(n.suffix), 1, gap);
    return forest.join(merged, suffix);
}

}  // namespace mdict
