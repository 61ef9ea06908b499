#pragma once

// Biased 2,3-trees with lazy shift offsets.
//
// Items live in the leaves in key order. Every leaf carries a positive
// weight; an internal node's weight is the sum of its leaves' weights. Leaf
// rank is floor(lg weight), internal rank is one more than the largest child
// rank. A child is major when its rank is exactly one below its parent's and
// minor when it is lower; the tree is biased when every neighbouring sibling
// of a minor child is a major leaf.
//
// Keys are stored relative to shift offsets: the key of a leaf is the sum of
// `shift` over every node on its root path (leaf included) plus the leaf's
// `lo`. An internal node's `lo`/`hi` are the extreme leaf keys of its subtree
// in the same frame, i.e. resolved value = (sum of shifts root..node) + lo.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mdict/types.hpp"

namespace mdict {

struct Node {
    Node* parent = nullptr;
    std::array<Node*, 3> kids{};
    std::uint8_t arity = 0;  // 0 for leaves
    int rank = 0;
    Weight weight = 0;
    Key shift = 0;
    Key lo = 0;
    Key hi = 0;
    Count multiplicity = 0;  // leaves only

    bool is_leaf() const noexcept { return arity == 0; }
    int child_index(const Node* c) const noexcept {
        for (int i = 0; i < arity; ++i)
            if (kids[i] == c) return i;
        return -1;
    }
};

/// Non-owning handle to a tree inside a Forest. An absent root is the empty
/// tree: weight 0, and the identity for join.
struct Tree {
    Node* root = nullptr;

    bool empty() const noexcept { return root == nullptr; }
    Weight weight() const noexcept { return root ? root->weight : 0; }
    int rank() const noexcept { return root ? root->rank : -1; }
    // Extremes resolve in O(1) from the root cache.
    Key min_key() const noexcept { return root->shift + root->lo; }
    Key max_key() const noexcept { return root->shift + root->hi; }
    bool is_singleton() const noexcept { return root && root->is_leaf(); }
};

struct Entry {
    Key key;
    Count multiplicity;
    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Result of cutting a tree at one of its leaves.
struct LeafSplit {
    Tree left;
    Node* leaf;  // detached singleton root
    Tree right;
};

/// floor(lg w) for w >= 1.
int rank_of_weight(Weight w) noexcept;

/// Owns every node of the trees it builds and counts the structural work
/// they cost. Trees are plain handles; destroying a Forest releases all of
/// them at once.
class Forest {
public:
    Forest();
    ~Forest();
    Forest(const Forest&) = delete;
    Forest& operator=(const Forest&) = delete;
    Forest(Forest&&) noexcept;
    Forest& operator=(Forest&&) noexcept;

    WorkCounter& work() noexcept { return work_; }
    const WorkCounter& work() const noexcept { return work_; }
    std::size_t live_nodes() const noexcept { return live_; }

    // --- construction and teardown ---------------------------------------
    Tree make_leaf(Key key, Weight weight, Count multiplicity = 1);
    void destroy(Tree t);

    // --- balance mechanics ------------------------------------------------
    /// Concatenates two trees; every key of `left` must be below every key
    /// of `right`. Throws KeyOverlap otherwise.
    Tree join(Tree left, Tree right);
    /// Keys <= j go left, keys > j go right. Leaf weights are untouched.
    std::pair<Tree, Tree> split_at_key(Tree t, Key j);
    LeafSplit split_at_leaf(Tree t, Node* leaf);
    Tree reweight_leaf(Tree t, Key key, Weight new_weight);
    Tree reweight_leaf(Tree t, Node* leaf, Weight new_weight);

    // --- queries and navigation ------------------------------------------
    std::optional<Entry> search_le(Tree t, Key j);
    /// Leaf holding the largest key <= j, or null. Pushes offsets down the
    /// visited path.
    Node* find_le(Tree t, Key j);
    Node* leftmost(Tree t);
    Node* rightmost(Tree t);
    /// Largest key <= j at or to the right of `start`, found by climbing
    /// until the subtree reaches j and descending again. `start`'s root path
    /// must already have its offsets pushed down. If `path` is given, the
    /// visited nodes are appended to it in visiting order.
    Node* finger_pred(Node* start, Key j, std::vector<Node*>* path = nullptr);
    /// In-order successor of a leaf whose root path is pushed down.
    Node* successor(Node* leaf);
    /// Key of a leaf whose strict ancestors all carry a zero offset.
    static Key pushed_key(const Node* leaf) noexcept { return leaf->shift + leaf->lo; }
    /// Key of any leaf, summing offsets up to the root. Read-only.
    static Key resolved_key(const Node* leaf) noexcept;

    Tree shift_tree(Tree t, Key delta);
    void push_down(Node* x);

    /// In-order (key, multiplicity) listing. Read-only, not counted as work.
    static std::vector<Entry> items(Tree t);
    static std::size_t size(Tree t);

    // --- low-level surgery used by the segment merge ----------------------
    /// New internal node over the given roots (2 or 3, in key order).
    Node* make_parent(Node* a, Node* b);
    /// Cuts `child` loose from its parent, leaving a null slot behind. The
    /// parent and all its ancestors must carry zero offsets.
    void detach_in_place(Node* child);
    /// Frees every internal node still reachable from `root` through
    /// non-null child slots. All leaves must have been detached already.
    void free_skeleton(Node* root);
    void set_singleton_weight(Node* leaf, Weight w);
    void visit(const Node*) noexcept { work_.tick(); }

private:
    Node* alloc();
    void release(Node* n);
    void refresh(Node* x);
    void set_child(Node* parent, int slot, Node* child);
    Node* join_nodes(Node* x, Node* y);
    Node* join_left_taller(Node* x, Node* y);
    Node* join_right_taller(Node* x, Node* y);
    Node* build_from_four(std::array<Node*, 4> kids);
    Node* join_roots(Node* a, Node* b);
    Tree rejoin_left(std::vector<std::vector<Node*>>& levels);
    Tree rejoin_right(std::vector<std::vector<Node*>>& levels);

    struct Pool;
    std::unique_ptr<Pool> pool_;
    WorkCounter work_;
    std::size_t live_ = 0;
};

}  // namespace mdict
