#pragma once

// Biased segment merge of two weighted biased trees.
//
// Both inputs must satisfy the gap weighting scheme: every leaf weighs
// g-(x) + g+(x), the distances to its neighbours within its own set, with 1
// standing in for the missing neighbour at either end. The merge cuts both
// trees into the maximal alternating runs ("segments") of the merged key
// order, builds one tree per run from the subtrees hanging off the path
// between the run's end leaves, drops duplicate boundary keys, fixes the
// weights of the run ends, and joins the runs by repeatedly joining the
// lowest-rank tree with its lower-rank neighbour.

#include <cstddef>
#include <vector>

#include "mdict/biased_tree.hpp"

namespace mdict {

enum class Origin : std::uint8_t { A, B };

struct Segment {
    Origin origin = Origin::A;
    // End leaves. Null when the segment is a whole input tree whose ends
    // were never visited; they are located on demand.
    Node* left_leaf = nullptr;
    Node* right_leaf = nullptr;
    Key left_key = 0;
    Key right_key = 0;
    // Outer gaps currently folded into the end leaves' weights.
    Weight baked_left = 1;
    Weight baked_right = 1;
    Tree tree;
    bool pruned = false;
};

/// Alternating runs A1, B1, A2, B2, ... in key order. The list always starts
/// with an A run; it ends with a B run unless both inputs share their maximum.
struct SegmentDecomposition {
    std::vector<Segment> segments;
    Tree source_a;
    Tree source_b;

    std::size_t count(Origin origin) const;
    /// Number of A runs, i.e. the segment count k.
    std::size_t k() const { return count(Origin::A); }
};

/// Gap values around the runs, indexed from 1 (index 0 holds the boundary
/// conventions). Writing a[i] and b[i] for the i-th run of each side:
///   a_gap[i]  = min a[i+1] - max a[i],  a_gap[0] = 1
///   b_gap[i]  = min b[i+1] - max b[i],  b_gap[k] = 1
///   a_to_b[i] = min b[i] - max a[i]     (right gap of a[i] after the merge)
///   b_to_a[i] = min a[i+1] - max b[i],  b_to_a[0] = 1
/// Entries without a defined value are 1.
struct GapTable {
    std::size_t k = 0;
    std::vector<Key> a_gap;
    std::vector<Key> b_gap;
    std::vector<Key> a_to_b;
    std::vector<Key> b_to_a;
};

GapTable gap_table(const SegmentDecomposition& d);

/// Subtrees between two leaves of one tree, grouped by the path step they
/// hang off. Each step holds at most two subtrees.
struct Profile {
    Node* left_leaf = nullptr;
    Node* right_leaf = nullptr;
    Node* top = nullptr;  // lowest common ancestor, null for a single leaf
    std::vector<std::vector<Node*>> left_steps;   // bottom-up, right siblings
    std::vector<std::vector<Node*>> right_steps;  // bottom-up, left siblings
};

/// Optional hook to observe the intermediate state of a merge.
struct MergeObserver {
    virtual ~MergeObserver() = default;
    /// Called after the run trees are built and before pruning.
    virtual void on_segments(const SegmentDecomposition&, bool whole_trees) { (void)whole_trees; }
};

struct NormalizedInputs {
    Tree a;
    Tree b;
    Tree suffix;  // keys above max(b) cut from a, rejoined after the merge
    bool swapped = false;
};

/// Orders the inputs so that min(a) <= min(b) and max(a) <= max(b); when a
/// reaches past max(b) its tail is cut off with a weighted split.
NormalizedInputs normalize(Forest& forest, Tree a, Tree b);

/// Locates the run end leaves with finger walks; only the first two walks
/// start at a root. Requires normalized inputs.
SegmentDecomposition find_profiles(Forest& forest, Tree a, Tree b);

Profile collect_profile(Forest& forest, Node* left_leaf, Node* right_leaf);
Tree construct_segment_tree(Forest& forest, const Profile& profile);

/// Builds every run tree and frees the leftover skeletons of both sources.
void build_segment_trees(Forest& forest, SegmentDecomposition& d);

/// Removes duplicate boundary keys, moving the removed leaf's multiplicity
/// onto the surviving equal key.
void prune_trees(Forest& forest, SegmentDecomposition& d);

/// Rewrites the end-leaf weights so every surviving run fits the gap weighting
/// of the merged set.
void reweight_segments(Forest& forest, SegmentDecomposition& d);

/// Joins key-ordered, key-disjoint trees into one, always picking the
/// leftmost tree of minimum rank and its lower-rank neighbour (left on ties).
Tree join_segments(Forest& forest, std::vector<Tree> trees);

/// Full merge of two weighted trees. Duplicate keys collapse into one leaf
/// whose multiplicity is the sum of both.
Tree merge_trees(Forest& forest, Tree a, Tree b, MergeObserver* observer = nullptr);

/// Split that restores the weighting scheme at the cut: the new maximum of
/// the left part and the new minimum of the right part get an outer gap of 1.
std::pair<Tree, Tree> split_weighted(Forest& forest, Tree t, Key j);

/// Replaces the outer gap folded into an end leaf's weight.
Tree rebake_end(Forest& forest, Tree t, Node* leaf, Weight old_gap, Weight new_gap);

}  // namespace mdict
