#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fewbits/sparsebin.hpp"

namespace fewbits::carrylab {

/// Outcome of collapse analysis on a position multiset.
///
/// A multiset "collapses" when its value is a single power of two (s = 1).
/// In that case the positions cannot be spread out: the lowest term must
/// start a carry chain that reaches the highest, so
/// spread <= max(0, cardinality - 2).
struct CollapseReport {
    std::size_t s_value;    // ones count of the carry-resolved value
    std::uint64_t spread;   // max position - min position in the raw multiset
    bool lemma_holds;       // s != 1, or spread within the carry-chain budget
};

/// Throws std::invalid_argument on an empty multiset.
CollapseReport collapse_spread(const ExponentMultiset& multiset);

/// One product term 2^(a_i + b_j) of the pre-carry expansion, identified by
/// its factor-position indices.
struct XiPair {
    std::uint32_t i = 0;       // index into a's position list
    std::uint32_t j = 0;       // index into b's position list
    std::uint64_t sum = 0;     // a_i + b_j
    friend bool operator==(const XiPair&, const XiPair&) = default;
    friend auto operator<=>(const XiPair&, const XiPair&) = default;
};

/// The index grid of the product expansion ab = 1 + sum over pairs of
/// 2^(a_i + b_j), i.e. every (i, j) except (0, 0). Requires both factors odd
/// with at least two nonzero digits each.
struct XiSet {
    SparseBin a;
    SparseBin b;
    std::vector<XiPair> pairs;  // row-major, (0,0) excluded; size = l*m - 1

    std::vector<std::uint64_t> sums() const;
};

XiSet xi_set(const SparseBin& a, const SparseBin& b);

/// A partition of the pair grid into classes that each carry-collapse to a
/// single power of two; class powers are strictly increasing, so they are
/// exactly the nonzero digits of ab - 1.
struct PowerPartition {
    struct Part {
        std::vector<XiPair> members;  // sorted by (i, j)
        std::uint64_t power = 0;      // the class total is 2^power
    };
    std::vector<Part> parts;  // ordered by power ascending
};

/// All partitions of the grid into `parts` nonempty power-of-two classes,
/// at most `cap` of them, in canonical order (lexicographic on the parts'
/// sorted member lists). Empty when no such partition exists.
/// Throws std::invalid_argument when parts is 0 or exceeds the grid size,
/// or when cap is 0.
std::vector<PowerPartition> power_partitions(const XiSet& xi, std::size_t parts,
                                             std::size_t cap = 64);

/// Greedy left-to-right grouping of positions into windows: each cluster
/// holds the positions within `window` of its lowest member, and consecutive
/// cluster representatives are more than `window` apart.
struct ClusterPartition {
    std::uint64_t window = 0;
    std::vector<std::vector<std::uint64_t>> clusters;
    std::vector<std::uint64_t> representatives;  // lowest position per cluster

    std::size_t count() const noexcept { return clusters.size(); }
};

/// Positions must be strictly increasing and nonempty; window >= 1.
ClusterPartition cluster_partition(std::span<const std::uint64_t> positions,
                                   std::uint64_t window);

/// Cluster counts (r_a, r_b) of the two factors' position lists (position 0
/// dropped on both sides) under the window s(a) * s(b). Requires a, b odd
/// with at least two nonzero digits each.
std::pair<std::size_t, std::size_t> cluster_signature(const SparseBin& a, const SparseBin& b);

}  // namespace fewbits::carrylab
