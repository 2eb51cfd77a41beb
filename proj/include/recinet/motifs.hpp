#pragma once

#include <array>
#include <vector>

#include "recinet/graph.hpp"
#include "recinet/sampler.hpp"

namespace recinet {

/// Abundance of the 13 connected triadic motifs, as raw ordered-triple sums
/// (combinatorial factors included). The weighted variant replaces each dyad
/// flag by its matching weight component and takes the square root (two-link
/// motifs) or cube root (three-link motifs) of the per-triple product; on a
/// binary graph it equals the unweighted census entry for entry.
struct MotifVector {
    std::array<std::int64_t, 13> unweighted{};
    std::array<double, 13> weighted{};
};

/// O(n^3) ordered-triple census. Graphs with n < 3 return all zeros.
/// Weighted sums use fixed-order pairwise accumulation, so results are
/// bitwise reproducible.
MotifVector motif_census(const WeightedDigraph& g);

struct MotifZScores {
    std::array<ZScore, 13> unweighted{};
    std::array<ZScore, 13> weighted{};
};

/// Per-motif z-scores of an empirical census against an ensemble of censuses
/// (sample mean / sample std). Invariant under any common positive rescaling
/// of a motif's counts; degenerate ensembles yield sentinel statuses instead
/// of silent numbers.
MotifZScores motif_zscores(const MotifVector& empirical, const std::vector<MotifVector>& ensemble);

}  // namespace recinet
