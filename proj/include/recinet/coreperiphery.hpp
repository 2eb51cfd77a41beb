#pragma once

#include <optional>
#include <vector>

#include "recinet/graph.hpp"

namespace recinet {

/// Ordered split of the node set into a core and its complement, with the
/// misfit score of the idealized structure (complete core, empty periphery).
struct Bipartition {
    std::vector<int> core;  // sorted node indices; periphery is the complement
    double error = 0.0;
};

/// Core-periphery error: missing within-core links plus present
/// within-periphery links, normalized by the total link count. Uses the
/// binarized graph only. Throws std::domain_error on an empty graph.
double error_score(const WeightedDigraph& g, const std::vector<int>& core);

/// Degree-sorting detection: nodes ordered by total degree (ties: higher
/// total strength, then lower index); all nontrivial prefixes are scored
/// incrementally and the error-minimizing one is returned, ties going to the
/// smaller core. O(n^2) overall and deterministic.
Bipartition detect_core_sorted(const WeightedDigraph& g);

/// Kernighan-Lin-style refinement: repeatedly applies the best strictly
/// error-reducing single-node side swap (ties: lower node index) until a
/// local optimum or max_passes swaps. Never returns a worse partition.
Bipartition refine_greedy(const WeightedDigraph& g, const Bipartition& init, int max_passes = 1000);

struct BlockEntry {
    std::int64_t links = 0;
    std::int64_t max_links = 0;  // block-specific maximum link count
    std::optional<double> density;
    Weight volume = 0;
    std::optional<double> volume_per_link;
};

/// Link/volume/reciprocity statistics of the 2x2 block partition induced by
/// a bipartition. Within-block reciprocity is summed over ordered pairs
/// inside the block; cross reciprocity covers reciprocated pairs with one leg
/// in each block and is reported once (a single joint value for cp+pc).
struct BlockStats {
    BlockEntry cc, cp, pc, pp;
    std::int64_t cc_rec_links = 0, pp_rec_links = 0, cross_rec_links = 0;
    Weight cc_rec_volume = 0, pp_rec_volume = 0, cross_rec_volume = 0;
    std::optional<double> cc_reciprocity_ratio, pp_reciprocity_ratio;
};

BlockStats block_stats(const WeightedDigraph& g, const Bipartition& part);

}  // namespace recinet
