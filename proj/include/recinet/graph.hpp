#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace recinet {

using Weight = std::int64_t;

/// Directed graph on n nodes with non-negative integer weights and zero
/// diagonal, stored as a dense row-major n x n matrix. Node labels are
/// optional and purely cosmetic; all computation runs on indices.
class WeightedDigraph {
public:
    explicit WeightedDigraph(int n);
    WeightedDigraph(int n, std::vector<std::string> labels);

    int node_count() const { return n_; }

    Weight weight(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
    void set_weight(int i, int j, Weight w);
    void add_weight(int i, int j, Weight w);

    bool has_edge(int i, int j) const { return weight(i, j) > 0; }

    const std::vector<std::string>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }
    std::string label_of(int i) const;
    void set_labels(std::vector<std::string> labels);

    /// True when every weight is in {0,1}.
    bool is_binary() const;

    bool operator==(const WeightedDigraph& other) const = default;

private:
    int n_;
    std::vector<Weight> w_;
    std::vector<std::string> labels_;
};

/// Split of one ordered node pair (i,j) into reciprocated and non-reciprocated
/// parts: w_rec = min(w_ij, w_ji), the surplus goes to exactly one side.
struct DyadDecomposition {
    Weight w_out_nonrec = 0;  // w_ij - min
    Weight w_in_nonrec = 0;   // w_ji - min
    Weight w_rec = 0;         // min(w_ij, w_ji)
    bool a_out_nonrec = false;
    bool a_in_nonrec = false;
    bool a_rec = false;
    bool a_none = false;
};

DyadDecomposition dyad_decompose(Weight w_ij, Weight w_ji);

/// Per-node degree/strength statistics, split by direction and by
/// reciprocity status. All sums run over ordered pairs.
struct NodeStats {
    std::int64_t d_out = 0;         // out-degree
    std::int64_t d_in = 0;          // in-degree
    std::int64_t d_total = 0;       // d_out + d_in
    std::int64_t d_out_nonrec = 0;  // one-way outgoing links
    std::int64_t d_in_nonrec = 0;   // one-way incoming links
    std::int64_t d_rec = 0;         // reciprocated links
    Weight s_out = 0;               // out-strength
    Weight s_in = 0;                // in-strength
    Weight s_out_nonrec = 0;        // non-reciprocated out-strength
    Weight s_in_nonrec = 0;         // non-reciprocated in-strength
    Weight s_rec = 0;               // reciprocated strength
};

/// Network-wide aggregates. Ratios with zero denominators are reported as
/// absent (std::nullopt), never silently zero.
///
/// Convention: rec_links and rec_volume sum over ordered pairs, so every
/// reciprocated dyad contributes twice. This keeps reciprocity_ratio =
/// rec_links / links inside [0,1] and makes global values exact sums of the
/// per-node statistics.
struct GlobalStats {
    int nodes = 0;
    std::int64_t links = 0;            // d
    std::int64_t possible_links = 0;   // n (n - 1)
    std::optional<double> density;     // d / (n (n - 1))
    Weight volume = 0;                 // s
    std::optional<double> weighted_density;    // s / d
    std::int64_t rec_links = 0;                // d^rec, ordered-pair sum
    std::optional<double> reciprocity_ratio;   // d^rec / d
    Weight rec_volume = 0;                     // s^rec, ordered-pair sum
    std::optional<double> avg_rec_weight;      // s^rec / d^rec
};

std::vector<NodeStats> node_stats(const WeightedDigraph& g);
GlobalStats global_stats(const WeightedDigraph& g);

}  // namespace recinet
