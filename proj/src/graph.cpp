#include "recinet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace recinet {

WeightedDigraph::WeightedDigraph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("WeightedDigraph: node count must be >= 1");
    w_.assign(static_cast<std::size_t>(n) * n, 0);
}

WeightedDigraph::WeightedDigraph(int n, std::vector<std::string> labels) : WeightedDigraph(n) {
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("WeightedDigraph: label count does not match node count");
    labels_ = std::move(labels);
}

void WeightedDigraph::set_weight(int i, int j, Weight w) {
    if (i == j && w != 0) throw std::invalid_argument("WeightedDigraph: self-loops are not allowed");
    if (w < 0) throw std::invalid_argument("WeightedDigraph: weights must be non-negative");
    w_[static_cast<std::size_t>(i) * n_ + j] = w;
}

void WeightedDigraph::add_weight(int i, int j, Weight w) {
    set_weight(i, j, weight(i, j) + w);
}

std::string WeightedDigraph::label_of(int i) const {
    if (has_labels()) return labels_[static_cast<std::size_t>(i)];
    return std::to_string(i);
}

void WeightedDigraph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != n_)
        throw std::invalid_argument("WeightedDigraph: label count does not match node count");
    labels_ = std::move(labels);
}

bool WeightedDigraph::is_binary() const {
    return std::all_of(w_.begin(), w_.end(), [](Weight w) { return w == 0 || w == 1; });
}

DyadDecomposition dyad_decompose(Weight w_ij, Weight w_ji) {
    DyadDecomposition d;
    d.w_rec = std::min(w_ij, w_ji);
    d.w_out_nonrec = w_ij - d.w_rec;
    d.w_in_nonrec = w_ji - d.w_rec;
    d.a_out_nonrec = w_ij > 0 && w_ji == 0;
    d.a_in_nonrec = w_ij == 0 && w_ji > 0;
    d.a_rec = w_ij > 0 && w_ji > 0;
    d.a_none = w_ij == 0 && w_ji == 0;
    return d;
}

std::vector<NodeStats> node_stats(const WeightedDigraph& g) {
    const int n = g.node_count();
    std::vector<NodeStats> stats(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        NodeStats& s = stats[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Weight wij = g.weight(i, j);
            const Weight wji = g.weight(j, i);
            const DyadDecomposition d = dyad_decompose(wij, wji);
            s.d_out += wij > 0;
            s.d_in += wji > 0;
            s.s_out += wij;
            s.s_in += wji;
            s.d_out_nonrec += d.a_out_nonrec;
            s.d_in_nonrec += d.a_in_nonrec;
            s.d_rec += d.a_rec;
            s.s_out_nonrec += d.w_out_nonrec;
            s.s_in_nonrec += d.w_in_nonrec;
            s.s_rec += d.w_rec;
        }
        s.d_total = s.d_out + s.d_in;
    }
    return stats;
}

GlobalStats global_stats(const WeightedDigraph& g) {
    const int n = g.node_count();
    GlobalStats gs;
    gs.nodes = n;
    gs.possible_links = static_cast<std::int64_t>(n) * (n - 1);
    for (const NodeStats& s : node_stats(g)) {
        gs.links += s.d_out;
        gs.volume += s.s_out;
        gs.rec_links += s.d_rec;
        gs.rec_volume += s.s_rec;
    }
    if (gs.possible_links > 0)
        gs.density = static_cast<double>(gs.links) / static_cast<double>(gs.possible_links);
    if (gs.links > 0) {
        gs.weighted_density = static_cast<double>(gs.volume) / static_cast<double>(gs.links);
        gs.reciprocity_ratio = static_cast<double>(gs.rec_links) / static_cast<double>(gs.links);
    }
    if (gs.rec_links > 0)
        gs.avg_rec_weight = static_cast<double>(gs.rec_volume) / static_cast<double>(gs.rec_links);
    return gs;
}

}  // namespace recinet
