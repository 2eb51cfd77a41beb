#include "recinet/coreperiphery.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace recinet {

namespace {

std::vector<char> membership(int n, const std::vector<int>& core) {
    std::vector<char> in_core(static_cast<std::size_t>(n), 0);
    for (int v : core) {
        if (v < 0 || v >= n) throw std::out_of_range("core contains an invalid node index");
        in_core[static_cast<std::size_t>(v)] = 1;
    }
    return in_core;
}

// e(C) * d, as an exact integer. With deg_v the number of links incident to
// v, the score reduces to d + |C|^2 - |C| - sum_{v in C} deg_v: periphery
// errors are the links not incident to the core, core errors are the slots
// the core's incident links leave unfilled.
std::int64_t error_numerator(std::int64_t links, std::int64_t core_size, std::int64_t core_degree_sum) {
    return links + core_size * (core_size - 1) - core_degree_sum;
}

struct DegreeInfo {
    std::vector<std::int64_t> degree;    // binarized total degree per node
    std::vector<std::int64_t> strength;  // total strength per node (tie-break)
    std::int64_t links = 0;
};

DegreeInfo degree_info(const WeightedDigraph& g) {
    const int n = g.node_count();
    DegreeInfo info;
    info.degree.assign(n, 0);
    info.strength.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Weight w = g.weight(i, j);
            if (w > 0) {
                info.links += 1;
                info.degree[i] += 1;
                info.degree[j] += 1;
            }
            info.strength[i] += w;
            info.strength[j] += w;
        }
    }
    return info;
}

Bipartition make_partition(std::vector<int> core, std::int64_t numerator, std::int64_t links) {
    std::sort(core.begin(), core.end());
    Bipartition p;
    p.core = std::move(core);
    p.error = static_cast<double>(numerator) / static_cast<double>(links);
    return p;
}

}  // namespace

double error_score(const WeightedDigraph& g, const std::vector<int>& core) {
    const int n = g.node_count();
    const std::vector<char> in_core = membership(n, core);
    std::int64_t links = 0, core_links = 0, periphery_links = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i || g.weight(i, j) == 0) continue;
            ++links;
            if (in_core[i] && in_core[j]) ++core_links;
            if (!in_core[i] && !in_core[j]) ++periphery_links;
        }
    }
    if (links == 0) throw std::domain_error("error_score is undefined on a graph without links");
    const std::int64_t c = static_cast<std::int64_t>(core.size());
    return static_cast<double>(c * (c - 1) - core_links + periphery_links) / static_cast<double>(links);
}

Bipartition detect_core_sorted(const WeightedDigraph& g) {
    const int n = g.node_count();
    const DegreeInfo info = degree_info(g);
    if (info.links == 0) throw std::domain_error("core detection is undefined on a graph without links");
    if (n < 2) throw std::domain_error("core detection needs at least two nodes");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (info.degree[a] != info.degree[b]) return info.degree[a] > info.degree[b];
        if (info.strength[a] != info.strength[b]) return info.strength[a] > info.strength[b];
        return a < b;
    });

    std::int64_t numerator = info.links;  // empty core: every link is a periphery error
    std::int64_t best_numerator = 0;
    int best_prefix = 0;
    for (int c = 1; c <= n - 1; ++c) {
        const int v = order[static_cast<std::size_t>(c - 1)];
        numerator += 2LL * (c - 1) - info.degree[v];
        if (best_prefix == 0 || numerator < best_numerator) {
            best_numerator = numerator;
            best_prefix = c;
        }
    }
    return make_partition({order.begin(), order.begin() + best_prefix}, best_numerator, info.links);
}

Bipartition refine_greedy(const WeightedDigraph& g, const Bipartition& init, int max_passes) {
    const int n = g.node_count();
    const DegreeInfo info = degree_info(g);
    if (info.links == 0) throw std::domain_error("refinement is undefined on a graph without links");
    std::vector<char> in_core = membership(n, init.core);
    std::int64_t core_size = static_cast<std::int64_t>(init.core.size());
    if (core_size == 0 || core_size == n)
        throw std::invalid_argument("refine_greedy requires a nonempty core and a nonempty periphery");

    std::int64_t core_degree_sum = 0;
    for (int v = 0; v < n; ++v)
        if (in_core[v]) core_degree_sum += info.degree[v];
    std::int64_t numerator = error_numerator(info.links, core_size, core_degree_sum);

    for (int pass = 0; pass < max_passes; ++pass) {
        std::int64_t best_delta = 0;
        int best_node = -1;
        for (int v = 0; v < n; ++v) {
            std::int64_t delta;
            if (in_core[v]) {
                if (core_size == 1) continue;
                delta = -2 * (core_size - 1) + info.degree[v];
            } else {
                if (core_size == n - 1) continue;
                delta = 2 * core_size - info.degree[v];
            }
            if (delta < best_delta) {
                best_delta = delta;
                best_node = v;
            }
        }
        if (best_node < 0) break;  // local optimum
        if (in_core[best_node]) {
            in_core[best_node] = 0;
            --core_size;
            core_degree_sum -= info.degree[best_node];
        } else {
            in_core[best_node] = 1;
            ++core_size;
            core_degree_sum += info.degree[best_node];
        }
        numerator += best_delta;
    }

    std::vector<int> core;
    for (int v = 0; v < n; ++v)
        if (in_core[v]) core.push_back(v);
    return make_partition(std::move(core), numerator, info.links);
}

BlockStats block_stats(const WeightedDigraph& g, const Bipartition& part) {
    const int n = g.node_count();
    const std::vector<char> in_core = membership(n, part.core);
    const std::int64_t c = static_cast<std::int64_t>(part.core.size());
    const std::int64_t p = n - c;

    BlockStats bs;
    bs.cc.max_links = c * (c - 1);
    bs.pp.max_links = p * (p - 1);
    bs.cp.max_links = c * p;
    bs.pc.max_links = c * p;

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const Weight w = g.weight(i, j);
            BlockEntry& e = in_core[i] ? (in_core[j] ? bs.cc : bs.cp) : (in_core[j] ? bs.pc : bs.pp);
            if (w > 0) e.links += 1;
            e.volume += w;
            const DyadDecomposition d = dyad_decompose(w, g.weight(j, i));
            if (d.a_rec) {
                if (in_core[i] && in_core[j]) {
                    bs.cc_rec_links += 1;
                    bs.cc_rec_volume += d.w_rec;
                } else if (!in_core[i] && !in_core[j]) {
                    bs.pp_rec_links += 1;
                    bs.pp_rec_volume += d.w_rec;
                } else {
                    bs.cross_rec_links += 1;
                    bs.cross_rec_volume += d.w_rec;
                }
            }
        }
    }

    for (BlockEntry* e : {&bs.cc, &bs.cp, &bs.pc, &bs.pp}) {
        if (e->max_links > 0)
            e->density = static_cast<double>(e->links) / static_cast<double>(e->max_links);
        if (e->links > 0)
            e->volume_per_link = static_cast<double>(e->volume) / static_cast<double>(e->links);
    }
    if (bs.cc.links > 0)
        bs.cc_reciprocity_ratio = static_cast<double>(bs.cc_rec_links) / static_cast<double>(bs.cc.links);
    if (bs.pp.links > 0)
        bs.pp_reciprocity_ratio = static_cast<double>(bs.pp_rec_links) / static_cast<double>(bs.pp.links);
    return bs;
}

}  // namespace recinet
