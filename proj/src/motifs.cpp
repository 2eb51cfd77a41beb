#include "recinet/motifs.hpp"

#include <cmath>

namespace recinet {

namespace {

// Dyad flag codes for one ordered pair.
enum : std::uint8_t { FN = 0, FO = 1, FI = 2, FR = 3 };

// Flag patterns of the 13 motifs on the ordered pairs (i,j), (j,k), (k,i),
// and whether the weighted variant takes a cube root (three links) rather
// than a square root (two links).
struct MotifDef {
    std::uint8_t f1, f2, f3;
    bool cbrt;
};

constexpr std::array<MotifDef, 13> kMotifs{{
    {FI, FO, FN, false},  // 1
    {FO, FO, FN, false},  // 2
    {FR, FO, FN, false},  // 3
    {FN, FO, FI, false},  // 4
    {FI, FO, FI, true},   // 5
    {FR, FO, FI, true},   // 6
    {FR, FI, FN, false},  // 7
    {FR, FR, FN, false},  // 8
    {FI, FI, FI, true},   // 9
    {FI, FR, FI, true},   // 10
    {FO, FR, FI, true},   // 11
    {FR, FR, FI, true},   // 12
    {FR, FR, FR, true},   // 13
}};

struct MotifTable {
    std::array<std::int8_t, 64> id;
    MotifTable() {
        id.fill(-1);
        for (std::size_t m = 0; m < kMotifs.size(); ++m)
            id[(kMotifs[m].f1 << 4) | (kMotifs[m].f2 << 2) | kMotifs[m].f3] = static_cast<std::int8_t>(m);
    }
};

const MotifTable kTable;

// Per ordered pair: the exclusive binary flag plus the nonzero weight
// components. A reciprocated pair with surplus carries two components (the
// surplus side and the reciprocated minimum), so weighted motifs can pick up
// asymmetric structure that the binary flags cannot.
struct PairComponents {
    std::uint8_t cls = FN;
    std::uint8_t ncomp = 0;
    std::array<std::uint8_t, 2> flag{};
    std::array<double, 2> value{};
};

PairComponents classify(Weight w_ij, Weight w_ji) {
    PairComponents pc;
    const DyadDecomposition d = dyad_decompose(w_ij, w_ji);
    if (d.a_none) {
        pc.cls = FN;
        pc.flag[pc.ncomp] = FN;
        pc.value[pc.ncomp++] = 1.0;  // w^none is the binary indicator
        return pc;
    }
    pc.cls = d.a_out_nonrec ? FO : d.a_in_nonrec ? FI : FR;
    if (d.w_out_nonrec > 0) {
        pc.flag[pc.ncomp] = FO;
        pc.value[pc.ncomp++] = static_cast<double>(d.w_out_nonrec);
    }
    if (d.w_in_nonrec > 0) {
        pc.flag[pc.ncomp] = FI;
        pc.value[pc.ncomp++] = static_cast<double>(d.w_in_nonrec);
    }
    if (d.w_rec > 0) {
        pc.flag[pc.ncomp] = FR;
        pc.value[pc.ncomp++] = static_cast<double>(d.w_rec);
    }
    return pc;
}

// Fixed-order pairwise reduction of per-node partial sums.
std::array<double, 13> pairwise_reduce(std::vector<std::array<double, 13>>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    std::array<double, 13> left = pairwise_reduce(parts, lo, mid);
    const std::array<double, 13> right = pairwise_reduce(parts, mid, hi);
    for (int m = 0; m < 13; ++m) left[m] += right[m];
    return left;
}

}  // namespace

MotifVector motif_census(const WeightedDigraph& g) {
    MotifVector out;
    const int n = g.node_count();
    if (n < 3) return out;

    std::vector<PairComponents> pairs(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) pairs[static_cast<std::size_t>(i) * n + j] = classify(g.weight(i, j), g.weight(j, i));

    std::vector<std::array<double, 13>> partials(static_cast<std::size_t>(n), std::array<double, 13>{});
    for (int i = 0; i < n; ++i) {
        std::array<double, 13>& wsum = partials[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const PairComponents& ij = pairs[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const PairComponents& jk = pairs[static_cast<std::size_t>(j) * n + k];
                const PairComponents& ki = pairs[static_cast<std::size_t>(k) * n + i];

                const int m = kTable.id[(ij.cls << 4) | (jk.cls << 2) | ki.cls];
                if (m >= 0) out.unweighted[m] += 1;

                for (int c1 = 0; c1 < ij.ncomp; ++c1)
                    for (int c2 = 0; c2 < jk.ncomp; ++c2)
                        for (int c3 = 0; c3 < ki.ncomp; ++c3) {
                            const int mw =
                                kTable.id[(ij.flag[c1] << 4) | (jk.flag[c2] << 2) | ki.flag[c3]];
                            if (mw < 0) continue;
                            const double prod = ij.value[c1] * jk.value[c2] * ki.value[c3];
                            wsum[mw] += kMotifs[mw].cbrt ? std::cbrt(prod) : std::sqrt(prod);
                        }
            }
        }
    }
    out.weighted = pairwise_reduce(partials, 0, partials.size());
    return out;
}

MotifZScores motif_zscores(const MotifVector& empirical, const std::vector<MotifVector>& ensemble) {
    MotifZScores z;
    for (int m = 0; m < 13; ++m) {
        StatAccumulator u(false), w(false);
        for (const MotifVector& mv : ensemble) {
            u.add(static_cast<double>(mv.unweighted[m]));
            w.add(mv.weighted[m]);
        }
        z.unweighted[m] = z_score(static_cast<double>(empirical.unweighted[m]), u);
        z.weighted[m] = z_score(empirical.weighted[m], w);
    }
    return z;
}

}  // namespace recinet
