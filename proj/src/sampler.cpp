#include "recinet/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace recinet {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr Weight kWeightCap = std::numeric_limits<Weight>::max();

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t sample, std::uint64_t dyad) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (sample + 1) * 0xD6E8FEB86659FD93ULL);
    h = mix64(h ^ (dyad + 1) * 0xA0761D6478BD642FULL);
    state_ = h;
}

std::uint64_t CounterRng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double CounterRng::next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

Weight sample_geometric1(double q, double u) {
    if (q <= 0.0) return 1;
    if (q >= 1.0) throw std::overflow_error("geometric ratio reached 1; the weight series diverges");
    const double k = std::ceil(std::log(u) / std::log(q));
    if (!(k < 9.0e18))
        throw std::overflow_error("sampled weight exceeds the 63-bit cap");
    return std::max<Weight>(1, static_cast<Weight>(k));
}

Weight sample_geometric0(double q, double u) {
    if (q <= 0.0) return 0;
    if (q >= 1.0) throw std::overflow_error("geometric ratio reached 1; the weight series diverges");
    const double k = std::floor(std::log(u) / std::log(q));
    if (!(k < 9.0e18))
        throw std::overflow_error("sampled weight exceeds the 63-bit cap");
    return std::max<Weight>(0, static_cast<Weight>(k));
}

namespace {

DyadSample sample_decm_dyad(int i, int j, const ParamSet& p, CounterRng& rng) {
    DyadSample out;
    const auto edge = [&](int from, int to) -> Weight {
        const double kappa = p.k_out[from] * p.k_in[to];
        const double u = kappa > 0 ? p.l_out[from] * p.l_in[to] : 0.0;
        const double p_edge = kappa * u / (1.0 - u + kappa * u);
        const double draw = rng.next_unit();
        if (draw > p_edge) return 0;
        return sample_geometric1(u, rng.next_unit());
    };
    out.w_ij = edge(i, j);
    out.w_ji = edge(j, i);
    return out;
}

DyadSample sample_reciprocal_dyad(int i, int j, const ParamSet& p, CounterRng& rng) {
    const RecmDyad d = recm_dyad(i, j, p);
    const double u = rng.next_unit();
    // Case boundaries in fixed order: none, out, in, rec-equal, rec-out, rec-in.
    double acc = d.p.p_none;
    Weight wo = 0, wi = 0, wr = 0;
    if (u <= acc) {
        // empty dyad
    } else if (u <= (acc += d.p.p_out)) {
        wo = sample_geometric1(d.x, rng.next_unit());
    } else if (u <= (acc += d.p.p_in)) {
        wi = sample_geometric1(d.y, rng.next_unit());
    } else if (u <= (acc += d.p.p_rec_equal)) {
        wr = sample_geometric1(d.z, rng.next_unit());
    } else if (u <= (acc += d.p.p_rec_out)) {
        wr = sample_geometric1(d.z, rng.next_unit());
        wo = sample_geometric1(d.x, rng.next_unit());
    } else {
        wr = sample_geometric1(d.z, rng.next_unit());
        wi = sample_geometric1(d.y, rng.next_unit());
    }
    if (wo > kWeightCap - wr || wi > kWeightCap - wr) throw std::overflow_error("dyad weight overflow");
    return {wo + wr, wi + wr};
}

DyadSample sample_rwcm_dyad(int i, int j, const ParamSet& p, CounterRng& rng) {
    const double q1 = p.l_out[i] * p.l_in[j];
    const double q2 = p.l_in[i] * p.l_out[j];
    const double q3 = p.l_rec[i] * p.l_rec[j];
    const double norm = 1.0 - q1 * q2;
    const double p_out = q1 * (1.0 - q2) / norm;
    const double p_in = q2 * (1.0 - q1) / norm;

    Weight wo = 0, wi = 0;
    const double u = rng.next_unit();
    if (u <= p_out) wo = sample_geometric1(q1, rng.next_unit());
    else if (u <= p_out + p_in) wi = sample_geometric1(q2, rng.next_unit());
    // Reciprocated component is independent of the asymmetric part.
    const Weight wr = sample_geometric0(q3, rng.next_unit());
    if (wo > kWeightCap - wr || wi > kWeightCap - wr) throw std::overflow_error("dyad weight overflow");
    return {wo + wr, wi + wr};
}

}  // namespace

DyadSample sample_dyad(int i, int j, const ParamSet& params, CounterRng& rng) {
    if (i == j) throw std::invalid_argument("sample_dyad: nodes must differ");
    switch (params.model) {
        case ModelKind::DECM: return sample_decm_dyad(i, j, params, rng);
        case ModelKind::RWCM: return sample_rwcm_dyad(i, j, params, rng);
        case ModelKind::RECM: return sample_reciprocal_dyad(i, j, params, rng);
    }
    throw std::logic_error("unknown model");
}

WeightedDigraph sample_graph(const ParamSet& params, std::uint64_t seed, std::uint64_t sample_index) {
    const int n = params.n;
    WeightedDigraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const std::uint64_t pair_key = static_cast<std::uint64_t>(i) * n + j;
            CounterRng rng(seed, sample_index, pair_key);
            const DyadSample d = sample_dyad(i, j, params, rng);
            if (d.w_ij > 0) g.set_weight(i, j, d.w_ij);
            if (d.w_ji > 0) g.set_weight(j, i, d.w_ji);
        }
    }
    return g;
}

void for_each_sample(const ParamSet& params, std::uint64_t seed, int count,
                     const std::function<void(int, const WeightedDigraph&)>& fn) {
    for (int s = 0; s < count; ++s) fn(s, sample_graph(params, seed, static_cast<std::uint64_t>(s)));
}

void StatAccumulator::add(double value) {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
    if (retain_) values_.push_back(value);
}

void StatAccumulator::merge(const StatAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_), nb = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / (na + nb);
    m2_ += other.m2_ + delta * delta * na * nb / (na + nb);
    count_ += other.count_;
    if (retain_) values_.insert(values_.end(), other.values_.begin(), other.values_.end());
}

double StatAccumulator::sample_std() const {
    if (count_ < 2) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(count_ - 1));
}

double StatAccumulator::percentile(double p) const {
    if (!retain_ || values_.empty()) throw std::logic_error("percentile requires retained values");
    std::vector<double> sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    const double h = std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

StatDistribution StatAccumulator::distribution(const std::string& name, double p_lo, double p_hi) const {
    StatDistribution d;
    d.name = name;
    d.count = count_;
    d.mean = count_ > 0 ? mean_ : 0.0;
    d.std_dev = sample_std();
    if (retain_ && !values_.empty()) {
        d.p2_5 = percentile(p_lo);
        d.p97_5 = percentile(p_hi);
    }
    return d;
}

ZScore z_score(double empirical, const StatAccumulator& ensemble) {
    ZScore z;
    if (ensemble.count() < 2) return z;
    const double sigma = ensemble.sample_std();
    const double num = empirical - ensemble.mean();
    if (sigma == 0.0) {
        if (num == 0.0) return z;  // point mass matched exactly
        z.status = ZStatus::Degenerate;
        z.value = num > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
        return z;
    }
    z.status = ZStatus::Ok;
    z.value = num / sigma;
    return z;
}

}  // namespace recinet
