#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recinet/models.hpp"
#include "recinet/rng.hpp"

namespace recinet {

struct DyadSample {
    Weight w_ij = 0;
    Weight w_ji = 0;
};

/// Draws one dyad exactly from the fitted distribution. RECM uses the
/// two-step scheme (categorical over the six topological cases, then shifted
/// geometrics for the active weight components); RWCM draws its asymmetric
/// part and its reciprocated part separately; DECM draws the two directed
/// edges independently.
DyadSample sample_dyad(int i, int j, const ParamSet& params, CounterRng& rng);

/// Samples a full graph: every unordered pair gets its own counter stream
/// keyed by (seed, sample_index, pair).
WeightedDigraph sample_graph(const ParamSet& params, std::uint64_t seed, std::uint64_t sample_index);

/// Runs fn(sample_index, graph) for sample_index in [0, count). Sequential;
/// callers that parallelize draw each sample themselves via sample_graph,
/// which is safe because streams are independent.
void for_each_sample(const ParamSet& params, std::uint64_t seed, int count,
                     const std::function<void(int, const WeightedDigraph&)>& fn);

/// Summary of one statistic across an ensemble. Percentiles use linear
/// interpolation of order statistics; std_dev is the (n-1) sample deviation.
/// `count` is the number of samples where the statistic was defined; absent
/// values (e.g. ratios with zero denominators) are excluded.
struct StatDistribution {
    std::string name;
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    std::optional<double> p2_5;
    std::optional<double> p97_5;
};

/// Streaming moment accumulator (Welford) that optionally retains the raw
/// values for percentile queries. Merging is associative, so per-worker
/// partials can be combined in any grouping.
class StatAccumulator {
public:
    explicit StatAccumulator(bool retain_values = true) : retain_(retain_values) {}

    void add(double value);
    void merge(const StatAccumulator& other);

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    double sample_std() const;

    /// p in [0, 100]; requires retained values.
    double percentile(double p) const;

    StatDistribution distribution(const std::string& name, double p_lo = 2.5, double p_hi = 97.5) const;

private:
    bool retain_;
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    std::vector<double> values_;
};

enum class ZStatus {
    Ok,
    Undefined,  // no deviation to measure: sigma = 0 and numerator = 0, or count < 2
    Degenerate  // sigma = 0 with nonzero numerator; value is an infinite sentinel
};

struct ZScore {
    ZStatus status = ZStatus::Undefined;
    double value = 0.0;

    bool ok() const { return status == ZStatus::Ok; }
};

ZScore z_score(double empirical, const StatAccumulator& ensemble);

}  // namespace recinet
