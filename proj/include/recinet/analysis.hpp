#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recinet/coreperiphery.hpp"
#include "recinet/fit.hpp"
#include "recinet/graph.hpp"
#include "recinet/motifs.hpp"
#include "recinet/sampler.hpp"

namespace recinet {

struct AnalysisConfig {
    std::vector<ModelKind> models{ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM};
    int samples = 1000;
    std::uint64_t seed = 0;
    double tolerance = 1e-4;
    int max_iterations = 500;
    double significance = 1.96;
    double percentile_lo = 2.5;
    double percentile_hi = 97.5;
    int threads = 1;
    /// Core size and error distributions rerun detection on every sampled
    /// graph; block statistics always use the empirical partition, which is
    /// held fixed across samples.
    bool redetect_core_per_sample = true;

    void validate() const;
};

/// One tracked statistic: empirical value, its ensemble distribution under a
/// model, and the z-score filter verdict.
struct StatReport {
    std::string name;
    std::optional<double> empirical;
    StatDistribution dist;
    ZScore z;
    bool significant = false;
};

struct ModelReport {
    ModelKind model = ModelKind::RECM;
    bool fit_converged = false;
    int fit_iterations = 0;
    double fit_residual = 0.0;
    std::string fit_message;
    std::vector<StatReport> stats;
};

struct PeriodReport {
    std::string period;
    int nodes = 0;
    std::vector<std::string> labels;
    GlobalStats global;
    std::vector<NodeStats> node_summary;
    std::optional<Bipartition> core;  // absent on graphs without links
    BlockStats blocks;
    MotifVector motifs;
    std::vector<ModelReport> models;
};

/// Names and values of all tracked statistics of a graph, in report order:
/// global 0/1/2-path aggregates, core size/error, block links, volumes and
/// reciprocities on the supplied partition, then the 13+13 motif abundances.
/// Absent entries (undefined ratios, failed detection) stay nullopt.
std::vector<std::pair<std::string, std::optional<double>>> tracked_statistics(
    const WeightedDigraph& g, const std::optional<Bipartition>& block_partition, bool redetect_core);

/// Full per-period pipeline: fit every requested model, sample its ensemble,
/// aggregate the tracked statistics and z-score the empirical values.
/// Fit failures are recorded in the report and the pipeline continues.
std::vector<PeriodReport> run_pipeline(const std::vector<std::pair<std::string, WeightedDigraph>>& graphs,
                                       const AnalysisConfig& config);

PeriodReport analyze_period(const std::string& period, const WeightedDigraph& g, const AnalysisConfig& config);

}  // namespace recinet
