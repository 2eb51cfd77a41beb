#include "recinet/analysis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace recinet {

namespace {

std::string motif_stat_name(const char* variant, int m) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "motif_%s_%02d", variant, m + 1);
    return buf;
}

void append_block(std::vector<std::pair<std::string, std::optional<double>>>& out, const char* name,
                  const BlockEntry& e) {
    out.emplace_back(std::string("block_") + name + "_links", static_cast<double>(e.links));
    out.emplace_back(std::string("block_") + name + "_volume", static_cast<double>(e.volume));
}

}  // namespace

void AnalysisConfig::validate() const {
    if (samples < 2) throw std::invalid_argument("config: samples must be >= 2");
    if (!(tolerance > 0)) throw std::invalid_argument("config: tolerance must be positive");
    if (models.empty()) throw std::invalid_argument("config: at least one model required");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

std::vector<std::pair<std::string, std::optional<double>>> tracked_statistics(
    const WeightedDigraph& g, const std::optional<Bipartition>& block_partition, bool redetect_core) {
    std::vector<std::pair<std::string, std::optional<double>>> out;
    out.reserve(9 + 8 + 8 + 26);

    const GlobalStats gs = global_stats(g);
    out.emplace_back("nodes", static_cast<double>(gs.nodes));
    out.emplace_back("links", static_cast<double>(gs.links));
    out.emplace_back("volume", static_cast<double>(gs.volume));
    out.emplace_back("rec_links", static_cast<double>(gs.rec_links));
    out.emplace_back("rec_volume", static_cast<double>(gs.rec_volume));
    out.emplace_back("reciprocity_ratio", gs.reciprocity_ratio);
    out.emplace_back("avg_rec_weight", gs.avg_rec_weight);

    std::optional<double> core_size, core_error;
    if (redetect_core && gs.links > 0 && g.node_count() >= 2) {
        const Bipartition p = detect_core_sorted(g);
        core_size = static_cast<double>(p.core.size());
        core_error = p.error;
    } else if (!redetect_core && block_partition) {
        core_size = static_cast<double>(block_partition->core.size());
        core_error = block_partition->error;
    }
    out.emplace_back("core_size", core_size);
    out.emplace_back("core_error", core_error);

    if (block_partition) {
        const BlockStats bs = block_stats(g, *block_partition);
        append_block(out, "cc", bs.cc);
        append_block(out, "cp", bs.cp);
        append_block(out, "pc", bs.pc);
        append_block(out, "pp", bs.pp);
        out.emplace_back("block_cc_rec_links", static_cast<double>(bs.cc_rec_links));
        out.emplace_back("block_cc_rec_volume", static_cast<double>(bs.cc_rec_volume));
        out.emplace_back("block_pp_rec_links", static_cast<double>(bs.pp_rec_links));
        out.emplace_back("block_pp_rec_volume", static_cast<double>(bs.pp_rec_volume));
        out.emplace_back("block_cross_rec_links", static_cast<double>(bs.cross_rec_links));
        out.emplace_back("block_cross_rec_volume", static_cast<double>(bs.cross_rec_volume));
    }

    const MotifVector mv = motif_census(g);
    for (int m = 0; m < 13; ++m)
        out.emplace_back(motif_stat_name("u", m), static_cast<double>(mv.unweighted[m]));
    for (int m = 0; m < 13; ++m) out.emplace_back(motif_stat_name("w", m), mv.weighted[m]);
    return out;
}

PeriodReport analyze_period(const std::string& period, const WeightedDigraph& g, const AnalysisConfig& config) {
    config.validate();
    PeriodReport report;
    report.period = period;
    report.nodes = g.node_count();
    report.labels = g.labels();
    report.global = global_stats(g);
    report.node_summary = node_stats(g);
    if (report.global.links > 0 && g.node_count() >= 2) report.core = detect_core_sorted(g);
    if (report.core) report.blocks = block_stats(g, *report.core);
    report.motifs = motif_census(g);

    const auto empirical = tracked_statistics(g, report.core, /*redetect_core=*/true);

    for (ModelKind model : config.models) {
        ModelReport mr;
        mr.model = model;

        FitOptions fopt;
        fopt.tolerance = config.tolerance;
        fopt.max_iterations = config.max_iterations;
        FitReport fr;
        try {
            fr = fit(constraints_from_graph(g, model), fopt);
        } catch (const std::exception& e) {
            mr.fit_message = std::string("fit failed: ") + e.what();
            report.models.push_back(std::move(mr));
            continue;
        }
        mr.fit_converged = fr.converged;
        mr.fit_iterations = fr.iterations;
        mr.fit_residual = fr.residual_sup_norm;
        mr.fit_message = fr.message;
        if (!fr.converged) {
            report.models.push_back(std::move(mr));
            continue;
        }

        // Per-sample statistic values land in per-sample slots, so any worker
        // count produces the same aggregation.
        const std::size_t nstats = empirical.size();
        std::vector<std::vector<std::optional<double>>> slots(
            static_cast<std::size_t>(config.samples));
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int s = next.fetch_add(1);
                if (s >= config.samples) break;
                const WeightedDigraph sample =
                    sample_graph(fr.params, config.seed, static_cast<std::uint64_t>(s));
                auto vals = tracked_statistics(sample, report.core, config.redetect_core_per_sample);
                std::vector<std::optional<double>> row(nstats);
                for (std::size_t t = 0; t < nstats; ++t) row[t] = vals[t].second;
                slots[static_cast<std::size_t>(s)] = std::move(row);
            }
        };
        if (config.threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < config.threads; ++t) pool.emplace_back(worker);
            for (std::thread& th : pool) th.join();
        }

        std::vector<StatAccumulator> acc(nstats, StatAccumulator(true));
        for (int s = 0; s < config.samples; ++s)
            for (std::size_t t = 0; t < nstats; ++t)
                if (slots[static_cast<std::size_t>(s)][t]) acc[t].add(*slots[static_cast<std::size_t>(s)][t]);

        for (std::size_t t = 0; t < nstats; ++t) {
            StatReport sr;
            sr.name = empirical[t].first;
            sr.empirical = empirical[t].second;
            sr.dist = acc[t].distribution(sr.name, config.percentile_lo, config.percentile_hi);
            if (sr.empirical) sr.z = z_score(*sr.empirical, acc[t]);
            sr.significant = sr.z.status == ZStatus::Degenerate ||
                             (sr.z.status == ZStatus::Ok && std::abs(sr.z.value) > config.significance);
            mr.stats.push_back(std::move(sr));
        }
        report.models.push_back(std::move(mr));
    }
    return report;
}

std::vector<PeriodReport> run_pipeline(const std::vector<std::pair<std::string, WeightedDigraph>>& graphs,
                                       const AnalysisConfig& config) {
    std::vector<PeriodReport> reports;
    reports.reserve(graphs.size());
    for (const auto& [period, g] : graphs) reports.push_back(analyze_period(period, g, config));
    return reports;
}

}  // namespace recinet
