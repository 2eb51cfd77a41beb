#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "recinet/analysis.hpp"

using namespace recinet;

namespace {

AnalysisConfig small_config() {
    AnalysisConfig cfg;
    cfg.samples = 150;
    cfg.seed = 2026;
    cfg.tolerance = 1e-4;
    return cfg;
}

const StatReport& find_stat(const ModelReport& mr, const std::string& name) {
    for (const StatReport& sr : mr.stats)
        if (sr.name == name) return sr;
    REQUIRE_MESSAGE(false, "statistic not found: ", name);
    static StatReport dummy;
    return dummy;
}

}  // namespace

TEST_CASE("tracked statistics names and block pinning") {
    const WeightedDigraph g = oracles::random_graph(7, 0.4, 5, 321);
    const Bipartition part = detect_core_sorted(g);
    const auto stats = tracked_statistics(g, part, true);
    REQUIRE(stats.size() == 9 + 8 + 6 + 26);
    CHECK(stats[0].first == "nodes");
    CHECK(*stats[0].second == 7.0);
    CHECK(stats[1].first == "links");
    CHECK(*stats[1].second == static_cast<double>(global_stats(g).links));
    CHECK(stats.back().first == "motif_w_13");
    // without a partition the block section disappears
    const auto bare = tracked_statistics(g, std::nullopt, true);
    CHECK(bare.size() == 9 + 26);
}

TEST_CASE("pipeline on a small period") {
    const WeightedDigraph g = oracles::random_graph(8, 0.45, 6, 5150);
    AnalysisConfig cfg = small_config();
    const PeriodReport report = analyze_period("2008Q3", g, cfg);
    REQUIRE(report.models.size() == 3);
    CHECK(report.nodes == 8);
    REQUIRE(report.core.has_value());

    for (const ModelReport& mr : report.models) {
        INFO("model ", model_name(mr.model));
        REQUIRE(mr.fit_converged);
        REQUIRE_FALSE(mr.stats.empty());

        // node count is preserved exactly: a point mass
        const StatReport& nodes = find_stat(mr, "nodes");
        CHECK(nodes.dist.std_dev == 0.0);
        CHECK(nodes.dist.mean == 8.0);
        CHECK(nodes.z.status == ZStatus::Undefined);
        CHECK_FALSE(nodes.significant);

        // volume is a constrained statistic in all three models
        const StatReport& volume = find_stat(mr, "volume");
        REQUIRE(volume.z.status == ZStatus::Ok);
        CHECK(std::abs(volume.z.value) < 4.0);

        if (mr.model != ModelKind::RWCM) {
            const StatReport& links = find_stat(mr, "links");
            REQUIRE(links.z.status == ZStatus::Ok);
            CHECK(std::abs(links.z.value) < 4.0);
        }
        // percentile ordering and significance flags
        for (const StatReport& sr : mr.stats) {
            if (sr.dist.p2_5 && sr.dist.p97_5) CHECK(*sr.dist.p2_5 <= *sr.dist.p97_5);
            const bool flag = sr.z.status == ZStatus::Degenerate ||
                              (sr.z.status == ZStatus::Ok && std::abs(sr.z.value) > cfg.significance);
            CHECK(sr.significant == flag);
        }
    }
}

TEST_CASE("RWCM over-connects sparse graphs") {
    // the dense-bias failure: strength-only constraints put the ensemble
    // mass on far denser topologies than the data
    const WeightedDigraph g = oracles::random_graph(16, 0.2, 8, 99);
    AnalysisConfig cfg = small_config();
    cfg.models = {ModelKind::RWCM};
    const PeriodReport report = analyze_period("p", g, cfg);
    REQUIRE(report.models.size() == 1);
    REQUIRE(report.models[0].fit_converged);
    const StatReport& links = find_stat(report.models[0], "links");
    REQUIRE(links.z.status == ZStatus::Ok);
    CHECK(links.dist.mean > *links.empirical);
    CHECK(links.z.value < -4.0);
    CHECK(links.significant);
}

TEST_CASE("pipeline determinism and thread independence") {
    const WeightedDigraph g = oracles::random_graph(7, 0.4, 5, 42);
    AnalysisConfig cfg = small_config();
    cfg.samples = 60;
    cfg.models = {ModelKind::DECM, ModelKind::RECM};
    const PeriodReport a = analyze_period("x", g, cfg);
    const PeriodReport b = analyze_period("x", g, cfg);
    AnalysisConfig threaded = cfg;
    threaded.threads = 4;
    const PeriodReport c = analyze_period("x", g, threaded);
    for (std::size_t m = 0; m < a.models.size(); ++m) {
        REQUIRE(a.models[m].stats.size() == b.models[m].stats.size());
        REQUIRE(a.models[m].stats.size() == c.models[m].stats.size());
        for (std::size_t t = 0; t < a.models[m].stats.size(); ++t) {
            const StatReport& x = a.models[m].stats[t];
            const StatReport& y = b.models[m].stats[t];
            const StatReport& z = c.models[m].stats[t];
            CHECK(x.dist.mean == y.dist.mean);
            CHECK(x.dist.std_dev == y.dist.std_dev);
            CHECK(x.dist.mean == z.dist.mean);
            CHECK(x.dist.std_dev == z.dist.std_dev);
            CHECK(x.z.value == z.z.value);
        }
    }
}

TEST_CASE("empty period keeps the pipeline alive") {
    // no links: every channel pins, detection is skipped, models still report
    WeightedDigraph g(4);
    AnalysisConfig cfg = small_config();
    cfg.samples = 10;
    const PeriodReport report = analyze_period("empty", g, cfg);
    CHECK_FALSE(report.core.has_value());
    REQUIRE(report.models.size() == 3);
    for (const ModelReport& mr : report.models) CHECK(mr.fit_converged);  // trivially, all pinned
}

TEST_CASE("config validation") {
    AnalysisConfig cfg;
    cfg.samples = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = AnalysisConfig{};
    cfg.tolerance = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
