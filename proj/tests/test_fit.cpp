#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "oracles.hpp"
#include "recinet/fit.hpp"

using namespace recinet;

namespace {

double sup_residual(const NodeConstraints& targets, const NodeConstraints& expect) {
    double worst = 0;
    auto scan = [&](const std::vector<double>& t, const std::vector<double>& e) {
        for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(t[i] - e[i]));
    };
    scan(targets.d_out, expect.d_out);
    scan(targets.d_in, expect.d_in);
    scan(targets.d_rec, expect.d_rec);
    scan(targets.s_out, expect.s_out);
    scan(targets.s_in, expect.s_in);
    scan(targets.s_rec, expect.s_rec);
    return worst;
}

std::vector<std::vector<double>*> all_families(ParamSet& p) {
    return {&p.k_out, &p.k_in, &p.k_rec, &p.l_out, &p.l_in, &p.l_rec};
}

double sup_abs(const NodeConstraints& c) {
    double worst = 0;
    for (const auto* v : {&c.d_out, &c.d_in, &c.d_rec, &c.s_out, &c.s_in, &c.s_rec})
        for (double x : *v) worst = std::max(worst, std::abs(x));
    return worst;
}

}  // namespace

TEST_CASE("all-zero targets pin everything") {
    for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
        WeightedDigraph g(4);  // empty
        const auto report = fit(constraints_from_graph(g, model));
        CHECK(report.converged);
        CHECK(report.residual_sup_norm == 0.0);
        const auto e = expected_constraints(report.params);
        for (double v : e.s_out) CHECK(v == 0.0);
        for (double v : e.s_in) CHECK(v == 0.0);
    }
}

TEST_CASE("node-exchangeable targets give node-exchangeable multipliers") {
    // circulant: i -> i+1 and i -> i+2, all weights 3
    const int n = 6;
    WeightedDigraph g(n);
    for (int i = 0; i < n; ++i) {
        g.set_weight(i, (i + 1) % n, 3);
        g.set_weight(i, (i + 2) % n, 3);
    }
    for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
        const auto report = fit(constraints_from_graph(g, model));
        REQUIRE(report.converged);
        ParamSet p = report.params;
        for (auto* vec : all_families(p)) {
            if (vec->empty()) continue;
            for (int i = 1; i < n; ++i) CHECK((*vec)[i] == doctest::Approx((*vec)[0]).epsilon(1e-9));
        }
    }
}

TEST_CASE("fit round-trip on a random 20-node graph") {
    const WeightedDigraph g = oracles::random_graph(20, 0.3, 12, 4242);
    for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
        const auto targets = constraints_from_graph(g, model);
        FitOptions opt;
        opt.tolerance = 1e-4;
        const auto report = fit(targets, opt);
        CHECK(report.converged);
        CHECK(report.residual_sup_norm <= 1e-4);
        const auto e = expected_constraints(report.params);
        CHECK(sup_residual(targets, e) <= 1e-4);
        // residual vector in the report agrees with a fresh evaluation
        CHECK(sup_abs(report.residuals) == doctest::Approx(report.residual_sup_norm).epsilon(1e-12));
    }
}

TEST_CASE("fit is deterministic") {
    const WeightedDigraph g = oracles::random_graph(10, 0.35, 8, 77);
    const auto targets = constraints_from_graph(g, ModelKind::RECM);
    const auto a = fit(targets);
    const auto b = fit(targets);
    REQUIRE(a.iterations == b.iterations);
    REQUIRE(a.residual_sup_norm == b.residual_sup_norm);
    for (std::size_t i = 0; i < a.params.l_out.size(); ++i) {
        CHECK(a.params.l_out[i] == b.params.l_out[i]);
        CHECK(a.params.k_rec[i] == b.params.k_rec[i]);
    }
}

TEST_CASE("zero-target channels are pinned exactly") {
    // node 3 is isolated; node 0 has only a reciprocated dyad with surplus
    WeightedDigraph g(4);
    g.set_weight(0, 1, 5);
    g.set_weight(1, 0, 3);
    g.set_weight(1, 2, 2);
    g.set_weight(2, 1, 2);
    const auto targets = constraints_from_graph(g, ModelKind::RECM);
    CHECK(targets.d_out[0] == 0);  // the (5,3) dyad is reciprocated
    CHECK(targets.s_out[0] == 2);  // but carries an out-surplus
    const auto report = fit(targets);
    CHECK(report.converged);
    CHECK(report.params.k_out[0] == 0.0);  // one-way out-degree target 0
    CHECK(report.params.l_out[0] > 0.0);   // surplus weight channel stays live
    for (double v : {report.params.k_out[3], report.params.l_out[3], report.params.k_rec[3],
                     report.params.l_rec[3]})
        CHECK(v == 0.0);
    const auto e = expected_constraints(report.params);
    CHECK(e.d_out[0] == 0.0);
    CHECK(e.s_out[0] == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("infeasible targets are rejected with a diagnostic") {
    NodeConstraints t;
    t.model = ModelKind::RECM;
    t.n = 2;
    t.d_out = {0, 0};
    t.d_in = {0, 0};
    t.d_rec = {0, 0};
    t.s_out = {2, 0};  // out-surplus with no link to sit on
    t.s_in = {0, 2};
    t.s_rec = {0, 0};
    CHECK_THROWS_AS(fit(t), std::invalid_argument);

    NodeConstraints t2 = t;
    t2.s_out = {0, 0};
    t2.s_in = {0, 0};
    t2.d_rec = {1, 1};
    t2.s_rec = {0, 0};  // reciprocated link with zero reciprocated weight
    CHECK_THROWS_AS(fit(t2), std::invalid_argument);
}

TEST_CASE("exhausted iteration budget reports failure instead of throwing") {
    // complete binary digraph: degree targets sit on the boundary, so the
    // multipliers must run far out before the residual falls
    WeightedDigraph g(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) g.set_weight(i, j, 1);
    FitOptions opt;
    opt.max_iterations = 3;
    opt.tolerance = 1e-10;
    const auto report = fit(constraints_from_graph(g, ModelKind::DECM), opt);
    CHECK_FALSE(report.converged);
    CHECK(report.residual_sup_norm > 0);
    CHECK(report.iterations <= 3);
    // with a real budget the same targets are reachable to tolerance
    FitOptions full;
    full.tolerance = 1e-6;
    CHECK(fit(constraints_from_graph(g, ModelKind::DECM), full).converged);
}

TEST_CASE("log-likelihood gradient equals target minus expectation") {
    for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
        const WeightedDigraph g = oracles::random_graph(5, 0.5, 6, 31);
        const auto stats = constraints_from_graph(g, model);
        const ParamSet p = oracles::random_params(model, 5, 0.4, 5151);
        const auto expect = expected_constraints(p);
        const double h = 1e-6;

        auto check_family = [&](const std::vector<double>& target, const std::vector<double>& e,
                                std::vector<double> ParamSet::* member) {
            if (target.empty()) return;
            for (int i = 0; i < 5; ++i) {
                ParamSet up = p, dn = p;
                (up.*member)[i] *= std::exp(h);
                (dn.*member)[i] *= std::exp(-h);
                const double fd = (log_likelihood(g, up) - log_likelihood(g, dn)) / (2 * h);
                const double analytic = target[i] - e[i];
                CHECK(std::abs(fd - analytic) <= 1e-5 * std::max(1.0, std::abs(analytic)));
            }
        };
        check_family(stats.d_out, expect.d_out, &ParamSet::k_out);
        check_family(stats.d_in, expect.d_in, &ParamSet::k_in);
        check_family(stats.d_rec, expect.d_rec, &ParamSet::k_rec);
        check_family(stats.s_out, expect.s_out, &ParamSet::l_out);
        check_family(stats.s_in, expect.s_in, &ParamSet::l_in);
        check_family(stats.s_rec, expect.s_rec, &ParamSet::l_rec);
    }
}

TEST_CASE("fitted parameters are a local likelihood maximum") {
    const WeightedDigraph g = oracles::random_graph(8, 0.4, 5, 321);
    for (ModelKind model : {ModelKind::DECM, ModelKind::RECM}) {
        const auto report = fit(constraints_from_graph(g, model));
        REQUIRE(report.converged);
        const double base = log_likelihood(g, report.params);
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> sign(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            ParamSet q = report.params;
            for (auto* vec : {&q.k_out, &q.k_in, &q.k_rec, &q.l_out, &q.l_in, &q.l_rec})
                for (double& v : *vec)
                    if (v > 0) v *= 1.0 + 0.01 * sign(rng);
            CHECK(log_likelihood(g, q) <= base + 1e-9);
        }
    }
}
