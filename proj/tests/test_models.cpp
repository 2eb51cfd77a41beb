#include <doctest.h>

#include <stdexcept>
#include <array>
#include <cmath>

#include "oracles.hpp"
#include "recinet/models.hpp"

using namespace recinet;
using oracles::TruncatedDyad;

namespace {

// Per-node expectations accumulated from a truncated enumeration of every
// dyad; independent of the library's closed-form expectation sums.
NodeConstraints enumerated_expectations(const ParamSet& p, Weight wmax) {
    NodeConstraints e;
    e.model = p.model;
    e.n = p.n;
    e.d_out.assign(p.n, 0.0);
    e.d_in.assign(p.n, 0.0);
    e.d_rec.assign(p.n, 0.0);
    e.s_out.assign(p.n, 0.0);
    e.s_in.assign(p.n, 0.0);
    e.s_rec.assign(p.n, 0.0);
    for (int i = 0; i < p.n; ++i) {
        for (int j = i + 1; j < p.n; ++j) {
            const TruncatedDyad dist(i, j, p, wmax);
            for (Weight a = 0; a <= wmax; ++a) {
                for (Weight b = 0; b <= wmax; ++b) {
                    const double pr = dist(a, b);
                    const auto d = dyad_decompose(a, b);
                    if (p.model == ModelKind::DECM) {
                        e.d_out[i] += pr * (a > 0);
                        e.d_in[j] += pr * (a > 0);
                        e.d_out[j] += pr * (b > 0);
                        e.d_in[i] += pr * (b > 0);
                        e.s_out[i] += pr * static_cast<double>(a);
                        e.s_in[j] += pr * static_cast<double>(a);
                        e.s_out[j] += pr * static_cast<double>(b);
                        e.s_in[i] += pr * static_cast<double>(b);
                    } else {
                        e.d_out[i] += pr * d.a_out_nonrec;
                        e.d_in[j] += pr * d.a_out_nonrec;
                        e.d_in[i] += pr * d.a_in_nonrec;
                        e.d_out[j] += pr * d.a_in_nonrec;
                        e.d_rec[i] += pr * d.a_rec;
                        e.d_rec[j] += pr * d.a_rec;
                        e.s_out[i] += pr * static_cast<double>(d.w_out_nonrec);
                        e.s_in[j] += pr * static_cast<double>(d.w_out_nonrec);
                        e.s_in[i] += pr * static_cast<double>(d.w_in_nonrec);
                        e.s_out[j] += pr * static_cast<double>(d.w_in_nonrec);
                        e.s_rec[i] += pr * static_cast<double>(d.w_rec);
                        e.s_rec[j] += pr * static_cast<double>(d.w_rec);
                    }
                }
            }
        }
    }
    return e;
}

}  // namespace

TEST_CASE("parameter counts per model") {
    CHECK(param_count(ModelKind::DECM, 100) == 400);
    CHECK(param_count(ModelKind::RWCM, 100) == 300);
    CHECK(param_count(ModelKind::RECM, 100) == 600);
    CHECK(param_count(ModelKind::RECM, 1) == 6);
}

TEST_CASE("constraints from graph") {
    WeightedDigraph g(2);
    g.set_weight(0, 1, 1);
    g.set_weight(1, 0, 1);
    SUBCASE("binary reciprocal pair, RECM") {
        const auto c = constraints_from_graph(g, ModelKind::RECM);
        CHECK(c.d_rec[0] == 1);
        CHECK(c.s_rec[0] == 1);
        CHECK(c.d_out[0] == 0);
        CHECK(c.s_out[0] == 0);
        CHECK(c.d_in[0] == 0);
    }
    SUBCASE("same graph, DECM") {
        const auto c = constraints_from_graph(g, ModelKind::DECM);
        CHECK(c.d_out[0] == 1);
        CHECK(c.d_in[0] == 1);
        CHECK(c.s_out[0] == 1);
        CHECK(c.s_in[0] == 1);
    }
}

TEST_CASE("constraints match definitional sums on a random graph") {
    const WeightedDigraph g = oracles::random_graph(10, 0.4, 7, 99);
    for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
        const auto c = constraints_from_graph(g, model);
        std::vector<double> d_out(10, 0), d_in(10, 0), d_rec(10, 0), s_out(10, 0), s_in(10, 0), s_rec(10, 0);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                if (i == j) continue;
                const auto d = dyad_decompose(g.weight(i, j), g.weight(j, i));
                if (model == ModelKind::DECM) {
                    d_out[i] += g.weight(i, j) > 0;
                    d_in[i] += g.weight(j, i) > 0;
                    s_out[i] += static_cast<double>(g.weight(i, j));
                    s_in[i] += static_cast<double>(g.weight(j, i));
                } else {
                    d_out[i] += d.a_out_nonrec;
                    d_in[i] += d.a_in_nonrec;
                    d_rec[i] += d.a_rec;
                    s_out[i] += static_cast<double>(d.w_out_nonrec);
                    s_in[i] += static_cast<double>(d.w_in_nonrec);
                    s_rec[i] += static_cast<double>(d.w_rec);
                }
            }
        for (int i = 0; i < 10; ++i) {
            if (model != ModelKind::RWCM) {
                CHECK(c.d_out[i] == d_out[i]);
                CHECK(c.d_in[i] == d_in[i]);
            }
            CHECK(c.s_out[i] == s_out[i]);
            CHECK(c.s_in[i] == s_in[i]);
            if (model == ModelKind::RECM) {
                CHECK(c.d_rec[i] == d_rec[i]);
                CHECK(c.s_rec[i] == s_rec[i]);
            }
        }
    }
}

TEST_CASE("six case probabilities") {
    SUBCASE("vanishing weight multipliers kill all links") {
        ParamSet p = ParamSet::uniform(ModelKind::RECM, 2, 1.0, 1e-9);
        const auto c = recm_case_probabilities(0, 1, p);
        CHECK(c.p_none == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(c.p_out < 1e-8);
        CHECK(c.p_rec() < 1e-8);
    }
    SUBCASE("node-symmetric parameters balance out and in") {
        ParamSet p = ParamSet::uniform(ModelKind::RECM, 3, 0.8, 0.4);
        const auto c = recm_case_probabilities(0, 1, p);
        CHECK(c.p_out == doctest::Approx(c.p_in).epsilon(1e-14));
        CHECK(c.p_rec_out == doctest::Approx(c.p_rec_in).epsilon(1e-14));
    }
    SUBCASE("uniform half parameters match truncated enumeration") {
        ParamSet p = ParamSet::uniform(ModelKind::RECM, 2, 0.5, 0.5);
        const TruncatedDyad dist(0, 1, p, 64);  // tail < 1e-15 at products 0.25
        const auto mass = dist.case_mass();
        const auto c = recm_case_probabilities(0, 1, p);
        CHECK(c.p_none == doctest::Approx(mass[0]).epsilon(1e-12));
        CHECK(c.p_out == doctest::Approx(mass[1]).epsilon(1e-12));
        CHECK(c.p_in == doctest::Approx(mass[2]).epsilon(1e-12));
        CHECK(c.p_rec_equal == doctest::Approx(mass[3]).epsilon(1e-12));
        CHECK(c.p_rec_out == doctest::Approx(mass[4]).epsilon(1e-12));
        CHECK(c.p_rec_in == doctest::Approx(mass[5]).epsilon(1e-12));
    }
    SUBCASE("probabilities sum to one on random draws") {
        for (std::uint64_t seed = 0; seed < 10000; ++seed) {
            const ParamSet p = oracles::random_params(ModelKind::RECM, 2, 0.9, seed);
            const auto c = recm_case_probabilities(0, 1, p);
            const double sum = c.p_none + c.p_out + c.p_in + c.p_rec_equal + c.p_rec_out + c.p_rec_in;
            REQUIRE(std::abs(sum - 1.0) < 1e-12);
        }
    }
    SUBCASE("dyad normalization is symmetric in the pair") {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const ParamSet p = oracles::random_params(ModelKind::RECM, 4, 0.8, seed);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    CHECK(recm_dyad(i, j, p).X == doctest::Approx(recm_dyad(j, i, p).X).epsilon(1e-14));
                }
        }
    }
    SUBCASE("normalization term equals its factored closed form") {
        // X as implemented is the sum of the six case numerators; the factored
        // form multiplies out the non-reciprocated and reciprocated parts.
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const ParamSet p = oracles::random_params(ModelKind::RECM, 2, 0.9, seed);
            const RecmDyad d = recm_dyad(0, 1, p);
            const double closed =
                (1.0 - d.z) * ((1.0 - d.y) * (1.0 - d.x + d.a * d.x) + (1.0 - d.x) * d.b * d.y) +
                d.z * d.c * (1.0 - d.x * d.y);
            CHECK(d.X == doctest::Approx(closed).epsilon(1e-13));
        }
    }
    SUBCASE("divergent products are rejected") {
        ParamSet p = ParamSet::uniform(ModelKind::RECM, 2, 1.0, 1.0);
        CHECK_THROWS_AS(recm_case_probabilities(0, 1, p), std::domain_error);
    }
}

TEST_CASE("dyad probability closed forms") {
    const ParamSet p = oracles::random_params(ModelKind::RECM, 2, 0.6, 5);
    const RecmDyad d = recm_dyad(0, 1, p);
    SUBCASE("empty dyad is the first case") {
        CHECK(dyad_probability(0, 1, 0, 0, p) == d.p.p_none);
    }
    SUBCASE("one-way dyad is a shifted geometric on top of its case mass") {
        for (Weight w = 1; w <= 5; ++w)
            CHECK(dyad_probability(0, 1, w, 0, p) ==
                  doctest::Approx(d.p.p_out * std::pow(d.x, double(w - 1)) * (1 - d.x)).epsilon(1e-14));
    }
    SUBCASE("pointwise match against Boltzmann enumeration, all models") {
        for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const ParamSet q = oracles::random_params(model, 2, 0.5, seed);
                const TruncatedDyad dist(0, 1, q, 64);
                for (Weight a = 0; a <= 6; ++a)
                    for (Weight b = 0; b <= 6; ++b)
                        CHECK(dyad_probability(0, 1, a, b, q) ==
                              doctest::Approx(dist(a, b)).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("truncated normalization for all models") {
    for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const ParamSet p = oracles::random_params(model, 3, 0.5, seed ^ 0xabc);
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    const Weight wmax = 40;
                    double total = 0;
                    for (Weight a = 0; a <= wmax; ++a)
                        for (Weight b = 0; b <= wmax; ++b) total += dyad_probability(i, j, a, b, p);
                    // analytic geometric tail bound: a weight above wmax needs
                    // one of its reciprocity components above wmax/2 (the
                    // weight IS the component for DECM edges)
                    const double expo = model == ModelKind::DECM ? double(wmax) : double(wmax / 2);
                    double bound = 0;
                    for (double q :
                         {p.l_out[i] * p.l_in[j], p.l_in[i] * p.l_out[j],
                          model == ModelKind::DECM ? 0.0 : p.l_rec[i] * p.l_rec[j]})
                        if (q > 0) bound += 2.0 * std::pow(q, expo);
                    CHECK(std::abs(total - 1.0) <= bound + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("RECM with unit topological multipliers reduces to RWCM") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        ParamSet recm = oracles::random_params(ModelKind::RECM, 3, 0.7, seed);
        recm.k_out.assign(3, 1.0);
        recm.k_in.assign(3, 1.0);
        recm.k_rec.assign(3, 1.0);
        ParamSet rwcm;
        rwcm.model = ModelKind::RWCM;
        rwcm.n = 3;
        rwcm.l_out = recm.l_out;
        rwcm.l_in = recm.l_in;
        rwcm.l_rec = recm.l_rec;
        for (Weight a = 0; a <= 4; ++a)
            for (Weight b = 0; b <= 4; ++b)
                CHECK(dyad_probability(0, 1, a, b, recm) ==
                      doctest::Approx(dyad_probability(0, 1, a, b, rwcm)).epsilon(1e-13));
    }
}

TEST_CASE("expected constraints") {
    SUBCASE("single dyad identities, RECM") {
        const ParamSet p = oracles::random_params(ModelKind::RECM, 2, 0.6, 11);
        const auto c = recm_case_probabilities(0, 1, p);
        const auto e = expected_constraints(p);
        // One-way degree expectation is the one-way case mass alone; the
        // reciprocated-with-surplus cases count toward the reciprocated degree.
        CHECK(e.d_out[0] == doctest::Approx(c.p_out).epsilon(1e-13));
        CHECK(e.d_in[0] == doctest::Approx(c.p_in).epsilon(1e-13));
        CHECK(e.d_rec[0] == doctest::Approx(c.p_rec()).epsilon(1e-13));
    }
    SUBCASE("expectations match truncated enumeration, all models") {
        for (ModelKind model : {ModelKind::DECM, ModelKind::RWCM, ModelKind::RECM}) {
            const ParamSet p = oracles::random_params(model, 4, 0.45, 21);
            const auto oracle = enumerated_expectations(p, 64);
            const auto e = expected_constraints(p);
            for (int i = 0; i < 4; ++i) {
                if (model != ModelKind::RWCM) {
                    CHECK(e.d_out[i] == doctest::Approx(oracle.d_out[i]).epsilon(1e-11));
                    CHECK(e.d_in[i] == doctest::Approx(oracle.d_in[i]).epsilon(1e-11));
                }
                CHECK(e.s_out[i] == doctest::Approx(oracle.s_out[i]).epsilon(1e-11));
                CHECK(e.s_in[i] == doctest::Approx(oracle.s_in[i]).epsilon(1e-11));
                if (model == ModelKind::RECM) {
                    CHECK(e.d_rec[i] == doctest::Approx(oracle.d_rec[i]).epsilon(1e-11));
                    CHECK(e.s_rec[i] == doctest::Approx(oracle.s_rec[i]).epsilon(1e-11));
                }
                if (model != ModelKind::DECM)
                    CHECK(e.s_rec[i] == doctest::Approx(oracle.s_rec[i]).epsilon(1e-11));
            }
        }
    }
    SUBCASE("exchangeable parameters give exchangeable expectations") {
        const ParamSet p = ParamSet::uniform(ModelKind::DECM, 5, 0.7, 0.45);
        const auto e = expected_constraints(p);
        for (int i = 1; i < 5; ++i) {
            CHECK(e.d_out[i] == doctest::Approx(e.d_out[0]).epsilon(1e-14));
            CHECK(e.s_in[i] == doctest::Approx(e.s_in[0]).epsilon(1e-14));
        }
    }
}

TEST_CASE("log likelihood") {
    SUBCASE("single-dyad graph") {
        WeightedDigraph g(2);
        g.set_weight(0, 1, 3);
        g.set_weight(1, 0, 1);
        const ParamSet p = oracles::random_params(ModelKind::RECM, 2, 0.6, 3);
        CHECK(log_likelihood(g, p) == doctest::Approx(std::log(dyad_probability(0, 1, 3, 1, p))));
    }
    SUBCASE("covariance Jacobian matches finite differences of expectations") {
        // d E[x_f] / d log m_g = Cov(x_f, x_g); probe a few directions.
        const ParamSet base = oracles::random_params(ModelKind::RECM, 3, 0.5, 17);
        const auto mom = dyad_moments(0, 1, base);
        const double h = 1e-6;
        // bump log k_out[0] and watch E[a_out(0,1)]
        ParamSet up = base, dn = base;
        up.k_out[0] *= std::exp(h);
        dn.k_out[0] *= std::exp(-h);
        const double fd =
            (recm_case_probabilities(0, 1, up).p_out - recm_case_probabilities(0, 1, dn).p_out) / (2 * h);
        CHECK(mom.cov[0][0] == doctest::Approx(fd).epsilon(1e-5));
        // bump log l_rec[0] and watch E[w_out(0,1)] (cross covariance)
        ParamSet up2 = base, dn2 = base;
        up2.l_rec[0] *= std::exp(h);
        dn2.l_rec[0] *= std::exp(-h);
        auto mean_wout = [](const ParamSet& q) {
            const RecmDyad d = recm_dyad(0, 1, q);
            return (d.p.p_out + d.p.p_rec_out) / (1 - d.x);
        };
        const double fd2 = (mean_wout(up2) - mean_wout(dn2)) / (2 * h);
        CHECK(mom.cov[3][5] == doctest::Approx(fd2).epsilon(1e-5));
    }
}
