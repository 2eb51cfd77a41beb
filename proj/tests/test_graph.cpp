#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "recinet/graph.hpp"

using namespace recinet;

TEST_CASE("dyad decomposition basics") {
    SUBCASE("asymmetric pair") {
        const auto d = dyad_decompose(5, 3);
        CHECK(d.w_out_nonrec == 2);
        CHECK(d.w_in_nonrec == 0);
        CHECK(d.w_rec == 3);
        CHECK(d.a_rec);
        CHECK_FALSE(d.a_out_nonrec);
    }
    SUBCASE("nil pair") {
        const auto d = dyad_decompose(0, 0);
        CHECK(d.w_out_nonrec == 0);
        CHECK(d.w_in_nonrec == 0);
        CHECK(d.w_rec == 0);
        CHECK(d.a_none);
    }
    SUBCASE("binary reciprocal pair matches binary flags") {
        const auto d = dyad_decompose(1, 1);
        CHECK(d.w_rec == 1);
        CHECK(d.w_out_nonrec == 0);
        CHECK(d.w_in_nonrec == 0);
        CHECK(d.a_rec);
    }
}

TEST_CASE("dyad decomposition properties over random dyads") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Weight> w(0, 50);
    for (int t = 0; t < 2000; ++t) {
        const Weight wij = w(rng), wji = w(rng);
        const auto d = dyad_decompose(wij, wji);
        // reconstruction is exact
        CHECK(d.w_out_nonrec + d.w_rec == wij);
        CHECK(d.w_in_nonrec + d.w_rec == wji);
        // at most one asymmetric side
        CHECK(d.w_out_nonrec * d.w_in_nonrec == 0);
        // exactly one flag
        CHECK(int(d.a_out_nonrec) + int(d.a_in_nonrec) + int(d.a_rec) + int(d.a_none) == 1);
        // binary dyads: weighted decomposition equals the binary one
        if (wij <= 1 && wji <= 1) {
            CHECK(d.w_out_nonrec == (d.a_out_nonrec ? 1 : 0));
            CHECK(d.w_in_nonrec == (d.a_in_nonrec ? 1 : 0));
            CHECK(d.w_rec == (d.a_rec ? 1 : 0));
        }
    }
}

TEST_CASE("node stats on tiny graphs") {
    SUBCASE("two nodes, asymmetric reciprocated") {
        WeightedDigraph g(2);
        g.set_weight(0, 1, 4);
        g.set_weight(1, 0, 1);
        const auto s = node_stats(g);
        CHECK(s[0].d_out == 1);
        CHECK(s[0].d_in == 1);
        CHECK(s[0].d_rec == 1);
        CHECK(s[0].s_rec == 1);
        CHECK(s[0].s_out_nonrec == 3);
        CHECK(s[0].s_in_nonrec == 0);
        CHECK(s[1].s_in_nonrec == 3);
    }
    SUBCASE("empty graph") {
        WeightedDigraph g(4);
        for (const auto& s : node_stats(g)) {
            CHECK(s.d_out == 0);
            CHECK(s.s_in == 0);
            CHECK(s.d_rec == 0);
        }
        const auto gs = global_stats(g);
        CHECK(gs.links == 0);
        CHECK_FALSE(gs.weighted_density.has_value());
        CHECK_FALSE(gs.reciprocity_ratio.has_value());
        CHECK_FALSE(gs.avg_rec_weight.has_value());
    }
    SUBCASE("three-cycle has no reciprocity") {
        WeightedDigraph g(3);
        g.set_weight(0, 1, 1);
        g.set_weight(1, 2, 1);
        g.set_weight(2, 0, 1);
        for (const auto& s : node_stats(g)) {
            CHECK(s.d_out == 1);
            CHECK(s.d_in == 1);
            CHECK(s.d_rec == 0);
            CHECK(s.s_rec == 0);
        }
    }
}

TEST_CASE("global stats on known graphs") {
    SUBCASE("complete binary digraph n=3") {
        WeightedDigraph g(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) g.set_weight(i, j, 1);
        const auto gs = global_stats(g);
        CHECK(gs.links == 6);
        CHECK(*gs.density == doctest::Approx(1.0));
        CHECK(gs.rec_links == 6);
        CHECK(*gs.reciprocity_ratio == doctest::Approx(1.0));
    }
    SUBCASE("single edge") {
        WeightedDigraph g(2);
        g.set_weight(0, 1, 7);
        const auto gs = global_stats(g);
        CHECK(gs.links == 1);
        CHECK(gs.volume == 7);
        CHECK(*gs.weighted_density == doctest::Approx(7.0));
        CHECK(gs.rec_links == 0);
        CHECK(*gs.reciprocity_ratio == doctest::Approx(0.0));
        CHECK_FALSE(gs.avg_rec_weight.has_value());
    }
    SUBCASE("ordered-pair reciprocity convention") {
        WeightedDigraph g(2);
        g.set_weight(0, 1, 4);
        g.set_weight(1, 0, 1);
        const auto gs = global_stats(g);
        CHECK(gs.rec_volume == 2);  // min counted once per ordered pair
        CHECK(gs.rec_links == 2);
        CHECK(*gs.avg_rec_weight == doctest::Approx(1.0));
    }
}

TEST_CASE("node and global stats agree on random graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedDigraph g = oracles::random_graph(12, 0.3, 9, seed);
        const auto stats = node_stats(g);
        const auto gs = global_stats(g);
        std::int64_t d_out = 0, d_in = 0, d_rec = 0;
        Weight s_out = 0, s_in = 0, s_rec = 0;
        for (const auto& s : stats) {
            d_out += s.d_out;
            d_in += s.d_in;
            d_rec += s.d_rec;
            s_out += s.s_out;
            s_in += s.s_in;
            s_rec += s.s_rec;
            // degree identities
            CHECK(s.d_out == s.d_out_nonrec + s.d_rec);
            CHECK(s.d_in == s.d_in_nonrec + s.d_rec);
            CHECK(s.s_out == s.s_out_nonrec + s.s_rec);
            CHECK(s.s_in == s.s_in_nonrec + s.s_rec);
            CHECK(s.s_out >= s.d_out);
            CHECK(s.s_in >= s.d_in);
        }
        CHECK(d_out == gs.links);
        CHECK(d_in == gs.links);
        CHECK(s_out == gs.volume);
        CHECK(s_in == gs.volume);
        CHECK(d_rec == gs.rec_links);
        CHECK(s_rec == gs.rec_volume);
        CHECK(gs.rec_links % 2 == 0);
        CHECK(gs.rec_volume <= gs.volume);
    }
}

TEST_CASE("graph invariants enforced") {
    WeightedDigraph g(3);
    CHECK_THROWS(g.set_weight(1, 1, 2));
    CHECK_THROWS(g.set_weight(0, 1, -1));
    CHECK_THROWS(WeightedDigraph(0));
}
