#include "spread/hypergraph.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spread/io.hpp"

using namespace spread;

TEST(Hypergraph, CanonicalizesAndValidates) {
    Hypergraph h(5, 3, {{2, 1, 0}, {0, 1, 2}, {4, 3, 2}});
    EXPECT_EQ(h.num_edges(), 2u);
    EXPECT_EQ(h.edge_vec(0), (std::vector<Vertex>{0, 1, 2}));
    EXPECT_THROW(Hypergraph(3, 3, {{0, 1, 5}}), std::invalid_argument);
    EXPECT_THROW(Hypergraph(5, 3, {{0, 1, 1}}), std::invalid_argument);
}

TEST(Hypergraph, MinEllDegreeOnCompleteHost) {
    // Complete 3-uniform on 6 vertices: every vertex lies in C(5,2) = 10 edges.
    auto h = complete_hypergraph(6, 3);
    auto d = min_ell_degree(h, 1);
    EXPECT_EQ(d.value, 10u);
}

TEST(Hypergraph, MinEllDegreeIsolatedVertexWitness) {
    Hypergraph h(6, 3, {{1, 2, 3}, {1, 2, 4}, {3, 4, 5}});
    auto d = min_ell_degree(h, 1);
    EXPECT_EQ(d.value, 0u);
    EXPECT_EQ(d.witness, (std::vector<Vertex>{0}));
}

TEST(Hypergraph, MinEllDegreeMatchesBruteForce) {
    RngStream rng(2024, 0);
    auto h = random_hypergraph(8, 3, 30, rng);
    for (int ell = 1; ell <= 2; ++ell) {
        auto d = min_ell_degree(h, ell);
        EXPECT_EQ(d.value, oracles::min_ell_degree(h, ell));
        EXPECT_EQ(d.value, oracles::degree_of_set(h, d.witness));
    }
    EXPECT_THROW(min_ell_degree(h, 0), std::invalid_argument);
    EXPECT_THROW(min_ell_degree(h, 3), std::invalid_argument);
}

TEST(Hypergraph, BinomialSubgraphExtremes) {
    auto h = complete_hypergraph(7, 2);
    RngStream rng(1, 0);
    auto none = binomial_subgraph(h, 0.0, rng.child(0));
    EXPECT_EQ(none.num_edges(), 0u);
    EXPECT_EQ(none.num_vertices(), 7u);
    auto all = binomial_subgraph(h, 1.0, rng.child(1));
    EXPECT_EQ(all, h);
}

TEST(Hypergraph, BinomialSubgraphMeanWithinFourSigma) {
    // K_100 at p = 0.3: mean 0.3*C(100,2), across 100 seeds the average
    // retained count stays within 4 standard errors.
    auto h = complete_hypergraph(100, 2);
    const double p = 0.3;
    const double mean_one = p * 4950.0;
    const double sd_one = std::sqrt(4950.0 * p * (1 - p));
    double total = 0;
    for (int seed = 0; seed < 100; ++seed)
        total += static_cast<double>(binomial_subgraph(h, p, RngStream(seed, 0)).num_edges());
    double avg = total / 100.0;
    EXPECT_NEAR(avg, mean_one, 4.0 * sd_one / 10.0);
}

TEST(Hypergraph, BinomialSubgraphReplayAndMonotoneCoupling) {
    auto h = complete_hypergraph(40, 3);
    RngStream rng(9, 4);
    auto a = binomial_subgraph(h, 0.37, rng);
    auto b = binomial_subgraph(h, 0.37, rng);
    EXPECT_EQ(a, b);
    // Shared stream, nested retention probabilities => nested edge sets.
    auto low = binomial_subgraph(h, 0.2, rng);
    auto high = binomial_subgraph(h, 0.5, rng);
    for (std::size_t i = 0; i < low.num_edges(); ++i) EXPECT_TRUE(high.has_edge(low.edge(i)));
}

TEST(Hypergraph, CompleteBinomialSamplerMatchesExplicitLaw) {
    // Implicit (skip-sampled) and explicit binomial subsampling agree on the
    // retained-count distribution within Monte Carlo tolerance.
    const Vertex n = 30;
    const double p = 0.05;
    const int trials = 300;
    double implicit_total = 0, explicit_total = 0;
    auto h = complete_hypergraph(n, 3);
    for (int t = 0; t < trials; ++t) {
        implicit_total += static_cast<double>(
            binomial_complete_subgraph(n, 3, p, RngStream(500 + t, 0)).num_edges());
        explicit_total +=
            static_cast<double>(binomial_subgraph(h, p, RngStream(900 + t, 0)).num_edges());
    }
    double mean = p * static_cast<double>(binomial_coefficient(n, 3));
    double se = std::sqrt(mean / trials) * 4;
    EXPECT_NEAR(implicit_total / trials, mean, se);
    EXPECT_NEAR(explicit_total / trials, mean, se);
}

TEST(Hypergraph, UnrankKsetRoundTrip) {
    const Vertex n = 12;
    auto combos = oracles::combinations(n, 3);
    for (std::uint64_t r = 0; r < combos.size(); ++r) {
        auto s = unrank_kset(r, 3);
        // Colex order: rank = C(a,1) + C(b,2) + C(c,3).
        std::uint64_t back = binomial_coefficient(s[0], 1) + binomial_coefficient(s[1], 2) +
                             binomial_coefficient(s[2], 3);
        EXPECT_EQ(back, r);
        EXPECT_TRUE(s[0] < s[1] && s[1] < s[2]);
        EXPECT_LT(s[2], n);
    }
}

TEST(Hypergraph, CliqueComplexBasics) {
    auto k4 = complete_hypergraph(4, 2);
    auto complex = clique_complex(k4, 3);
    EXPECT_EQ(complex.num_edges(), 4u);
    EXPECT_EQ(complex.uniformity(), 3);

    // Triangle-free graph: 6-cycle.
    Hypergraph c6(6, 2, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    EXPECT_EQ(clique_complex(c6, 3).num_edges(), 0u);
}

TEST(Hypergraph, CliqueComplexMatchesTripleLoopOracle) {
    RngStream rng(77, 0);
    auto g = gnp_graph(10, 0.8, rng);
    EXPECT_EQ(clique_complex(g, 3).num_edges(), oracles::triangle_count(g));
}

TEST(Hypergraph, CliqueComplexAtTwoIsTheGraphItself) {
    RngStream rng(78, 0);
    auto g = gnp_graph(12, 0.5, rng);
    EXPECT_EQ(clique_complex(g, 2), g);
}

TEST(Hypergraph, JsonRoundTrip) {
    RngStream rng(3, 0);
    auto h = random_hypergraph(9, 3, 20, rng);
    auto j = hypergraph_to_json(h);
    EXPECT_EQ(hypergraph_from_json(j), h);
    // Unknown major version rejected.
    j["schema"] = "spreadlab/2";
    EXPECT_THROW(hypergraph_from_json(j), IoError);
}

TEST(Hypergraph, MatchingValidation) {
    auto h = complete_hypergraph(6, 3);
    Matching m;
    m.edges = {{0, 1, 2}, {3, 4, 5}};
    EXPECT_TRUE(m.is_perfect_in(h));
    Matching overlapping;
    overlapping.edges = {{0, 1, 2}, {2, 3, 4}};
    EXPECT_FALSE(overlapping.is_valid_in(h));
}

TEST(Hypergraph, DegreeIntoRestrictedSet) {
    auto h = complete_hypergraph(6, 3);
    DynBitset inside(6);
    for (Vertex v : {1u, 2u, 3u}) inside.set(v);
    std::vector<Vertex> s = {0};
    // Edges {0,x,y} with x,y in {1,2,3}: C(3,2) = 3.
    EXPECT_EQ(degree_into(h, s, inside), 3u);
}
