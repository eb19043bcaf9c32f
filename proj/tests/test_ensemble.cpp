#include <doctest.h>

#include <stdexcept>

#include "badcodes/ensemble.hpp"

using namespace badcodes;

TEST_CASE("design rate") {
    CHECK(EdgeDistribution::regular(3, 6).design_rate() == doctest::Approx(0.5));
    CHECK(relay_design_distribution().design_rate() ==
          doctest::Approx(0.5056).epsilon(1e-3));
    CHECK(interference_design_distribution().design_rate() ==
          doctest::Approx(0.3243).epsilon(1.6e-3));
    // (c,d)-regular is exactly 1 - c/d
    for (int c = 2; c <= 5; ++c)
        for (int d = c + 1; d <= 12; ++d)
            CHECK(EdgeDistribution::regular(c, d).design_rate() ==
                  doctest::Approx(1.0 - double(c) / d).epsilon(1e-15));
}

TEST_CASE("node fractions") {
    const auto lt3 = EdgeDistribution::regular(3, 6).lambda_node_fractions();
    CHECK(lt3.at(3) == doctest::Approx(1.0));

    EdgeDistribution ed;
    ed.lambda = {{2, 0.5}, {4, 0.5}};
    ed.rho = {{6, 1.0}};
    const auto lt = ed.lambda_node_fractions();
    CHECK(lt.at(2) == doctest::Approx(2.0 / 3.0));
    CHECK(lt.at(4) == doctest::Approx(1.0 / 3.0));

    CHECK(EdgeDistribution::regular(3, 6).gamma() == doctest::Approx(3.0));
    // gamma equals 1 / sum(lambda_i / i)
    const auto rd = relay_design_distribution();
    double z = 0.0;
    for (const auto& [deg, frac] : rd.lambda) z += frac / deg;
    CHECK(rd.gamma() == doctest::Approx(1.0 / z).epsilon(1e-14));
}

TEST_CASE("node fractions sum to one for random ensembles") {
    RandomStream rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        EdgeDistribution ed;
        double sum = 0.0;
        for (int d = 2; d < 12; ++d) {
            if (rng.bernoulli(0.4)) {
                const double w = rng.next_double() + 0.01;
                ed.lambda[d] = w;
                sum += w;
            }
        }
        if (ed.lambda.empty()) continue;
        for (auto& [d, w] : ed.lambda) w /= sum;
        ed.rho = {{8, 1.0}};
        double total = 0.0;
        for (const auto& [d, f] : ed.lambda_node_fractions()) total += f;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("validation rejects malformed profiles") {
    EdgeDistribution ed;
    ed.lambda = {{2, 0.5}, {3, 0.6}};
    ed.rho = {{6, 1.0}};
    CHECK_THROWS_AS(ed.validate(), std::invalid_argument);
    ed.lambda = {{1, 1.0}};
    CHECK_THROWS_AS(ed.validate(), std::invalid_argument);
    ed.lambda = {{2, 1.0}};
    ed.rho = {{6, -1.0}};
    CHECK_THROWS_AS(ed.validate(), std::invalid_argument);
}

TEST_CASE("json round trip") {
    const auto ed = relay_design_distribution();
    const auto back = EdgeDistribution::from_json(ed.to_json());
    CHECK(back.lambda.size() == ed.lambda.size());
    CHECK(back.design_rate() == doctest::Approx(ed.design_rate()).epsilon(1e-15));
}

TEST_CASE("sample_graph socket counts for (3,6), n=12") {
    RandomStream rng(1);
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), 12, rng);
    CHECK(g.n == 12);
    CHECK(g.m == 6);
    CHECK(g.edge_count == 36);
    for (int v = 0; v < g.n; ++v) CHECK(g.var_degree(v) == 3);
    for (int c = 0; c < g.m; ++c) CHECK(g.chk_degree(c) == 6);
}

TEST_CASE("sample_graph edge counts equal on both sides") {
    RandomStream rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = sample_graph(relay_design_distribution(), 500, rng);
        int vs = 0, cs = 0;
        for (int v = 0; v < g.n; ++v) vs += g.var_degree(v);
        for (int c = 0; c < g.m; ++c) cs += g.chk_degree(c);
        CHECK(vs == g.edge_count);
        CHECK(cs == g.edge_count);
    }
}

TEST_CASE("sample_graph realized rate near design rate at n=1e4") {
    RandomStream rng(9);
    const auto ed = relay_design_distribution();
    const auto g = sample_graph(ed, 10000, rng);
    const double realized = 1.0 - static_cast<double>(g.m) / g.n;
    CHECK(realized == doctest::Approx(ed.design_rate()).epsilon(1e-2));
}

TEST_CASE("sample_graph degree histograms match node fractions") {
    RandomStream rng(17);
    const auto ed = relay_design_distribution();
    const int n = 2000;
    const auto g = sample_graph(ed, n, rng);
    std::map<int, int> hist;
    for (int v = 0; v < g.n; ++v) hist[g.var_degree(v)] += 1;
    for (const auto& [deg, frac] : ed.lambda_node_fractions())
        CHECK(std::abs(hist[deg] - n * frac) <= 1.0);
}

TEST_CASE("sample_graph errors when a degree class gets no node") {
    RandomStream rng(2);
    CHECK_THROWS_AS(sample_graph(relay_design_distribution(), 12, rng),
                    std::invalid_argument);
    // the smallest class of the interference profile needs n ~ 1e5
    CHECK_THROWS_AS(sample_graph(interference_design_distribution(), 2000, rng),
                    std::invalid_argument);
}

TEST_CASE("graph text round trip") {
    RandomStream rng(4);
    const auto g = sample_graph(EdgeDistribution::regular(2, 4), 8, rng);
    const auto back = TannerGraph::from_text(g.to_text());
    CHECK(back.n == g.n);
    CHECK(back.m == g.m);
    CHECK(back.edge_count == g.edge_count);
    for (int c = 0; c < g.m; ++c) CHECK(back.chk_vars[c] == g.chk_vars[c]);
}

TEST_CASE("stopping set predicate") {
    // 3 variables all attached to one check
    TannerGraph g = TannerGraph::from_text("3 1\n0 1 2\n");
    CHECK(is_stopping_set(g, {}));            // vacuous
    CHECK_FALSE(is_stopping_set(g, {0}));     // check sees it once
    CHECK(is_stopping_set(g, {0, 1}));
    CHECK(is_stopping_set(g, {0, 1, 2}));
}

TEST_CASE("4-cycle in a 2-regular toy graph is a stopping set") {
    // two variables, two checks, each check sees both variables
    TannerGraph g = TannerGraph::from_text("2 2\n0 1\n0 1\n");
    CHECK(is_stopping_set(g, {0, 1}));
    CHECK_FALSE(is_stopping_set(g, {0}));
}

TEST_CASE("enumerate_stopping_sets on the 3-variable toy") {
    TannerGraph g = TannerGraph::from_text("3 1\n0 1 2\n");
    const auto counts = enumerate_stopping_sets(g, 3);
    CHECK(counts.at(0) == 1);
    CHECK(counts.at(1) == 0);
    CHECK(counts.at(2) == 3);
    CHECK(counts.at(3) == 1);
}

TEST_CASE("enumerate_stopping_sets refuses large n") {
    RandomStream rng(6);
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), 26, rng);
    CHECK_THROWS_AS(enumerate_stopping_sets(g, 3), std::invalid_argument);
}

TEST_CASE("singletons are never stopping sets without multi-edges") {
    RandomStream rng(8);
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), 12, rng, true);
    const auto counts = enumerate_stopping_sets(g, 1);
    CHECK(counts.at(1) == 0);
}

TEST_CASE("largest remainder apportionment") {
    const auto counts = largest_remainder({{2, 0.5}, {3, 0.3}, {4, 0.2}}, 10);
    CHECK(counts.at(2) == 5);
    CHECK(counts.at(3) == 3);
    CHECK(counts.at(4) == 2);
    int total = 0;
    for (const auto& [d, c] : largest_remainder({{2, 1.0 / 3}, {3, 1.0 / 3}, {5, 1.0 / 3}}, 10))
        total += c;
    CHECK(total == 10);
}
