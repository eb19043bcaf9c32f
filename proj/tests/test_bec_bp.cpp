#include <doctest.h>
#include <stdexcept>

#include "badcodes/bec_bp.hpp"
#include "badcodes/density_evolution.hpp"

using namespace badcodes;

TEST_CASE("bp on a single parity check resolves one erasure") {
    // one check over (x1,x2,x3); y = (0,e,1)
    TannerGraph g = TannerGraph::from_text("3 1\n0 1 2\n");
    const ErasureWord y = ErasureWord::from_string("0e1");
    const auto trace = bp_decode(g, y, 1);
    CHECK(trace.decisions.to_string() == "011");
    CHECK(peeling_decode(g, y).to_string() == "011");
}

TEST_CASE("bp with no erasures returns the input") {
    RandomStream rng(3);
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), 24, rng);
    ErasureWord y(24, ErasureSymbol::zero);
    CHECK(bp_decode(g, y, 5).decisions == y);
}

TEST_CASE("peeling leaves the all-erasure input unchanged") {
    RandomStream rng(4);
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), 24, rng);
    ErasureWord y(24, ErasureSymbol::erased);
    CHECK(peeling_decode(g, y).erasure_rate() == 1.0);
}

TEST_CASE("peeling equals bp run to saturation, 500 random instances") {
    RandomStream rng(123);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        RandomStream sub = rng.split(trial);
        const int n = 30 + static_cast<int>(sub.next_below(471));
        EdgeDistribution ed;
        switch (trial % 4) {
            case 0: ed = EdgeDistribution::regular(3, 6); break;
            case 1: ed = EdgeDistribution::regular(2, 4); break;
            case 2: ed.lambda = {{2, 0.4}, {3, 0.6}}; ed.rho = {{5, 1.0}}; break;
            default: ed.lambda = {{2, 0.3}, {4, 0.7}}; ed.rho = {{7, 1.0}}; break;
        }
        const auto g = sample_graph(ed, n, sub);
        const double delta = 0.1 + 0.8 * sub.next_double();
        ErasureWord x(n, ErasureSymbol::zero);
        const ErasureWord y = sample_bec(x, delta, sub);
        const ErasureWord peeled = peeling_decode(g, y);
        const ErasureWord viabp = bp_decode(g, y, n).decisions;
        CHECK(peeled == viabp);
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("bp decisions are monotone in the iteration count") {
    RandomStream rng(5);
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), 120, rng);
    ErasureWord x(120, ErasureSymbol::zero);
    const ErasureWord y = sample_bec(x, 0.45, rng);
    ErasureWord prev = bp_decode(g, y, 1).decisions;
    for (int t = 2; t <= 12; ++t) {
        const ErasureWord cur = bp_decode(g, y, t).decisions;
        CHECK(is_degraded(prev, cur));  // fewer iterations = more erasures
        prev = cur;
    }
}

TEST_CASE("map decoding of the repetition toy code") {
    // {000, 111}: two checks x1+x2, x2+x3
    TannerGraph g = TannerGraph::from_text("3 2\n0 1\n1 2\n");
    CHECK(map_erase_decode(g, ErasureWord::from_string("e1e")).to_string() ==
          "111");
    CHECK(map_erase_decode(g, ErasureWord::from_string("000")).to_string() ==
          "000");
    // all erased: codeword ambiguous, nothing determined
    CHECK(map_erase_decode(g, ErasureWord::from_string("eee")).erasure_rate() ==
          1.0);
}

TEST_CASE("map decoding detects inconsistent revealed bits") {
    TannerGraph g = TannerGraph::from_text("2 1\n0 1\n");
    CHECK_THROWS_AS(map_erase_decode(g, ErasureWord::from_string("01")),
                    std::runtime_error);
}

TEST_CASE("bp output is degraded with respect to map output") {
    RandomStream rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        RandomStream sub = rng.split(trial);
        const auto g = sample_graph(EdgeDistribution::regular(3, 6), 90, sub);
        ErasureWord x(90, ErasureSymbol::zero);
        const ErasureWord y = sample_bec(x, 0.5, sub);
        const ErasureWord bp = peeling_decode(g, y);
        const ErasureWord map = map_erase_decode(g, y);
        CHECK(is_degraded(bp, map));
        CHECK(is_degraded(map, map_erase_decode(g, map)));  // idempotent-or-better
    }
}

TEST_CASE("decoding depends only on the erasure pattern") {
    // with every check degree even, the all-ones word is a codeword
    RandomStream rng(77);
    const auto g = sample_graph(EdgeDistribution::regular(2, 4), 60, rng);
    ErasureWord zero(60, ErasureSymbol::zero);
    ErasureWord ones(60, ErasureSymbol::one);
    for (int trial = 0; trial < 30; ++trial) {
        const ErasureWord noise = sample_noise_word(60, 0.4, rng);
        const ErasureWord out0 = peeling_decode(g, erasure_add(zero, noise));
        const ErasureWord out1 = peeling_decode(g, erasure_add(ones, noise));
        for (std::size_t i = 0; i < out0.size(); ++i) {
            CHECK(is_erased(out0[i]) == is_erased(out1[i]));
            if (!is_erased(out0[i])) {
                CHECK(out0[i] == ErasureSymbol::zero);
                CHECK(out1[i] == ErasureSymbol::one);
            }
        }
    }
}

TEST_CASE("peeling residual is a stopping set on every trial") {
    RandomStream rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        RandomStream sub = rng.split(trial);
        const auto g = sample_graph(EdgeDistribution::regular(3, 6), 64, sub);
        ErasureWord x(64, ErasureSymbol::zero);
        const ErasureWord y = sample_bec(x, 0.5, sub);
        const ErasureWord out = peeling_decode(g, y);
        std::vector<int> residual;
        for (int v = 0; v < 64; ++v)
            if (is_erased(out[v])) residual.push_back(v);
        CHECK(is_stopping_set(g, residual));
    }
}

TEST_CASE("(3,6) bp below threshold clears almost everything") {
    RandomStream rng(2718);
    const int n = 10000;
    const auto g = sample_graph(EdgeDistribution::regular(3, 6), n, rng);
    ErasureWord x(n, ErasureSymbol::zero);
    const ErasureWord y = sample_bec(x, 0.40, rng);
    const auto out = bp_decode(g, y, 100).decisions;
    CHECK(out.erasure_rate() < 1e-3);
}
