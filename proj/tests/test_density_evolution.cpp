#include <doctest.h>

#include <cmath>

#include "badcodes/density_evolution.hpp"

using namespace badcodes;

TEST_CASE("de_bec at delta=0 stays at zero") {
    const auto r = de_bec(EdgeDistribution::regular(3, 6), 0.0, 10);
    for (double x : r.per_iteration) CHECK(x == 0.0);
    CHECK(r.final_bit_erasure == 0.0);
}

TEST_CASE("de_bec (3,6) brackets the threshold near 0.4294") {
    const auto ed = EdgeDistribution::regular(3, 6);
    CHECK(de_bec(ed, 0.42, 500).final_bit_erasure < 1e-6);
    CHECK(de_bec(ed, 0.44, 500).final_bit_erasure > 1e-2);
    CHECK(de_threshold(ed) == doctest::Approx(0.4294).epsilon(2.5e-3));
}

TEST_CASE("cycle-code threshold is 1/2") {
    EdgeDistribution ed;
    ed.lambda = {{2, 1.0}};
    ed.rho = {{3, 1.0}};
    CHECK(de_threshold(ed) == doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("threshold never beats capacity") {
    for (const auto& ed : {EdgeDistribution::regular(3, 6),
                           EdgeDistribution::regular(2, 4),
                           relay_design_distribution()}) {
        CHECK(de_threshold(ed) <= 1.0 - ed.design_rate() + 1e-9);
    }
}

TEST_CASE("relay design distribution at delta=0.5 reaches 0.3016") {
    const auto r = de_bec(relay_design_distribution(), 0.5, 5000, 1e-14);
    CHECK(r.final_bit_erasure == doctest::Approx(0.3016).epsilon(2e-3 / 0.3016));
}

TEST_CASE("de_bec trajectory is non-increasing") {
    const auto r = de_bec(relay_design_distribution(), 0.5, 2000);
    for (std::size_t i = 1; i < r.per_iteration.size(); ++i)
        CHECK(r.per_iteration[i] <= r.per_iteration[i - 1] + 1e-15);
}

TEST_CASE("pair_init") {
    const auto p = pair_init(0.0, 0.0);
    CHECK(p.p00 == 1.0);
    const auto q = pair_init(1.0, 1.0);
    CHECK(q.pee == 1.0);
    const auto r = pair_init(0.5, 0.82);
    CHECK(r.pee == doctest::Approx(0.41));
    CHECK(r.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pair_odot identities and algebra") {
    const PairDensity zero{1, 0, 0, 0};   // point mass (0,0)
    const PairDensity erased{0, 0, 0, 1}; // point mass (e,e)
    const auto b = pair_init(0.3, 0.7);
    // non-erasure absorbs under multiplication
    const auto z = pair_odot(zero, b);
    CHECK(z.p00 == doctest::Approx(1.0));
    // erasure is the identity
    const auto e = pair_odot(erased, b);
    CHECK(e.p00 == doctest::Approx(b.p00));
    CHECK(e.pee == doctest::Approx(b.pee));
    // independence product on the diagonal
    PairDensity diag{1 - 0.37, 0, 0, 0.37};
    const auto d2 = pair_odot(diag, diag);
    CHECK(d2.pee == doctest::Approx(0.37 * 0.37).epsilon(1e-14));
    // commutative, associative
    const auto c1 = pair_odot(pair_odot(b, diag), erased);
    const auto c2 = pair_odot(b, pair_odot(diag, erased));
    CHECK(c1.p0e == doctest::Approx(c2.p0e).epsilon(1e-13));
    const auto ab = pair_odot(b, diag);
    const auto ba = pair_odot(diag, b);
    CHECK(ab.pe0 == doctest::Approx(ba.pe0).epsilon(1e-14));
}

TEST_CASE("pair_oplus identities") {
    const PairDensity zero{1, 0, 0, 0};
    const PairDensity erased{0, 0, 0, 1};
    const auto a = pair_init(0.4, 0.6);
    const auto z = pair_oplus(a, zero);
    CHECK(z.pe0 == doctest::Approx(a.pe0).epsilon(1e-14));
    const auto e = pair_oplus(a, erased);
    CHECK(e.pee == doctest::Approx(1.0));
    // marginal erasures compose by circ when coordinates are independent
    const auto b = pair_init(0.25, 0.5);
    const auto s = pair_oplus(a, b);
    CHECK(s.relay_erasure() ==
          doctest::Approx(0.4 + 0.25 * 0.6).epsilon(1e-14));
    CHECK(s.dest_erasure() == doctest::Approx(0.6 + 0.5 * 0.4).epsilon(1e-14));
}

TEST_CASE("pair_gamma endpoints") {
    PairDensity p{0, 1, 0, 0};  // point mass (0,e)
    const auto g = pair_gamma(p, 0.3);
    CHECK(g.p00 == doctest::Approx(0.7));
    CHECK(g.p0e == doctest::Approx(0.3));
    const auto full = pair_gamma(p, 1.0);
    CHECK(full.p0e == doctest::Approx(1.0));
    const auto none = pair_gamma(p, 0.0);
    CHECK(none.p00 == doctest::Approx(1.0));
    CHECK(none.p0e == 0.0);
}

TEST_CASE("pair densities stay normalized through many operator chains") {
    auto p = pair_init(0.5, 0.7);
    auto q = pair_init(0.3, 0.9);
    for (int i = 0; i < 200; ++i) {
        p = pair_gamma(pair_odot(p, q), 0.2);
        q = pair_oplus(q, p);
        CHECK(p.is_valid(1e-10));
        CHECK(q.is_valid(1e-10));
    }
}

TEST_CASE("sim_de headline point stays below 2e-5") {
    const auto r = sim_de(relay_design_distribution(), 0.5, 0.82, 0.212, 2000);
    CHECK(r.final_erasure <= 2e-5);
    CHECK(r.final_erasure > 0.0);
}

TEST_CASE("sim_de degenerate identity: dhat2=1 reduces to de_bec(d3)") {
    const auto ed = relay_design_distribution();
    const int t = 400;
    const auto sr = sim_de(ed, 0.5, 0.82, 1.0, t, 0.0);
    const auto dr = de_bec(ed, 0.82, t - 1, 0.0);
    CHECK(std::abs(sr.final_erasure - dr.final_bit_erasure) <= 1e-12);
}

TEST_CASE("sim_de degenerate identity: d2=0 reduces to de_bec(dhat2*d3)") {
    const auto ed = relay_design_distribution();
    const int t = 400;
    const auto sr = sim_de(ed, 0.0, 0.9, 0.8, t, 0.0);
    const auto dr = de_bec(ed, 0.8 * 0.9, t - 1, 0.0);
    CHECK(std::abs(sr.final_erasure - dr.final_bit_erasure) <= 1e-12);
}

TEST_CASE("sim_de relay marginal equals de_bec trajectory exactly") {
    const auto ed = relay_design_distribution();
    const int t = 60;
    const auto sr = sim_de(ed, 0.5, 0.82, 0.212, t, 0.0);
    const auto dr = de_bec(ed, 0.5, t, 0.0);
    REQUIRE(sr.rightbound.size() <= dr.per_iteration.size());
    for (std::size_t l = 0; l < sr.rightbound.size(); ++l)
        CHECK(sr.rightbound[l].relay_erasure() == dr.per_iteration[l]);
}

TEST_CASE("sim_de monotone in dhat2") {
    const auto ed = relay_design_distribution();
    double prev = -1.0;
    for (double dh : {0.0, 0.1, 0.2, 0.25, 0.3, 0.5, 0.8, 1.0}) {
        const double pe = sim_de(ed, 0.5, 0.82, dh, 600).final_erasure;
        CHECK(pe >= prev - 1e-12);
        prev = pe;
    }
}

TEST_CASE("csv export carries the trajectory") {
    const auto r = de_bec(EdgeDistribution::regular(3, 6), 0.3, 10);
    const auto csv = de_result_csv(r);
    CHECK(csv.find("iteration,erasure") == 0);
    CHECK(csv.find("final,") != std::string::npos);
}
