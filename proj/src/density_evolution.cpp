#include "badcodes/density_evolution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "badcodes/erasure.hpp"

namespace badcodes {

bool PairDensity::is_valid(double tol) const {
    if (p00 < -tol || p0e < -tol || pe0 < -tol || pee < -tol) return false;
    return std::abs(sum() - 1.0) <= tol;
}

PairDensity pair_init(double d2, double d3) {
    check_probability(d2, "pair_init d2");
    check_probability(d3, "pair_init d3");
    PairDensity p;
    p.p00 = (1 - d2) * (1 - d3);
    p.p0e = (1 - d2) * d3;
    p.pe0 = d2 * (1 - d3);
    p.pee = d2 * d3;
    return p;
}

namespace {

// Erasure multiplication and addition act coordinatewise, so the "all
// erased on A" probabilities multiply under odot and the "all zero on A"
// probabilities multiply under oplus, for every coordinate subset A. These
// transforms make iterated combinations exact (no rounding amplification
// through high-degree powers).
struct ECoords { double e2, e3, e23; };  // P(x2=e), P(x3=e), P(both e)
struct SCoords { double s2, s3, s23; };  // P(x2=0), P(x3=0), P(both 0)

ECoords to_e(const PairDensity& p) { return {p.pe0 + p.pee, p.p0e + p.pee, p.pee}; }
SCoords to_s(const PairDensity& p) { return {p.p00 + p.p0e, p.p00 + p.pe0, p.p00}; }

PairDensity from_e(const ECoords& e) {
    PairDensity p;
    p.pee = e.e23;
    p.pe0 = e.e2 - e.e23;
    p.p0e = e.e3 - e.e23;
    p.p00 = 1.0 - e.e2 - e.e3 + e.e23;
    return p;
}

PairDensity from_s(const SCoords& s) {
    PairDensity p;
    p.p00 = s.s23;
    p.p0e = s.s2 - s.s23;
    p.pe0 = s.s3 - s.s23;
    p.pee = 1.0 - s.s2 - s.s3 + s.s23;
    return p;
}

} // namespace

PairDensity pair_odot(const PairDensity& a, const PairDensity& b) {
    const ECoords ea = to_e(a), eb = to_e(b);
    return from_e({ea.e2 * eb.e2, ea.e3 * eb.e3, ea.e23 * eb.e23});
}

PairDensity pair_oplus(const PairDensity& a, const PairDensity& b) {
    const SCoords sa = to_s(a), sb = to_s(b);
    return from_s({sa.s2 * sb.s2, sa.s3 * sb.s3, sa.s23 * sb.s23});
}

PairDensity pair_gamma(const PairDensity& p, double dhat2) {
    check_probability(dhat2, "pair_gamma dhat2");
    PairDensity out = p;
    out.p00 = p.p00 + p.p0e * (1.0 - dhat2);
    out.p0e = p.p0e * dhat2;
    return out;
}

DeResult de_bec(const EdgeDistribution& ed, double delta, int t, double stop_tol) {
    ed.validate();
    check_probability(delta, "de_bec delta");
    if (t < 1) throw std::invalid_argument("de_bec: t < 1");

    const auto lt = ed.lambda_node_fractions();
    DeResult r;
    double x = delta;
    r.per_iteration.push_back(x);
    for (int l = 1; l <= t; ++l) {
        const double y = 1.0 - ed.rho_eval(1.0 - x);
        const double xn = delta * ed.lambda_eval(y);
        r.per_iteration.push_back(xn);
        if (std::abs(xn - x) < stop_tol) {
            x = xn;
            r.converged = true;
            break;
        }
        x = xn;
    }
    r.iterations = static_cast<int>(r.per_iteration.size()) - 1;
    const double y = 1.0 - ed.rho_eval(1.0 - x);
    double fin = 0.0;
    for (const auto& [deg, frac] : lt) fin += frac * std::pow(y, deg);
    r.final_bit_erasure = delta * fin;
    return r;
}

SimDeResult sim_de(const EdgeDistribution& ed, double d2, double d3,
                   double dhat2, int t, double stop_tol) {
    ed.validate();
    check_probability(d2, "sim_de d2");
    check_probability(d3, "sim_de d3");
    check_probability(dhat2, "sim_de dhat2");
    if (t < 1) throw std::invalid_argument("sim_de: t < 1");

    const auto lt = ed.lambda_node_fractions();

    // The erasure lanes e2 and e3 are written with exactly the de_bec
    // expressions so the marginal trajectories coincide arithmetically.
    auto gamma_e = [dhat2](ECoords e) {
        // x3 becomes an erasure iff xbar3 = e and (x2 = e or xhat2 = e)
        if (dhat2 != 1.0) e.e3 = e.e23 + dhat2 * (e.e3 - e.e23);
        return e;
    };

    SimDeResult r;
    ECoords eR = gamma_e(ECoords{d2, d3, d2 * d3});
    r.rightbound.push_back(from_e(eR));

    double prev_pe = -1.0;
    int l = 1;
    for (; l <= t; ++l) {
        // leftbound: the all-zero subset probabilities transform through rho
        const double eL2 = 1.0 - ed.rho_eval(1.0 - eR.e2);
        const double eL3 = 1.0 - ed.rho_eval(1.0 - eR.e3);
        const double sL23 = ed.rho_eval(1.0 - eR.e2 - eR.e3 + eR.e23);
        const double eL23 = eL2 + eL3 - 1.0 + sL23;

        // final decision estimate from this leftbound stage
        ECoords eF{0, 0, 0};
        for (const auto& [deg, frac] : lt) {
            eF.e2 += frac * std::pow(eL2, deg);
            eF.e3 += frac * std::pow(eL3, deg);
            eF.e23 += frac * std::pow(eL23, deg);
        }
        eF = gamma_e(ECoords{d2 * eF.e2, d3 * eF.e3, (d2 * d3) * eF.e23});
        const double pe = eF.e3;
        r.final_pair = from_e(eF);
        r.final_erasure = pe;

        if (l < t) {
            eR = gamma_e(ECoords{d2 * ed.lambda_eval(eL2), d3 * ed.lambda_eval(eL3),
                                 (d2 * d3) * ed.lambda_eval(eL23)});
            r.rightbound.push_back(from_e(eR));
        }
        if (prev_pe >= 0.0 && std::abs(pe - prev_pe) < stop_tol) {
            r.converged = true;
            break;
        }
        prev_pe = pe;
    }
    r.iterations = std::min(l, t);
    return r;
}

double de_threshold(const EdgeDistribution& ed, int t) {
    ed.validate();
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-5) {
        const double mid = 0.5 * (lo + hi);
        const DeResult r = de_bec(ed, mid, t, 1e-14);
        if (r.final_bit_erasure < 1e-8) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string de_result_csv(const DeResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "iteration,erasure\n";
    for (std::size_t i = 0; i < r.per_iteration.size(); ++i)
        os << i << ',' << r.per_iteration[i] << '\n';
    os << "final," << r.final_bit_erasure << '\n';
    return os.str();
}

} // namespace badcodes
