#ifndef BADCODES_DENSITY_EVOLUTION_HPP
#define BADCODES_DENSITY_EVOLUTION_HPP

#include <string>
#include <vector>

#include "badcodes/ensemble.hpp"

namespace badcodes {

// Joint probability over {0,e}^2 for (relay, destination) message pairs.
struct PairDensity {
    double p00 = 1.0, p0e = 0.0, pe0 = 0.0, pee = 0.0;

    double sum() const { return p00 + p0e + pe0 + pee; }
    double relay_erasure() const { return pe0 + pee; }
    double dest_erasure() const { return p0e + pee; }
    bool is_valid(double tol = 1e-10) const;
};

// Product initialization P(x2,x3) = P_{d2}(x2) * P_{d3}(x3).
PairDensity pair_init(double d2, double d3);
// Density of the coordinatewise erasure product of independent draws.
PairDensity pair_odot(const PairDensity& a, const PairDensity& b);
// Density of the coordinatewise erasure sum.
PairDensity pair_oplus(const PairDensity& a, const PairDensity& b);
// Quantization-noise mixture: x3 = xbar3 * (x2 + xhat2), xhat2 ~ Erasure(dhat2).
PairDensity pair_gamma(const PairDensity& p, double dhat2);

struct DeResult {
    std::vector<double> per_iteration;  // edge erasure probability per rightbound stage
    double final_bit_erasure = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct SimDeResult {
    std::vector<PairDensity> rightbound;  // P_R^(l) for l = 0..t-1
    PairDensity final_pair;
    double final_erasure = 0.0;  // Pr[x3 = e] of the final decision pair
    bool converged = false;
    int iterations = 0;
};

// Point-to-point BEC density evolution:
//   x_0 = delta, x_l = delta * lambda(1 - rho(1 - x_{l-1})),
//   bit erasure = delta * sum_i lambda~_i (1 - rho(1 - x_t))^i.
// Stops early once the per-iteration change drops below stop_tol.
DeResult de_bec(const EdgeDistribution& ed, double delta, int t,
                double stop_tol = 1e-12);

// Simultaneous density evolution over pair densities (t rightbound stages,
// final decision from the last leftbound stage). Stops early once the
// final-decision erasure changes by less than stop_tol per iteration.
SimDeResult sim_de(const EdgeDistribution& ed, double d2, double d3,
                   double dhat2, int t = 2000, double stop_tol = 1e-12);

// Largest delta (within 1e-5) at which de_bec converges below 1e-8.
double de_threshold(const EdgeDistribution& ed, int t = 5000);

// CSV rows "iteration,erasure" with a final row for the bit erasure.
std::string de_result_csv(const DeResult& r);

} // namespace badcodes

#endif
