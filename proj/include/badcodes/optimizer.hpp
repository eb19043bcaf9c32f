#ifndef BADCODES_OPTIMIZER_HPP
#define BADCODES_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "badcodes/awgn_ic.hpp"
#include "badcodes/density_evolution.hpp"
#include "badcodes/ensemble.hpp"
#include "badcodes/info_bounds.hpp"
#include "badcodes/lp.hpp"
#include "badcodes/rates.hpp"

namespace badcodes {

struct OptimizerIteration {
    EdgeDistribution ed;
    double design_rate = 0.0;
    double dhat2 = 0.0;  // relay variant only
    bool admissible = false;
    double verification_value = 0.0;  // sim-DE erasure / primary DE BER
    double min_constraint_slack = 0.0;
};

struct OptimizerState {
    EdgeDistribution current;
    double current_dhat2 = 0.0;
    std::vector<OptimizerIteration> log;

    std::string log_json() const;
};

struct RelayOptimizerOptions {
    double eta = 0.1;
    int t = 200;           // sim-DE iterations feeding the closeness rows
    int max_iters = 10;
    double eps_target = 2e-5;                 // admissible sim-DE erasure
    std::vector<int> candidate_degrees;        // empty -> {2..30, 50, 100}
    DeStatistic bound_statistic = DeStatistic::edge_message;
    bool check_bound_condition = true;         // i_plus(dhat2) <= c_o
};

// Hill climb on lambda with rho fixed: each iteration builds closeness rows
// from a sim-DE run, maximizes sum_i lambda_i/i by LP, re-derives dhat2 from
// the quantization-noise bound and re-verifies with full sim-DE. Stops on
// the first non-admissible iterate. Throws if the seed itself fails.
OptimizerState optimize_relay(const EdgeDistribution& seed, const RelayParams& p,
                              const RelayOptimizerOptions& opt);

// Phi functional E[log(1+e^-L)] of a quantized density (natural log).
double phi_functional(const LlrDensity& d);

struct InterferenceOptimizerOptions {
    double eta = 0.1;
    double eta_prime = 0.02;
    int t = 40;            // DE iterations feeding the closeness rows
    int max_iters = 10;
    double ber_target = 1e-5;  // admissible primary BER
    std::vector<int> candidate_degrees;
    LlrGrid grid;
    bool enforce_partial = false;
    double partial_threshold = 0.0;  // required when enforce_partial is set
    int verify_iters = 400;
};

OptimizerState optimize_interference(const EdgeDistribution& seed,
                                     const InterferenceParams& p,
                                     const InterferenceOptimizerOptions& opt);

} // namespace badcodes

#endif
