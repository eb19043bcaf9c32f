#ifndef BADCODES_RELAY_PIPELINE_HPP
#define BADCODES_RELAY_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "badcodes/bec_bp.hpp"
#include "badcodes/ensemble.hpp"
#include "badcodes/erasure.hpp"
#include "badcodes/rates.hpp"
#include "badcodes/rng.hpp"

namespace badcodes {

// Channel noise realizations shared between the real pipeline and sim-BP so
// both see identical randomness.
struct NoiseTriple {
    ErasureWord e2;     // source->relay erasures
    ErasureWord e3;     // source->destination erasures
    ErasureWord ehat2;  // quantization erasures
};

NoiseTriple make_noise(const RelayParams& p, std::size_t n, RandomStream& rng);

struct TrialOutcome {
    ErasureWord relay_output;        // y2_bp
    ErasureWord quantized;           // yhat2_bp
    ErasureWord destination_output;  // y3_bp
    ErasureWord simbp_output;        // y'3_bp (empty unless sim-BP ran)
    double relay_erasure_rate = 0.0;
    double quantized_erasure_rate = 0.0;
    double destination_erasure_rate = 0.0;
    double simbp_erasure_rate = 0.0;
};

// One relay strategy trial in the stochastic channel setup; the all-zero
// codeword is transmitted. t < 0 runs the relay and destination decoders to
// their peeling fixed points.
TrialOutcome soft_df_bp_trial(const TannerGraph& g, const RelayParams& p, int t,
                              RandomStream& rng);
TrialOutcome soft_df_bp_trial(const TannerGraph& g, const NoiseTriple& noise,
                              int t);

// Joint relay+destination message passing on pair messages; the relay
// coordinate reproduces the relay BP messages exactly.
TrialOutcome sim_bp_trial(const TannerGraph& g, const NoiseTriple& noise, int t);

struct CampaignResult {
    RelayParams params;
    int n = 0;
    int t = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double mean_destination_erasure = 0.0;
    double var_destination_erasure = 0.0;
    double ci95_halfwidth = 0.0;  // binomial, on the mean bit erasure rate
    double mean_relay_erasure = 0.0;
    int degradedness_violations = 0;
    std::vector<TrialOutcome> per_trial;  // filled when keep_trials is set

    std::string report_json() const;
    std::string per_trial_csv() const;
};

// Runs matched-noise soft-DF-BP + sim-BP trials over one sampled graph per
// trial (fresh graph each trial), distributing across threads. Aggregation
// order is independent of completion order.
CampaignResult run_campaign(const EdgeDistribution& ed, int n,
                            const RelayParams& p, int t, int trials,
                            std::uint64_t seed, int threads = 1,
                            bool keep_trials = false, bool with_simbp = true);

// Theorem-1-style achievable rate R(1 - h(eps/R)).
double achievable_rate_from_epsilon(double rate, double epsilon);

} // namespace badcodes

#endif
