#ifndef BADCODES_AWGN_IC_HPP
#define BADCODES_AWGN_IC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "badcodes/ensemble.hpp"
#include "badcodes/llr_density.hpp"
#include "badcodes/rates.hpp"
#include "badcodes/rng.hpp"

namespace badcodes {

// Which codeword a destination-side computation concerns.
enum class IcRole { primary, interference };

// y_i = x1_i + h*x2_i + z_i over bipolar words.
std::vector<double> sample_interference_channel(const std::vector<double>& x1,
                                                const std::vector<double>& x2,
                                                const InterferenceParams& p,
                                                RandomStream& rng);

// State-node output LLR given the channel sample and the other decoder's
// incoming LLR: log-ratio of Gaussian-mixture likelihoods with the prior on
// the other bit set by the incoming message.
double state_to_variable_llr(double y, double incoming_other, IcRole role,
                             const InterferenceParams& p);

// Two index-paired Tanner graphs of equal n and edge distribution; paired
// variable nodes share a degree (no-interleaver pairing).
struct FactorGraphPair {
    TannerGraph primary;
    TannerGraph interference;
    void validate() const;
};

FactorGraphPair make_factor_graph_pair(const EdgeDistribution& ed, int n,
                                       RandomStream& rng);

struct SoftIcBpResult {
    std::vector<int> primary_decisions;       // +-1
    std::vector<double> interference_llr;     // soft estimates
    double primary_ber = 0.0;                 // vs all-(+1) reference
    double interference_ber = 0.0;
};

// Joint iterative decoding at one destination, parallel scheduling; the
// channel enters only through the state nodes.
SoftIcBpResult soft_ic_bp(const FactorGraphPair& fg, const std::vector<double>& y,
                          const InterferenceParams& p, int t);

struct IcDeOptions {
    LlrGrid grid;
    int max_iters = 500;
    double stop_tol = 1e-10;       // on both BER trajectories
    bool enforce_partial = false;  // freeze the interference decoder ...
    double partial_threshold = 0;  // ... once phi(rightbound_2) drops below this
    bool capture = false;          // record the functionals the optimizer needs
    std::vector<int> capture_degrees;  // singleton degrees; empty -> support
};

// Per-iteration functionals captured for the code optimizer.
struct IcDeCapture {
    std::vector<double> s1, s2;                      // phi of rightbound mixtures
    std::vector<std::map<int, double>> s1_deg, s2_deg;   // per-degree singletons
    std::vector<double> st1, st2;                    // phi of variable-to-state mixtures
    std::vector<std::map<int, double>> st1_deg, st2_deg;
    double stability_rhs = 0.0;  // E[e^{-L/2}] of the degree-2 primary singleton
};

struct IcDeResult {
    std::vector<double> primary_ber;
    std::vector<double> interference_ber;
    bool converged = false;
    int iterations = 0;
    double max_neg_saturation = 0.0;
    double max_symmetry_violation = 0.0;  // over evolved densities
    IcDeCapture capture;

    std::string trajectory_csv() const;
};

// Quantized density evolution of the joint decoder under all-(+1)
// conditioning. Throws when mass in the negative saturation bin exceeds
// 1e-3 (the grid cannot represent the erroneous tail; increase l_max).
IcDeResult soft_ic_de(const EdgeDistribution& ed, const InterferenceParams& p,
                      const IcDeOptions& opt = IcDeOptions{});

} // namespace badcodes

#endif
