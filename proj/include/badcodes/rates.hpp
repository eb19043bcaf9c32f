#ifndef BADCODES_RATES_HPP
#define BADCODES_RATES_HPP

#include <string>
#include <vector>

namespace badcodes {

// Erasure relay channel triplet plus the quantization-noise level used by
// the stochastic setup.
struct RelayParams {
    double delta2 = 0.0;
    double delta3 = 0.0;
    double c_o = 0.0;
    double dhat2 = 0.0;

    void validate() const;
};

// (h, sigma) symmetric interference channel with +-1 inputs.
struct InterferenceParams {
    double h = 0.0;
    double sigma = 1.0;

    double snr_direct() const { return 1.0 / (sigma * sigma); }
    double snr_cross() const { return h * h / (sigma * sigma); }
    void validate() const;
};

struct RateReport {
    std::string name;
    double value = 0.0;
    std::string inputs;
    std::string flags;  // e.g. "conditional" for conjecture-dependent bounds
};

// Gauss-Hermite nodes/weights for integrals of f(t) exp(-t^2).
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermite gauss_hermite(int order);

// I(X;Y) in bits for X uniform +-1, Y = X + N(0, 1/snr). Orders below 16
// are refused (accuracy floor).
double biawgn_mi(double snr, int quad_order = 96);

// Inverse of the capacity function, to 1e-6 in SNR.
double shannon_limit_biawgn(double rate);
double shannon_limit_bec(double rate);

// Single-symbol MMSE of a +-1 input over AWGN, 1 - E[tanh^2].
double bitwise_mmse(double snr, int quad_order = 96);

struct MmseCurvePoint {
    double snr;
    double uncoded;
    double good_code;  // NaN at the Shannon-limit gap point
};
std::vector<MmseCurvePoint> mmse_curves(const std::vector<double>& snr_grid,
                                        double rate = 0.5);

// Relay benchmarks.
double r_df(const RelayParams& p);
double r_cf(const RelayParams& p);
// minimal dhat2 meeting the CF mutual-information constraint at c_o
double cf_min_dhat2(double delta2, double delta3, double c_o);
double r_df_ub(const RelayParams& p);
RateReport r_ub_good(const RelayParams& p);  // = r_cf, flagged "conditional"

// Interference benchmarks.
double r_mud(const InterferenceParams& p);
double r_sud(const InterferenceParams& p);
double good_code_interference_bound(const InterferenceParams& p);

// Symbol-wise MAP error probability for the interfering bit when the primary
// bit is unknown and uniform.
double bitwise_interference_ber(const InterferenceParams& p);

// Minimal SNR at which the three single-letter constraints of the
// rate-splitting badness check hold, by bisection; throws if infeasible at
// SNR = 1000.
double hk_badness_min_snr(double S, double T, double p_u);

} // namespace badcodes

#endif
