#ifndef BADCODES_INFO_BOUNDS_HPP
#define BADCODES_INFO_BOUNDS_HPP

#include <map>
#include <string>
#include <vector>

#include "badcodes/ensemble.hpp"

namespace badcodes {

// Binary entropy in bits.
double binary_entropy(double x);

// Premises shared by the quantization-noise bounds: channel levels, the
// relay decoder's residual erasure rate, and a right-regular ensemble.
struct BoundContext {
    double delta2 = 0.0;
    double delta3 = 0.0;
    double delta2_bp = 0.0;  // relay DE output (bit-level erasure rate)
    EdgeDistribution ed;

    int right_degree() const { return ed.right_regular_degree(); }
    double design_rate() const { return ed.design_rate(); }
    void validate() const;
};

// Which DE statistic to place in delta2_bp when building a context.
enum class DeStatistic { bit_level, edge_message };

BoundContext make_bound_context(const EdgeDistribution& ed, double delta2,
                                double delta3,
                                DeStatistic stat = DeStatistic::bit_level,
                                int de_iters = 5000);

// Lemma-style bound h(b∘dh) + (1-b∘dh)d3 - h(dh)(1-b) with b = delta2_bp.
double naive_bound(const BoundContext& ctx, double dhat2);

// Growth rate of the expected number of stopping sets of size alpha*n for a
// right-regular ensemble, in bits. Inner infima run in log coordinates;
// throws if the coordinate search exhausts its evaluation budget without
// converging (the message carries the best iterate).
double f_alpha(const BoundContext& ctx, double alpha);
double f_alpha(const std::map<int, double>& lambda_node_fractions,
               int right_degree, double design_rate, double alpha);

// Eq-(51)-style term shared by both refined bounds.
double A_term(const BoundContext& ctx, double dhat2);

// Prefix-infimum envelope of min(I1+, I2+) over a dhat2 grid.
class IPlusCurve {
public:
    IPlusCurve(const BoundContext& ctx, int grid_points = 1024);

    double operator()(double dhat2) const;        // l.d.f. value
    double pointwise_min(double dhat2) const;     // min(I1+, I2+), no envelope
    double i1(double dhat2) const;
    double i2(double dhat2) const;
    double f_at_delta2bp() const { return f_value_; }

    // minimal dhat2 (refined to 1e-6) with envelope <= c_o; 1.0 when none.
    double min_quantization_noise(double c_o) const;

    // CSV rows: dhat2, i_plus, naive, good_code
    std::string curve_csv(int points = 256) const;

private:
    BoundContext ctx_;
    double f_value_;
    std::vector<double> grid_;
    std::vector<double> envelope_;
};

double i_plus(const BoundContext& ctx, double dhat2);
double min_quantization_noise(const BoundContext& ctx, double c_o);

// Theorem-6-style value for "good" code sequences (asymptotic, o(1) dropped).
double good_code_quantization_mi(double delta2, double delta3, double dhat2);

// Asymptotic MAP erasure rate of a "good" rate-R sequence over BEC(delta):
// delta above the Shannon limit, 0 below; the limit point itself is excluded.
double pmap_good(double delta, double R);

} // namespace badcodes

#endif
