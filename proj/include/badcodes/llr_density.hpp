#ifndef BADCODES_LLR_DENSITY_HPP
#define BADCODES_LLR_DENSITY_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace badcodes {

// Uniform LLR grid: bin centers k*delta for k in [-half_bins, half_bins];
// the two extreme bins also absorb clamped overflow (saturation).
struct LlrGrid {
    double l_max = 30.0;
    int half_bins = 2048;

    int size() const { return 2 * half_bins + 1; }
    double delta() const { return l_max / half_bins; }
    double center(int idx) const { return (idx - half_bins) * delta(); }
    int zero_bin() const { return half_bins; }

    bool operator==(const LlrGrid& o) const {
        return l_max == o.l_max && half_bins == o.half_bins;
    }
};

struct LlrDensity {
    LlrGrid grid;
    std::vector<double> mass;

    explicit LlrDensity(const LlrGrid& g = LlrGrid{})
        : grid(g), mass(g.size(), 0.0) {}

    static LlrDensity point_mass_zero(const LlrGrid& g);
    static LlrDensity point_mass(const LlrGrid& g, double value);

    double sum() const;
    void normalize();
    // error probability: mass below zero plus half the zero bin
    double ber() const;
    // E[log(1 + e^-L)], natural log
    double phi() const;
    // E[e^{-L/2}]
    double mean_exp_neg_half() const;
    // max_k |m(-k) - e^{-l_k} m(k)| over interior bins
    double symmetry_violation() const;
    double saturation_mass_neg() const { return mass.front(); }
    double saturation_mass_pos() const { return mass.back(); }
};

// Density of the sum of two independent quantized LLRs; overflow clamps
// into the saturation bins.
LlrDensity var_conv(const LlrDensity& a, const LlrDensity& b);

// Quantized check-node combination table: magnitudes combine through the
// boxplus rule, signs multiply; targets use two-point interpolation binning.
class CheckTable {
public:
    explicit CheckTable(const LlrGrid& g);
    LlrDensity conv(const LlrDensity& a, const LlrDensity& b) const;

private:
    LlrGrid grid_;
    std::vector<std::uint16_t> idx_;  // (K+1)^2 magnitude-pair targets
    std::vector<float> wlo_;          // weight on idx (rest on idx+1)
};

// exact two-argument boxplus on real LLRs
double boxplus(double a, double b);

} // namespace badcodes

#endif
