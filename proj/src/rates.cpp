#include "badcodes/rates.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "badcodes/erasure.hpp"
#include "badcodes/info_bounds.hpp"

namespace badcodes {

namespace {
constexpr double kLog2 = 0.69314718055994530941723212145818;
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

double gauss_entropy_bits(double sigma) {
    return 0.5 * std::log(2.0 * kPi * std::exp(1.0) * sigma * sigma) / kLog2;
}

// differential entropy (bits) of a Gaussian mixture, component-wise quadrature
double mixture_entropy_bits(const std::vector<double>& means,
                            const std::vector<double>& probs, double sigma,
                            int order) {
    const GaussHermite gh = gauss_hermite(order);
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
    double H = 0.0;
    for (std::size_t c = 0; c < means.size(); ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
            const double y = means[c] + sigma * kSqrt2 * gh.nodes[k];
            double p = 0.0;
            for (std::size_t j = 0; j < means.size(); ++j) {
                const double z = (y - means[j]) / sigma;
                p += probs[j] * norm * std::exp(-0.5 * z * z);
            }
            acc += gh.weights[k] * (-std::log(p));
        }
        H += probs[c] * acc / std::sqrt(kPi);
    }
    return H / kLog2;
}
} // namespace

void RelayParams::validate() const {
    check_probability(delta2, "RelayParams delta2");
    check_probability(delta3, "RelayParams delta3");
    check_probability(dhat2, "RelayParams dhat2");
    if (c_o < 0.0) throw std::invalid_argument("RelayParams: c_o < 0");
}

void InterferenceParams::validate() const {
    if (!(h > 0.0 && h < 1.0))
        throw std::invalid_argument("InterferenceParams: h outside (0,1)");
    if (!(sigma > 0.0))
        throw std::invalid_argument("InterferenceParams: sigma <= 0");
}

GaussHermite gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite: order < 1");
    // Newton iteration on the Hermite recurrence (nodes of H_n).
    GaussHermite gh;
    gh.nodes.resize(order);
    gh.weights.resize(order);
    const int m = (order + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * order + 1.0) -
                1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(order), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * gh.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * gh.nodes[1];
        else
            z = 2.0 * z - gh.nodes[i - 2];
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            // orthonormal Hermite recurrence
            double p1 = 1.0 / std::pow(kPi, 0.25);
            double p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * order) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        gh.nodes[i] = z;
        gh.nodes[order - 1 - i] = -z;
        gh.weights[i] = 2.0 / (pp * pp);
        gh.weights[order - 1 - i] = gh.weights[i];
    }
    return gh;
}

double biawgn_mi(double snr, int quad_order) {
    if (quad_order < 16)
        throw std::invalid_argument("biawgn_mi: quadrature order < 16");
    if (snr < 0.0) throw std::invalid_argument("biawgn_mi: snr < 0");
    if (snr == 0.0) return 0.0;
    const GaussHermite gh = gauss_hermite(quad_order);
    const double sigma = 1.0 / std::sqrt(snr);
    double acc = 0.0;
    for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
        const double y = 1.0 + sigma * kSqrt2 * gh.nodes[k];
        const double llr = 2.0 * y / (sigma * sigma);
        // log2(1 + e^-llr), stable for both signs
        const double v = std::log1p(std::exp(-std::abs(llr))) + std::max(-llr, 0.0);
        acc += gh.weights[k] * v;
    }
    return 1.0 - acc / std::sqrt(kPi) / kLog2;
}

double shannon_limit_biawgn(double rate) {
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("shannon_limit_biawgn: rate outside (0,1)");
    double lo = 1e-9, hi = 1.0;
    while (biawgn_mi(hi) < rate) hi *= 2.0;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (biawgn_mi(mid) < rate) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double shannon_limit_bec(double rate) {
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("shannon_limit_bec: rate outside (0,1)");
    return 1.0 - rate;
}

double bitwise_mmse(double snr, int quad_order) {
    if (snr < 0.0) throw std::invalid_argument("bitwise_mmse: snr < 0");
    if (snr == 0.0) return 1.0;
    const GaussHermite gh = gauss_hermite(quad_order);
    const double sigma = 1.0 / std::sqrt(snr);
    double acc = 0.0;
    for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
        const double y = 1.0 + sigma * kSqrt2 * gh.nodes[k];
        const double t = std::tanh(y / (sigma * sigma));
        acc += gh.weights[k] * t * t;
    }
    return 1.0 - acc / std::sqrt(kPi);
}

std::vector<MmseCurvePoint> mmse_curves(const std::vector<double>& snr_grid,
                                        double rate) {
    const double snr_star = shannon_limit_biawgn(rate);
    std::vector<MmseCurvePoint> out;
    out.reserve(snr_grid.size());
    for (double snr : snr_grid) {
        MmseCurvePoint p;
        p.snr = snr;
        p.uncoded = bitwise_mmse(snr);
        if (snr < snr_star) p.good_code = p.uncoded;
        else if (snr > snr_star) p.good_code = 0.0;
        else p.good_code = std::numeric_limits<double>::quiet_NaN();
        out.push_back(p);
    }
    return out;
}

double r_df(const RelayParams& p) {
    p.validate();
    return std::min(1.0 - p.delta2, 1.0 - p.delta3 + p.c_o);
}

double cf_min_dhat2(double delta2, double delta3, double c_o) {
    auto lhs = [&](double dh) {
        return good_code_quantization_mi(delta2, delta3, dh);
    };
    // the constraint is not proven monotone; scan for the first satisfied
    // cell, then bisect inside it
    const int N = 4096;
    int k = 0;
    while (k <= N && lhs(static_cast<double>(k) / N) > c_o) ++k;
    if (k > N) return 1.0;
    if (k == 0) return 0.0;
    double lo = static_cast<double>(k - 1) / N, hi = static_cast<double>(k) / N;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (lhs(mid) <= c_o) hi = mid;
        else lo = mid;
    }
    return hi;
}

double r_cf(const RelayParams& p) {
    p.validate();
    const double dh = cf_min_dhat2(p.delta2, p.delta3, p.c_o);
    return 1.0 - circ(p.delta2, dh) * p.delta3;
}

double r_df_ub(const RelayParams& p) {
    p.validate();
    return 1.0 - p.delta2;
}

RateReport r_ub_good(const RelayParams& p) {
    RateReport rep;
    rep.name = "R_UB";
    rep.value = r_cf(p);
    std::ostringstream os;
    os << "delta2=" << p.delta2 << " delta3=" << p.delta3 << " c_o=" << p.c_o;
    rep.inputs = os.str();
    rep.flags = "conditional";
    return rep;
}

double r_mud(const InterferenceParams& p) {
    p.validate();
    const double i_x2_given_x1 = biawgn_mi(p.snr_cross(), 128);
    const std::vector<double> means{1 + p.h, 1 - p.h, -1 + p.h, -1 - p.h};
    const std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
    const double hy = mixture_entropy_bits(means, probs, p.sigma, 192);
    const double i_joint = hy - gauss_entropy_bits(p.sigma);
    return std::min(i_x2_given_x1, 0.5 * i_joint);
}

double r_sud(const InterferenceParams& p) {
    p.validate();
    const std::vector<double> means{1 + p.h, 1 - p.h, -1 + p.h, -1 - p.h};
    const std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
    const double hy = mixture_entropy_bits(means, probs, p.sigma, 192);
    const double hy_x1 =
        mixture_entropy_bits({1 + p.h, 1 - p.h}, {0.5, 0.5}, p.sigma, 192);
    return hy - hy_x1;
}

double good_code_interference_bound(const InterferenceParams& p) {
    return std::max(r_mud(p), r_sud(p));
}

double bitwise_interference_ber(const InterferenceParams& p) {
    p.validate();
    // 1/2 * int min(p(y|x2=+1), p(y|x2=-1)) dy on a wide trapezoid grid
    const double lo = -1.0 - p.h - 12.0 * p.sigma;
    const double hi = 1.0 + p.h + 12.0 * p.sigma;
    const int N = 200000;
    const double step = (hi - lo) / N;
    const double norm = 1.0 / (p.sigma * std::sqrt(2.0 * kPi));
    auto cond = [&](double y, double x2) {
        const double a = (y - (1.0 + p.h * x2)) / p.sigma;
        const double b = (y - (-1.0 + p.h * x2)) / p.sigma;
        return 0.5 * norm * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
    };
    double acc = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double y = lo + k * step;
        const double v = std::min(cond(y, 1.0), cond(y, -1.0));
        acc += (k == 0 || k == N) ? 0.5 * v : v;
    }
    return 0.5 * acc * step;
}

double hk_badness_min_snr(double S, double T, double p_u) {
    if (S < 0.0 || T < 0.0)
        throw std::invalid_argument("hk_badness_min_snr: negative rate");
    if (!(p_u > 0.0 && p_u < 1.0))
        throw std::invalid_argument("hk_badness_min_snr: p_u outside (0,1)");
    if (S == 0.0 && T == 0.0) return 0.0;
    auto feasible = [&](double snr) {
        const double sigma = 1.0 / std::sqrt(snr);
        const double hg = gauss_entropy_bits(sigma);
        const double i_u =
            mixture_entropy_bits({1.0, -1.0}, {1.0 - p_u, p_u}, sigma, 192) - hg;
        const double i_w =
            mixture_entropy_bits({1.0, -1.0}, {0.5, 0.5}, sigma, 192) - hg;
        const double i_uw = i_w;  // Y depends on (U,W) only through X
        return S <= i_u && T <= i_w && S + T <= i_uw;
    };
    if (!feasible(1000.0))
        throw std::runtime_error("hk_badness_min_snr: infeasible at SNR=1000");
    double lo = 1e-6, hi = 1000.0;
    while (hi - lo > 1e-7 * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace badcodes
