#include "badcodes/llr_density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace badcodes {

namespace {

// iterative radix-2 FFT, in place
void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? -2.0 : 2.0) * 3.14159265358979323846 / len;
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

} // namespace

LlrDensity LlrDensity::point_mass_zero(const LlrGrid& g) {
    LlrDensity d(g);
    d.mass[g.zero_bin()] = 1.0;
    return d;
}

LlrDensity LlrDensity::point_mass(const LlrGrid& g, double value) {
    LlrDensity d(g);
    const double pos = value / g.delta() + g.half_bins;
    int lo = static_cast<int>(std::floor(pos));
    const double frac = pos - lo;
    lo = std::clamp(lo, 0, g.size() - 1);
    const int hi = std::clamp(lo + 1, 0, g.size() - 1);
    d.mass[lo] += 1.0 - frac;
    d.mass[hi] += frac;
    return d;
}

double LlrDensity::sum() const {
    double s = 0.0;
    for (double v : mass) s += v;
    return s;
}

void LlrDensity::normalize() {
    const double s = sum();
    if (s <= 0.0) throw std::runtime_error("LlrDensity::normalize: empty density");
    for (double& v : mass) v /= s;
}

double LlrDensity::ber() const {
    double s = 0.0;
    for (int k = 0; k < grid.zero_bin(); ++k) s += mass[k];
    return s + 0.5 * mass[grid.zero_bin()];
}

double LlrDensity::phi() const {
    double s = 0.0;
    for (int k = 0; k < grid.size(); ++k) {
        const double l = grid.center(k);
        s += mass[k] * (std::log1p(std::exp(-std::abs(l))) + std::max(-l, 0.0));
    }
    return s;
}

double LlrDensity::mean_exp_neg_half() const {
    double s = 0.0;
    for (int k = 0; k < grid.size(); ++k)
        s += mass[k] * std::exp(-0.5 * grid.center(k));
    return s;
}

double LlrDensity::symmetry_violation() const {
    double worst = 0.0;
    for (int k = 1; k < grid.half_bins; ++k) {
        const int pos = grid.zero_bin() + k;
        const int neg = grid.zero_bin() - k;
        const double expect = std::exp(-grid.center(pos)) * mass[pos];
        worst = std::max(worst, std::abs(mass[neg] - expect));
    }
    return worst;
}

LlrDensity var_conv(const LlrDensity& a, const LlrDensity& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("var_conv: grid mismatch");
    const int B = a.grid.size();
    std::size_t n = 1;
    while (n < static_cast<std::size_t>(2 * B)) n <<= 1;
    std::vector<std::complex<double>> fa(n), fb(n);
    for (int i = 0; i < B; ++i) {
        fa[i] = a.mass[i];
        fb[i] = b.mass[i];
    }
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft(fa, true);

    LlrDensity out(a.grid);
    const int K = a.grid.half_bins;
    for (int s = 0; s < 2 * B - 1; ++s) {
        const double v = std::max(fa[s].real(), 0.0);
        if (v == 0.0) continue;
        const int val = s - 2 * K;  // sum index relative to center
        const int tgt = std::clamp(val, -K, K) + K;
        out.mass[tgt] += v;
    }
    out.normalize();
    return out;
}

double boxplus(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double s = (a > 0) == (b > 0) ? 1.0 : -1.0;
    const double aa = std::abs(a), ab = std::abs(b);
    const double mn = std::min(aa, ab);
    const double corr =
        std::log1p(std::exp(-(aa + ab))) - std::log1p(std::exp(-std::abs(aa - ab)));
    return s * (mn + corr);
}

CheckTable::CheckTable(const LlrGrid& g) : grid_(g) {
    const int K = g.half_bins;
    const double d = g.delta();
    idx_.resize(static_cast<std::size_t>(K + 1) * (K + 1));
    wlo_.resize(idx_.size());
    for (int u = 0; u <= K; ++u) {
        for (int v = 0; v <= K; ++v) {
            const double t = boxplus(u * d, v * d);  // in [0, min(u,v)*d]
            double pos = t / d;
            int lo = static_cast<int>(std::floor(pos));
            double frac = pos - lo;
            if (lo >= K) { lo = K; frac = 0.0; }
            idx_[static_cast<std::size_t>(u) * (K + 1) + v] =
                static_cast<std::uint16_t>(lo);
            wlo_[static_cast<std::size_t>(u) * (K + 1) + v] =
                static_cast<float>(1.0 - frac);
        }
    }
}

LlrDensity CheckTable::conv(const LlrDensity& a, const LlrDensity& b) const {
    if (!(a.grid == grid_) || !(b.grid == grid_))
        throw std::invalid_argument("CheckTable::conv: grid mismatch");
    const int K = grid_.half_bins;
    const int Z = grid_.zero_bin();

    // split into signed magnitude lanes
    std::vector<double> ap(K + 1), an(K + 1), bp(K + 1), bn(K + 1);
    for (int k = 1; k <= K; ++k) {
        ap[k] = a.mass[Z + k];
        an[k] = a.mass[Z - k];
        bp[k] = b.mass[Z + k];
        bn[k] = b.mass[Z - k];
    }
    const double a0 = a.mass[Z], b0 = b.mass[Z];

    std::vector<double> outp(K + 1, 0.0), outn(K + 1, 0.0);
    double out0 = a0 * b.sum() + (a.sum() - a0) * b0;

    for (int u = 1; u <= K; ++u) {
        const double apu = ap[u], anu = an[u];
        if (apu == 0.0 && anu == 0.0) continue;
        const std::size_t row = static_cast<std::size_t>(u) * (K + 1);
        for (int v = 1; v <= K; ++v) {
            const double same = apu * bp[v] + anu * bn[v];
            const double opp = apu * bn[v] + anu * bp[v];
            if (same == 0.0 && opp == 0.0) continue;
            const int lo = idx_[row + v];
            const double w = wlo_[row + v];
            if (lo == 0) {
                // the interpolated share at magnitude zero is sign-free
                out0 += (same + opp) * w;
                outp[1] += same * (1.0 - w);
                outn[1] += opp * (1.0 - w);
            } else {
                const int hi = std::min(lo + 1, K);
                outp[lo] += same * w;
                outp[hi] += same * (1.0 - w);
                outn[lo] += opp * w;
                outn[hi] += opp * (1.0 - w);
            }
        }
    }

    LlrDensity out(grid_);
    out.mass[Z] = out0;
    for (int k = 1; k <= K; ++k) {
        out.mass[Z + k] = outp[k];
        out.mass[Z - k] = outn[k];
    }
    out.normalize();
    return out;
}

} // namespace badcodes
