#include "badcodes/awgn_ic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace badcodes {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

double logsumexp2(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}
} // namespace

std::vector<double> sample_interference_channel(const std::vector<double>& x1,
                                                const std::vector<double>& x2,
                                                const InterferenceParams& p,
                                                RandomStream& rng) {
    p.validate();
    if (x1.size() != x2.size())
        throw std::invalid_argument("sample_interference_channel: length mismatch");
    std::vector<double> y(x1.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::abs(x1[i]) != 1.0 || std::abs(x2[i]) != 1.0)
            throw std::invalid_argument("sample_interference_channel: inputs not +-1");
        y[i] = x1[i] + p.h * x2[i] + p.sigma * rng.next_gaussian();
    }
    return y;
}

double state_to_variable_llr(double y, double incoming_other, IcRole role,
                             const InterferenceParams& p) {
    const double inv2s2 = 1.0 / (2.0 * p.sigma * p.sigma);
    // log prior weights for the other bit being +1 / -1
    const double lq_pos = -std::log1p(std::exp(-incoming_other));
    const double lq_neg = -std::log1p(std::exp(incoming_other));
    double m_pp, m_pn, m_np, m_nn;  // means: own bit sign x other bit sign
    if (role == IcRole::primary) {
        m_pp = 1.0 + p.h; m_pn = 1.0 - p.h;
        m_np = -1.0 + p.h; m_nn = -1.0 - p.h;
    } else {
        m_pp = 1.0 + p.h; m_pn = p.h - 1.0;
        m_np = 1.0 - p.h; m_nn = -1.0 - p.h;
    }
    const double num = logsumexp2(lq_pos - (y - m_pp) * (y - m_pp) * inv2s2,
                                  lq_neg - (y - m_pn) * (y - m_pn) * inv2s2);
    const double den = logsumexp2(lq_pos - (y - m_np) * (y - m_np) * inv2s2,
                                  lq_neg - (y - m_nn) * (y - m_nn) * inv2s2);
    return num - den;
}

void FactorGraphPair::validate() const {
    if (primary.n != interference.n)
        throw std::invalid_argument("FactorGraphPair: block length mismatch");
    for (int v = 0; v < primary.n; ++v)
        if (primary.var_degree(v) != interference.var_degree(v))
            throw std::invalid_argument(
                "FactorGraphPair: paired variable degrees differ (no-interleaver "
                "hypothesis violated)");
}

FactorGraphPair make_factor_graph_pair(const EdgeDistribution& ed, int n,
                                       RandomStream& rng) {
    FactorGraphPair fg;
    fg.primary = sample_graph(ed, n, rng);
    fg.interference = sample_graph(ed, n, rng);
    fg.validate();
    return fg;
}

SoftIcBpResult soft_ic_bp(const FactorGraphPair& fg, const std::vector<double>& y,
                          const InterferenceParams& p, int t) {
    fg.validate();
    p.validate();
    const int n = fg.primary.n;
    if (static_cast<int>(y.size()) != n)
        throw std::invalid_argument("soft_ic_bp: y length != n");
    if (t < 1) throw std::invalid_argument("soft_ic_bp: t < 1");

    const TannerGraph* graphs[2] = {&fg.primary, &fg.interference};
    std::vector<double> left[2], state_msg[2], v2s[2];
    for (int gph = 0; gph < 2; ++gph) {
        left[gph].assign(graphs[gph]->edge_count, 0.0);
        state_msg[gph].assign(n, 0.0);
        v2s[gph].assign(n, 0.0);
    }
    std::vector<double> right[2];
    right[0].assign(graphs[0]->edge_count, 0.0);
    right[1].assign(graphs[1]->edge_count, 0.0);

    auto clamp_llr = [](double v) { return std::clamp(v, -80.0, 80.0); };

    for (int iter = 0; iter < t; ++iter) {
        // variable-to-state: sum of all incident leftbound code messages
        for (int gph = 0; gph < 2; ++gph) {
            const TannerGraph& g = *graphs[gph];
            for (int v = 0; v < n; ++v) {
                double s = 0.0;
                for (int e : g.var_edges[v]) s += left[gph][e];
                v2s[gph][v] = clamp_llr(s);
            }
        }
        // state-to-variable (parallel: uses the other graph's fresh v2s)
        for (int v = 0; v < n; ++v) {
            state_msg[0][v] =
                state_to_variable_llr(y[v], v2s[1][v], IcRole::primary, p);
            state_msg[1][v] =
                state_to_variable_llr(y[v], v2s[0][v], IcRole::interference, p);
        }
        // rightbound: state message plus all-but-one leftbound
        for (int gph = 0; gph < 2; ++gph) {
            const TannerGraph& g = *graphs[gph];
            for (int v = 0; v < n; ++v) {
                double total = 0.0;
                for (int e : g.var_edges[v]) total += left[gph][e];
                for (int e : g.var_edges[v])
                    right[gph][e] = clamp_llr(state_msg[gph][v] + total - left[gph][e]);
            }
        }
        // leftbound: boxplus of all-but-one rightbound, forward/backward
        for (int gph = 0; gph < 2; ++gph) {
            const TannerGraph& g = *graphs[gph];
            std::vector<double> fwd, bwd;
            for (int c = 0; c < g.m; ++c) {
                const auto& edges = g.chk_edges[c];
                const int dc = static_cast<int>(edges.size());
                if (dc == 1) { left[gph][edges[0]] = 0.0; continue; }
                fwd.assign(dc, 0.0);
                bwd.assign(dc, 0.0);
                fwd[0] = right[gph][edges[0]];
                for (int k = 1; k < dc; ++k)
                    fwd[k] = boxplus(fwd[k - 1], right[gph][edges[k]]);
                bwd[dc - 1] = right[gph][edges[dc - 1]];
                for (int k = dc - 2; k >= 0; --k)
                    bwd[k] = boxplus(bwd[k + 1], right[gph][edges[k]]);
                left[gph][edges[0]] = bwd[1];
                left[gph][edges[dc - 1]] = fwd[dc - 2];
                for (int k = 1; k < dc - 1; ++k)
                    left[gph][edges[k]] = boxplus(fwd[k - 1], bwd[k + 1]);
            }
        }
    }

    SoftIcBpResult res;
    res.primary_decisions.resize(n);
    res.interference_llr.resize(n);
    double err1 = 0.0, err2 = 0.0;
    for (int v = 0; v < n; ++v) {
        double tot1 = state_msg[0][v];
        for (int e : fg.primary.var_edges[v]) tot1 += left[0][e];
        res.primary_decisions[v] = tot1 > 0.0 ? 1 : (tot1 < 0.0 ? -1 : 0);
        if (tot1 < 0.0) err1 += 1.0;
        else if (tot1 == 0.0) err1 += 0.5;
        double tot2 = state_msg[1][v];
        for (int e : fg.interference.var_edges[v]) tot2 += left[1][e];
        res.interference_llr[v] = tot2;
        if (tot2 < 0.0) err2 += 1.0;
        else if (tot2 == 0.0) err2 += 0.5;
    }
    res.primary_ber = err1 / n;
    res.interference_ber = err2 / n;
    return res;
}

namespace {

// Pushforward of y ~ N(1+h, sigma^2) through y -> state_to_variable_llr,
// one column per incoming bin; built on a fine y grid with cell masses
// spread over the spanned LLR bins.
class StateKernel {
public:
    StateKernel(const LlrGrid& grid, const InterferenceParams& p, IcRole role,
                int y_points = 8192, double span = 10.0)
        : grid_(grid), cols_(static_cast<std::size_t>(grid.size()) * grid.size(), 0.0f) {
        const int B = grid.size();
        const double mu = 1.0 + p.h;
        std::vector<double> yg(y_points), cdf(y_points);
        for (int j = 0; j < y_points; ++j) {
            const double z = -span + 2.0 * span * j / (y_points - 1);
            yg[j] = mu + p.sigma * z;
            cdf[j] = 0.5 * std::erfc(-z / kSqrt2);
        }
        std::vector<double> L(y_points);
        const double dl = grid.delta();
        for (int b = 0; b < B; ++b) {
            const double lin = grid.center(b);
            for (int j = 0; j < y_points; ++j)
                L[j] = state_to_variable_llr(yg[j], lin, role, p);
            float* col = &cols_[static_cast<std::size_t>(b) * B];
            auto deposit = [&](double value, double w) {
                const double pos = value / dl + grid.half_bins;
                int lo = static_cast<int>(std::floor(pos));
                double frac = pos - lo;
                if (lo < 0) { lo = 0; frac = 0.0; }
                if (lo >= B - 1) { lo = B - 1; frac = 0.0; }
                col[lo] += static_cast<float>(w * (1.0 - frac));
                if (frac > 0.0) col[lo + 1] += static_cast<float>(w * frac);
            };
            deposit(L.front(), cdf.front());  // lower tail
            for (int j = 0; j + 1 < y_points; ++j) {
                const double w = cdf[j + 1] - cdf[j];
                if (w <= 0.0) continue;
                // spread the cell mass uniformly over [L_j, L_{j+1}]
                const double l0 = L[j], l1 = L[j + 1];
                const double lo = std::min(l0, l1), hi = std::max(l0, l1);
                const int nsub = std::min(
                    8, 1 + static_cast<int>(std::floor((hi - lo) / dl)));
                for (int s = 0; s < nsub; ++s) {
                    const double lv = lo + (hi - lo) * (s + 0.5) / nsub;
                    deposit(lv, w / nsub);
                }
            }
            deposit(L.back(), 1.0 - cdf.back());  // upper tail
        }
    }

    LlrDensity apply(const LlrDensity& in) const {
        const int B = grid_.size();
        LlrDensity out(grid_);
        for (int b = 0; b < B; ++b) {
            const double w = in.mass[b];
            if (w == 0.0) continue;
            const float* col = &cols_[static_cast<std::size_t>(b) * B];
            for (int k = 0; k < B; ++k) out.mass[k] += w * col[k];
        }
        out.normalize();
        return out;
    }

private:
    LlrGrid grid_;
    std::vector<float> cols_;
};

} // namespace

std::string IcDeResult::trajectory_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "iteration,primary_ber,interference_ber\n";
    for (std::size_t i = 0; i < primary_ber.size(); ++i)
        os << (i + 1) << ',' << primary_ber[i] << ',' << interference_ber[i] << '\n';
    return os.str();
}

IcDeResult soft_ic_de(const EdgeDistribution& ed, const InterferenceParams& p,
                      const IcDeOptions& opt) {
    ed.validate();
    p.validate();
    const LlrGrid& grid = opt.grid;
    const auto lt = ed.lambda_node_fractions();
    std::vector<int> capture_degs = opt.capture_degrees;
    if (capture_degs.empty())
        for (const auto& [deg, frac] : lt) capture_degs.push_back(deg);
    int max_deg = ed.max_lambda_degree();
    for (int d : capture_degs) max_deg = std::max(max_deg, d);
    const int max_chk = ed.max_rho_degree();

    const CheckTable table(grid);
    const StateKernel kernel1(grid, p, IcRole::primary);
    const StateKernel kernel2(grid, p, IcRole::interference);

    IcDeResult res;
    LlrDensity lb[2] = {LlrDensity::point_mass_zero(grid),
                        LlrDensity::point_mass_zero(grid)};
    // leftbound power chains (index = number of summed messages)
    std::vector<LlrDensity> lbpow[2];

    auto build_powers = [&](const LlrDensity& base, std::vector<LlrDensity>& out) {
        out.clear();
        out.reserve(max_deg + 1);
        out.push_back(LlrDensity::point_mass_zero(grid));
        for (int i = 1; i <= max_deg; ++i) out.push_back(var_conv(out.back(), base));
    };
    build_powers(lb[0], lbpow[0]);
    build_powers(lb[1], lbpow[1]);

    bool frozen2 = false;
    std::map<int, LlrDensity> frozen_T1;  // state messages into graph 1 at freeze
    LlrDensity stab_density(grid);        // degree-2 primary rightbound singleton
    bool have_stab = false;

    double prev1 = 1.0, prev2 = 1.0;
    int it = 0;
    for (it = 1; it <= opt.max_iters; ++it) {
        // state messages per degree class (no-interleaver pairing: a degree-i
        // variable node faces the other graph's degree-i node)
        std::map<int, LlrDensity> T1, T2;
        for (int deg : capture_degs) {
            if (frozen2 && !frozen_T1.empty()) T1.emplace(deg, frozen_T1.at(deg));
            else T1.emplace(deg, kernel1.apply(lbpow[1][deg]));
            T2.emplace(deg, kernel2.apply(lbpow[0][deg]));
        }
        for (const auto& [deg, frac] : lt) {
            if (T1.count(deg)) continue;
            if (frozen2 && !frozen_T1.empty()) T1.emplace(deg, frozen_T1.at(deg));
            else T1.emplace(deg, kernel1.apply(lbpow[1][deg]));
            T2.emplace(deg, kernel2.apply(lbpow[0][deg]));
        }
        if (frozen2 && frozen_T1.empty()) frozen_T1 = T1;

        // variable-to-state capture (mixture weights are node fractions)
        if (opt.capture) {
            LlrDensity mix1(grid), mix2(grid);
            std::map<int, double> st1d, st2d;
            for (const auto& [deg, frac] : lt)
                for (int k = 0; k < grid.size(); ++k) {
                    mix1.mass[k] += frac * lbpow[0][deg].mass[k];
                    mix2.mass[k] += frac * lbpow[1][deg].mass[k];
                }
            for (int deg : capture_degs) {
                st1d[deg] = lbpow[0][deg].phi();
                st2d[deg] = lbpow[1][deg].phi();
            }
            res.capture.st1.push_back(mix1.phi());
            res.capture.st2.push_back(mix2.phi());
            res.capture.st1_deg.push_back(std::move(st1d));
            res.capture.st2_deg.push_back(std::move(st2d));
        }

        // rightbound mixtures
        LlrDensity right1(grid), right2(grid);
        std::map<int, double> s1d, s2d;
        for (const auto& [deg, frac] : lt) {
            const double lam = ed.lambda.at(deg);
            LlrDensity r1 = var_conv(T1.at(deg), lbpow[0][deg - 1]);
            LlrDensity r2 = var_conv(T2.at(deg), lbpow[1][deg - 1]);
            for (int k = 0; k < grid.size(); ++k) {
                right1.mass[k] += lam * r1.mass[k];
                right2.mass[k] += lam * r2.mass[k];
            }
        }
        if (opt.capture) {
            for (int deg : capture_degs) {
                LlrDensity r1 = var_conv(T1.at(deg), lbpow[0][deg - 1]);
                s1d[deg] = r1.phi();
                s2d[deg] = var_conv(T2.at(deg), lbpow[1][deg - 1]).phi();
                if (deg == 2) { stab_density = std::move(r1); have_stab = true; }
            }
            res.capture.s1.push_back(right1.phi());
            res.capture.s2.push_back(right2.phi());
            res.capture.s1_deg.push_back(std::move(s1d));
            res.capture.s2_deg.push_back(std::move(s2d));
        }

        // leftbound through the check side
        auto check_mix = [&](const LlrDensity& r) {
            std::vector<LlrDensity> pow;
            pow.reserve(max_chk);
            pow.push_back(r);  // one message
            for (int j = 2; j < max_chk; ++j) pow.push_back(table.conv(pow.back(), r));
            LlrDensity out(grid);
            for (const auto& [deg, frac] : ed.rho)
                for (int k = 0; k < grid.size(); ++k)
                    out.mass[k] += frac * pow[deg - 2].mass[k];
            out.normalize();
            return out;
        };
        if (!frozen2) lb[1] = check_mix(right2);
        lb[0] = check_mix(right1);

        build_powers(lb[0], lbpow[0]);
        if (!frozen2) build_powers(lb[1], lbpow[1]);

        // decisions: state message plus all incident leftbound messages
        LlrDensity dec1(grid), dec2(grid);
        for (const auto& [deg, frac] : lt) {
            const LlrDensity d1 = var_conv(T1.at(deg), lbpow[0][deg]);
            const LlrDensity d2 = var_conv(T2.at(deg), lbpow[1][deg]);
            for (int k = 0; k < grid.size(); ++k) {
                dec1.mass[k] += frac * d1.mass[k];
                dec2.mass[k] += frac * d2.mass[k];
            }
        }
        const double ber1 = dec1.ber();
        const double ber2 = dec2.ber();
        res.primary_ber.push_back(ber1);
        res.interference_ber.push_back(ber2);

        res.max_symmetry_violation = std::max(
            {res.max_symmetry_violation, right1.symmetry_violation(),
             right2.symmetry_violation(), lb[0].symmetry_violation(),
             lb[1].symmetry_violation(), dec1.symmetry_violation(),
             dec2.symmetry_violation()});

        const double neg_sat = std::max(
            std::max(right1.saturation_mass_neg(), right2.saturation_mass_neg()),
            std::max(dec1.saturation_mass_neg(), dec2.saturation_mass_neg()));
        res.max_neg_saturation = std::max(res.max_neg_saturation, neg_sat);
        if (neg_sat > 1e-3)
            throw std::runtime_error(
                "soft_ic_de: negative saturation mass exceeds 1e-3; increase l_max");

        if (opt.enforce_partial && !frozen2 &&
            (opt.capture ? res.capture.s2.back() : right2.phi()) <
                opt.partial_threshold)
            frozen2 = true;

        if (it > 3 && std::abs(ber1 - prev1) < opt.stop_tol &&
            std::abs(ber2 - prev2) < opt.stop_tol) {
            res.converged = true;
            break;
        }
        prev1 = ber1;
        prev2 = ber2;
    }
    res.iterations = std::min(it, opt.max_iters);
    if (opt.capture && have_stab)
        res.capture.stability_rhs = stab_density.mean_exp_neg_half();
    return res;
}

} // namespace badcodes
