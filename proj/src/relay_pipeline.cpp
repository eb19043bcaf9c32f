#include "badcodes/relay_pipeline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "badcodes/info_bounds.hpp"

namespace badcodes {

NoiseTriple make_noise(const RelayParams& p, std::size_t n, RandomStream& rng) {
    p.validate();
    NoiseTriple nt;
    nt.e2 = sample_noise_word(n, p.delta2, rng);
    nt.e3 = sample_noise_word(n, p.delta3, rng);
    nt.ehat2 = sample_noise_word(n, p.dhat2, rng);
    return nt;
}

namespace {
ErasureWord decode(const TannerGraph& g, const ErasureWord& y, int t) {
    if (t < 0) return peeling_decode(g, y);
    return bp_decode(g, y, t).decisions;
}
} // namespace

TrialOutcome soft_df_bp_trial(const TannerGraph& g, const NoiseTriple& noise, int t) {
    // all-zero codeword: channel outputs equal the noise patterns
    const ErasureWord& y2 = noise.e2;
    const ErasureWord& y3 = noise.e3;

    TrialOutcome out;
    out.relay_output = decode(g, y2, t);
    out.quantized = erasure_add(out.relay_output, noise.ehat2);
    out.destination_output = decode(g, erasure_mul(out.quantized, y3), t);
    out.relay_erasure_rate = out.relay_output.erasure_rate();
    out.quantized_erasure_rate = out.quantized.erasure_rate();
    out.destination_erasure_rate = out.destination_output.erasure_rate();
    return out;
}

TrialOutcome soft_df_bp_trial(const TannerGraph& g, const RelayParams& p, int t,
                              RandomStream& rng) {
    const NoiseTriple noise = make_noise(p, g.n, rng);
    return soft_df_bp_trial(g, noise, t);
}

TrialOutcome sim_bp_trial(const TannerGraph& g, const NoiseTriple& noise, int t) {
    if (static_cast<int>(noise.e2.size()) != g.n ||
        static_cast<int>(noise.e3.size()) != g.n ||
        static_cast<int>(noise.ehat2.size()) != g.n)
        throw std::invalid_argument("sim_bp_trial: noise length != n");
    if (t < 1) throw std::invalid_argument("sim_bp_trial: t < 1");

    const ErasureWord& y2 = noise.e2;
    const ErasureWord& y3 = noise.e3;
    const int E = g.edge_count;
    constexpr ErasureSymbol kErased = ErasureSymbol::erased;

    std::vector<ErasureSymbol> r2(E), r3(E), l2(E, kErased), l3(E, kErased);

    auto var_pass = [&](int iter) {
        for (int v = 0; v < g.n; ++v) {
            // relay coordinate: y2 * prod l2, excluding one edge at a time
            ErasureSymbol rep2 = y2[v];
            int known2 = is_erased(y2[v]) ? 0 : 1;
            // destination coordinate base: y3 * prod l3 (the quantized relay
            // message is multiplied per edge below)
            ErasureSymbol rep3 = y3[v];
            int known3 = is_erased(y3[v]) ? 0 : 1;
            if (iter > 0) {
                for (int e : g.var_edges[v]) {
                    rep2 = erasure_mul(rep2, l2[e]);
                    if (!is_erased(l2[e])) ++known2;
                    rep3 = erasure_mul(rep3, l3[e]);
                    if (!is_erased(l3[e])) ++known3;
                }
            }
            for (int e : g.var_edges[v]) {
                int k2 = known2, k3 = known3;
                if (iter > 0 && !is_erased(l2[e])) --k2;
                if (iter > 0 && !is_erased(l3[e])) --k3;
                r2[e] = k2 > 0 ? rep2 : kErased;
                // rhat2 = r2 + ehat2 at this node, then multiply into the
                // destination product
                const ErasureSymbol rhat2 = erasure_add(r2[e], noise.ehat2[v]);
                ErasureSymbol val = k3 > 0 ? rep3 : kErased;
                r3[e] = erasure_mul(rhat2, val);
            }
        }
    };
    auto chk_pass = [&](const std::vector<ErasureSymbol>& rin,
                        std::vector<ErasureSymbol>& lout) {
        for (int c = 0; c < g.m; ++c) {
            int erased = 0, parity = 0;
            for (int e : g.chk_edges[c]) {
                if (is_erased(rin[e])) ++erased;
                else parity ^= static_cast<int>(rin[e]);
            }
            for (int e : g.chk_edges[c]) {
                const int other = erased - (is_erased(rin[e]) ? 1 : 0);
                if (other > 0) lout[e] = kErased;
                else {
                    const int p =
                        parity ^ (is_erased(rin[e]) ? 0 : static_cast<int>(rin[e]));
                    lout[e] = static_cast<ErasureSymbol>(p & 1);
                }
            }
        }
    };

    // discovery is monotone in both coordinates, so a stable iteration is a
    // fixed point and stopping early does not change the outputs
    int prev_erased = 2 * E + 1;
    for (int iter = 0; iter < t; ++iter) {
        var_pass(iter);
        chk_pass(r2, l2);
        chk_pass(r3, l3);
        int le = 0;
        for (int e = 0; e < E; ++e)
            le += (is_erased(l2[e]) ? 1 : 0) + (is_erased(l3[e]) ? 1 : 0);
        if (iter > 0 && le == prev_erased) break;
        prev_erased = le;
    }

    TrialOutcome out;
    ErasureWord y2bp(g.n), y3bp(g.n);
    for (int v = 0; v < g.n; ++v) {
        ErasureSymbol rep2 = y2[v];
        for (int e : g.var_edges[v]) rep2 = erasure_mul(rep2, l2[e]);
        y2bp[v] = rep2;
        // final: (y2bp + ehat2) * y3 * prod l3
        ErasureSymbol rep3 = erasure_mul(erasure_add(rep2, noise.ehat2[v]), y3[v]);
        for (int e : g.var_edges[v]) rep3 = erasure_mul(rep3, l3[e]);
        y3bp[v] = rep3;
    }
    out.relay_output = std::move(y2bp);
    out.simbp_output = std::move(y3bp);
    out.relay_erasure_rate = out.relay_output.erasure_rate();
    out.simbp_erasure_rate = out.simbp_output.erasure_rate();
    return out;
}

std::string CampaignResult::report_json() const {
    std::ostringstream os;
    os.precision(12);
    os << "{\"delta2\":" << params.delta2 << ",\"delta3\":" << params.delta3
       << ",\"c_o\":" << params.c_o << ",\"dhat2\":" << params.dhat2
       << ",\"n\":" << n << ",\"t\":" << t << ",\"trials\":" << trials
       << ",\"seed\":" << seed
       << ",\"mean_destination_erasure\":" << mean_destination_erasure
       << ",\"var_destination_erasure\":" << var_destination_erasure
       << ",\"ci95_halfwidth\":" << ci95_halfwidth
       << ",\"mean_relay_erasure\":" << mean_relay_erasure
       << ",\"degradedness_violations\":" << degradedness_violations << "}";
    return os.str();
}

std::string CampaignResult::per_trial_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "trial,relay,quantized,destination,simbp\n";
    for (std::size_t i = 0; i < per_trial.size(); ++i) {
        const auto& tr = per_trial[i];
        os << i << ',' << tr.relay_erasure_rate << ',' << tr.quantized_erasure_rate
           << ',' << tr.destination_erasure_rate << ',' << tr.simbp_erasure_rate
           << '\n';
    }
    return os.str();
}

CampaignResult run_campaign(const EdgeDistribution& ed, int n,
                            const RelayParams& p, int t, int trials,
                            std::uint64_t seed, int threads, bool keep_trials,
                            bool with_simbp) {
    if (trials < 1) throw std::invalid_argument("run_campaign: trials < 1");
    p.validate();
    ed.validate();

    CampaignResult res;
    res.params = p;
    res.n = n;
    res.t = t;
    res.trials = trials;
    res.seed = seed;

    std::vector<TrialOutcome> outcomes(trials);
    std::vector<int> violations(trials, 0);
    RandomStream root(seed);

    auto worker = [&](int first, int step) {
        for (int k = first; k < trials; k += step) {
            RandomStream rng = root.split(static_cast<std::uint64_t>(k));
            const TannerGraph g = sample_graph(ed, n, rng);
            const NoiseTriple noise = make_noise(p, n, rng);
            TrialOutcome out = soft_df_bp_trial(g, noise, t);
            int bad = 0;
            if (!is_degraded(out.quantized, out.relay_output)) ++bad;
            if (with_simbp) {
                const int tsim = t < 0 ? 2 * n : t;
                const TrialOutcome sim = sim_bp_trial(g, noise, std::min(tsim, 4 * n));
                out.simbp_output = sim.simbp_output;
                out.simbp_erasure_rate = sim.simbp_erasure_rate;
                if (!is_degraded(out.simbp_output, out.destination_output)) ++bad;
            }
            violations[k] = bad;
            outcomes[k] = std::move(out);
        }
    };

    if (threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w, threads);
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sumsq = 0.0, relay_sum = 0.0;
    for (int k = 0; k < trials; ++k) {
        sum += outcomes[k].destination_erasure_rate;
        sumsq += outcomes[k].destination_erasure_rate *
                 outcomes[k].destination_erasure_rate;
        relay_sum += outcomes[k].relay_erasure_rate;
        res.degradedness_violations += violations[k];
    }
    res.mean_destination_erasure = sum / trials;
    res.var_destination_erasure =
        trials > 1 ? (sumsq - sum * sum / trials) / (trials - 1) : 0.0;
    res.mean_relay_erasure = relay_sum / trials;
    const double pool_n = static_cast<double>(n) * trials;
    res.ci95_halfwidth = 1.96 * std::sqrt(std::max(
        res.mean_destination_erasure * (1.0 - res.mean_destination_erasure), 0.0) /
        pool_n);
    if (keep_trials) res.per_trial = std::move(outcomes);
    return res;
}

double achievable_rate_from_epsilon(double rate, double epsilon) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("achievable_rate_from_epsilon: bad rate");
    if (epsilon < 0.0 || epsilon > rate)
        throw std::invalid_argument("achievable_rate_from_epsilon: epsilon outside [0, rate]");
    if (epsilon == 0.0) return rate;
    return rate * (1.0 - binary_entropy(epsilon / rate));
}

} // namespace badcodes
