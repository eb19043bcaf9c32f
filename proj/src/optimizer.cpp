#include "badcodes/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace badcodes {

namespace {

std::vector<int> default_candidates() {
    std::vector<int> out;
    for (int d = 2; d <= 30; ++d) out.push_back(d);
    out.push_back(50);
    out.push_back(100);
    return out;
}

std::vector<int> support_union(const EdgeDistribution& seed,
                               const std::vector<int>& extra) {
    std::set<int> s;
    for (const auto& [deg, frac] : seed.lambda) s.insert(deg);
    for (int d : extra.empty() ? default_candidates() : extra)
        if (d >= 2) s.insert(d);
    return {s.begin(), s.end()};
}

EdgeDistribution lambda_from_solution(const std::vector<int>& degrees,
                                      const std::vector<double>& x,
                                      const std::map<int, double>& rho) {
    std::map<int, double> lam;
    double sum = 0.0;
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        if (x[k] > 1e-12) {
            lam[degrees[k]] = x[k];
            sum += x[k];
        }
    }
    EdgeDistribution ed;
    for (auto& [deg, frac] : lam) ed.lambda[deg] = frac / sum;
    ed.rho = rho;
    return ed;
}

} // namespace

std::string OptimizerState::log_json() const {
    std::ostringstream os;
    os.precision(12);
    os << "[";
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (i) os << ",";
        os << "{\"design_rate\":" << log[i].design_rate
           << ",\"dhat2\":" << log[i].dhat2
           << ",\"admissible\":" << (log[i].admissible ? "true" : "false")
           << ",\"verification\":" << log[i].verification_value
           << ",\"min_slack\":" << log[i].min_constraint_slack
           << ",\"lambda\":" << log[i].ed.to_json() << "}";
    }
    os << "]";
    return os.str();
}

double phi_functional(const LlrDensity& d) { return d.phi(); }

OptimizerState optimize_relay(const EdgeDistribution& seed, const RelayParams& p,
                              const RelayOptimizerOptions& opt) {
    seed.validate();
    p.validate();

    const std::vector<int> degrees = support_union(seed, opt.candidate_degrees);
    const int nv = static_cast<int>(degrees.size());

    auto derive_dhat2 = [&](const EdgeDistribution& ed) {
        const BoundContext ctx =
            make_bound_context(ed, p.delta2, p.delta3, opt.bound_statistic);
        return min_quantization_noise(ctx, p.c_o);
    };
    auto verify = [&](const EdgeDistribution& ed, double dhat2) {
        const SimDeResult r = sim_de(ed, p.delta2, p.delta3, dhat2, 2000);
        return r.final_erasure;
    };

    OptimizerState state;
    state.current = seed;
    state.current_dhat2 = derive_dhat2(seed);
    {
        const double pe = verify(seed, state.current_dhat2);
        if (pe > opt.eps_target) {
            std::ostringstream os;
            os << "optimize_relay: seed not admissible (sim-DE erasure " << pe
               << " > " << opt.eps_target << " at dhat2 " << state.current_dhat2
               << ")";
            throw std::invalid_argument(os.str());
        }
        OptimizerIteration it;
        it.ed = seed;
        it.design_rate = seed.design_rate();
        it.dhat2 = state.current_dhat2;
        it.admissible = true;
        it.verification_value = pe;
        state.log.push_back(it);
    }

    for (int round = 0; round < opt.max_iters; ++round) {
        const EdgeDistribution& cur = state.current;
        const double dhat2 = state.current_dhat2;

        // sim-DE trajectory with per-degree singletons, via the pair algebra
        const PairDensity p0 = pair_init(p.delta2, p.delta3);
        PairDensity pr = pair_gamma(p0, dhat2);
        PairDensity prev_pr = pr;

        LpProblem lp;
        lp.objective.resize(nv);
        for (int k = 0; k < nv; ++k) lp.objective[k] = 1.0 / degrees[k];
        lp.a_eq.push_back(std::vector<double>(nv, 1.0));
        lp.b_eq.push_back(1.0);

        const int max_deg = degrees.back();
        const int chk_deg = cur.max_rho_degree();
        for (int l = 1; l <= opt.t; ++l) {
            // leftbound from the current rightbound
            PairDensity acc{1, 0, 0, 0};  // oplus identity: point mass (0,0)
            std::vector<PairDensity> oplus_pow(chk_deg);
            for (int k = 0; k < chk_deg; ++k) {
                oplus_pow[k] = acc;
                acc = pair_oplus(acc, pr);
            }
            PairDensity pl{0, 0, 0, 0};
            for (const auto& [deg, frac] : cur.rho) {
                pl.p00 += frac * oplus_pow[deg - 1].p00;
                pl.p0e += frac * oplus_pow[deg - 1].p0e;
                pl.pe0 += frac * oplus_pow[deg - 1].pe0;
                pl.pee += frac * oplus_pow[deg - 1].pee;
            }
            // singletons for every candidate degree
            PairDensity mul{0, 0, 0, 1};  // odot identity: point mass (e,e)
            std::vector<PairDensity> singleton(nv);
            int k = 0;
            for (int d = 1; d <= max_deg; ++d) {
                // mul holds PL^{odot (d-1)} here
                if (k < nv && degrees[k] == d) {
                    singleton[k] = pair_gamma(pair_odot(p0, mul), dhat2);
                    ++k;
                }
                mul = pair_odot(mul, pl);
            }
            // current-lambda rightbound is the exact mixture of singletons
            PairDensity next{0, 0, 0, 0};
            for (int j = 0; j < nv; ++j) {
                const auto it = cur.lambda.find(degrees[j]);
                if (it == cur.lambda.end()) continue;
                next.p00 += it->second * singleton[j].p00;
                next.p0e += it->second * singleton[j].p0e;
                next.pe0 += it->second * singleton[j].pe0;
                next.pee += it->second * singleton[j].pee;
            }

            // closeness rows: |sum_i lam+_i S_i(s) - PR_l(s)| <= eta*|PR_{l-1}(s)-PR_l(s)|
            auto add_rows = [&](auto get) {
                const double target = get(next);
                const double gap = opt.eta * std::abs(get(prev_pr) - get(next));
                std::vector<double> row(nv);
                for (int j = 0; j < nv; ++j) row[j] = get(singleton[j]);
                lp.a_ub.push_back(row);
                lp.b_ub.push_back(target + gap);
                for (double& v : row) v = -v;
                lp.a_ub.push_back(row);
                lp.b_ub.push_back(-(target - gap));
            };
            add_rows([](const PairDensity& d) { return d.p00; });
            add_rows([](const PairDensity& d) { return d.p0e; });
            add_rows([](const PairDensity& d) { return d.pe0; });
            add_rows([](const PairDensity& d) { return d.pee; });

            prev_pr = pr;
            pr = next;
        }

        const LpSolution sol = solve_lp(lp);
        if (sol.status != LpStatus::optimal) break;

        const EdgeDistribution next_ed =
            lambda_from_solution(degrees, sol.x, cur.rho);
        OptimizerIteration it;
        it.ed = next_ed;
        it.design_rate = next_ed.design_rate();
        it.dhat2 = derive_dhat2(next_ed);
        it.verification_value = verify(next_ed, it.dhat2);
        it.admissible = it.verification_value <= opt.eps_target;
        // constraint slack of the accepted vertex (informational)
        double slack = 1e300;
        for (std::size_t r = 0; r < lp.a_ub.size(); ++r) {
            double lhs = 0.0;
            for (int j = 0; j < nv; ++j) lhs += lp.a_ub[r][j] * sol.x[j];
            slack = std::min(slack, lp.b_ub[r] - lhs);
        }
        it.min_constraint_slack = slack;
        state.log.push_back(it);

        if (!it.admissible) break;
        if (it.design_rate <= state.log[state.log.size() - 2].design_rate + 1e-12)
            break;  // fixed point (eta = 0 or exhausted direction)
        state.current = next_ed;
        state.current_dhat2 = it.dhat2;
    }
    return state;
}

OptimizerState optimize_interference(const EdgeDistribution& seed,
                                     const InterferenceParams& p,
                                     const InterferenceOptimizerOptions& opt) {
    seed.validate();
    p.validate();
    if (opt.enforce_partial && opt.partial_threshold <= 0.0)
        throw std::invalid_argument(
            "optimize_interference: enforce_partial requires a positive "
            "partial_threshold");

    const std::vector<int> degrees = support_union(seed, opt.candidate_degrees);
    const int nv = static_cast<int>(degrees.size());

    auto verify = [&](const EdgeDistribution& ed) {
        IcDeOptions vo;
        vo.grid = opt.grid;
        vo.max_iters = opt.verify_iters;
        vo.enforce_partial = opt.enforce_partial;
        vo.partial_threshold = opt.partial_threshold;
        const IcDeResult r = soft_ic_de(ed, p, vo);
        return r.primary_ber.back();
    };

    OptimizerState state;
    state.current = seed;
    {
        const double ber = verify(seed);
        if (ber > opt.ber_target) {
            std::ostringstream os;
            os << "optimize_interference: seed not admissible (primary BER "
               << ber << " > " << opt.ber_target << ")";
            throw std::invalid_argument(os.str());
        }
        OptimizerIteration it;
        it.ed = seed;
        it.design_rate = seed.design_rate();
        it.admissible = true;
        it.verification_value = ber;
        state.log.push_back(it);
    }

    for (int round = 0; round < opt.max_iters; ++round) {
        const EdgeDistribution& cur = state.current;

        IcDeOptions co;
        co.grid = opt.grid;
        co.max_iters = opt.t;
        co.stop_tol = 0.0;
        co.capture = true;
        co.capture_degrees = degrees;
        co.enforce_partial = opt.enforce_partial;
        co.partial_threshold = opt.partial_threshold;
        const IcDeResult cap = soft_ic_de(cur, p, co);
        const auto& c = cap.capture;
        const int T = static_cast<int>(c.s1.size());

        LpProblem lp;
        lp.objective.resize(nv);
        for (int k = 0; k < nv; ++k) lp.objective[k] = 1.0 / degrees[k];
        lp.a_eq.push_back(std::vector<double>(nv, 1.0));
        lp.b_eq.push_back(1.0);

        // edge-fraction families: |sum lam+_i s(l,i) - s(l)| <= eta |s(l-1)-s(l)|
        auto add_edge_rows = [&](const std::vector<double>& s,
                                 const std::vector<std::map<int, double>>& sdeg) {
            for (int l = 1; l < T; ++l) {
                const double gap = opt.eta * std::abs(s[l - 1] - s[l]);
                std::vector<double> row(nv);
                for (int j = 0; j < nv; ++j) row[j] = sdeg[l].at(degrees[j]);
                lp.a_ub.push_back(row);
                lp.b_ub.push_back(s[l] + gap);
                for (double& v : row) v = -v;
                lp.a_ub.push_back(row);
                lp.b_ub.push_back(-(s[l] - gap));
            }
        };
        // node-fraction families, multiplied through by sum_k lam+_k/k:
        // |sum (lam+_i/i) st(l,i) - st(l) sum_k lam+_k/k| <= eta |st(l-1)-st(l)| sum_k lam+_k/k
        auto add_node_rows = [&](const std::vector<double>& s,
                                 const std::vector<std::map<int, double>>& sdeg) {
            for (int l = 1; l < T; ++l) {
                const double gap = opt.eta * std::abs(s[l - 1] - s[l]);
                std::vector<double> hi(nv), lo(nv);
                for (int j = 0; j < nv; ++j) {
                    const double sv = sdeg[l].at(degrees[j]) / degrees[j];
                    hi[j] = sv - (s[l] + gap) / degrees[j];
                    lo[j] = -(sv - (s[l] - gap) / degrees[j]);
                }
                lp.a_ub.push_back(hi);
                lp.b_ub.push_back(0.0);
                lp.a_ub.push_back(lo);
                lp.b_ub.push_back(0.0);
            }
        };
        add_edge_rows(c.s1, c.s1_deg);
        add_edge_rows(c.s2, c.s2_deg);
        add_node_rows(c.st1, c.st1_deg);
        add_node_rows(c.st2, c.st2_deg);

        // stability-like cap on the degree-2 mass
        {
            double rho_term = 0.0;
            for (const auto& [deg, frac] : cur.rho) rho_term += (deg - 1) * frac;
            std::vector<double> row(nv, 0.0);
            for (int j = 0; j < nv; ++j)
                if (degrees[j] == 2) row[j] = rho_term;
            lp.a_ub.push_back(row);
            lp.b_ub.push_back((1.0 - opt.eta_prime) * c.stability_rhs);
        }

        const LpSolution sol = solve_lp(lp);
        if (sol.status != LpStatus::optimal) break;

        const EdgeDistribution next_ed =
            lambda_from_solution(degrees, sol.x, cur.rho);
        OptimizerIteration it;
        it.ed = next_ed;
        it.design_rate = next_ed.design_rate();
        it.verification_value = verify(next_ed);
        it.admissible = it.verification_value <= opt.ber_target;
        state.log.push_back(it);

        if (!it.admissible) break;
        if (it.design_rate <= state.log[state.log.size() - 2].design_rate + 1e-12)
            break;
        state.current = next_ed;
    }
    return state;
}

} // namespace badcodes
