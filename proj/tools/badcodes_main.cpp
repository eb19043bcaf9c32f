// badcodes command line: density evolution, bounds, benchmarks, Monte-Carlo
// pipelines and the degree-distribution optimizers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "badcodes/awgn_ic.hpp"
#include "badcodes/bec_bp.hpp"
#include "badcodes/density_evolution.hpp"
#include "badcodes/ensemble.hpp"
#include "badcodes/info_bounds.hpp"
#include "badcodes/lp.hpp"
#include "badcodes/optimizer.hpp"
#include "badcodes/rates.hpp"
#include "badcodes/relay_pipeline.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace badcodes;

struct OutputSink {
    std::string path;
    json resolved;
    std::uint64_t seed = 0;

    void write(const std::string& human, const std::string& payload) const {
        std::cout << human;
        if (path.empty()) return;
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << header() << payload;
    }
    std::string header() const {
        std::ostringstream os;
        os << "# badcodes " << kVersion << "\n";
        os << "# config: " << resolved.dump() << "\n";
        os << "# seed: " << seed << "\n";
        os << "# timestamp: " << std::time(nullptr) << "\n";
        return os.str();
    }
};

std::map<int, double> parse_degree_list(const std::string& text) {
    std::map<int, double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("degree list", "expected deg:frac pairs");
        out[std::stoi(item.substr(0, colon))] = std::stod(item.substr(colon + 1));
    }
    if (out.empty()) throw CLI::ValidationError("degree list", "empty");
    return out;
}

struct EnsembleArgs {
    std::string lambda, rho, regular, preset;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "variable edge fractions, deg:frac,...");
        cmd->add_option("--rho", rho, "check edge fractions, deg:frac,...");
        cmd->add_option("--regular", regular, "regular pair c,d");
        cmd->add_option("--preset", preset, "named ensemble: relay | interference");
    }
    EdgeDistribution resolve() const {
        if (!preset.empty()) {
            if (preset == "relay") return relay_design_distribution();
            if (preset == "interference" || preset == "ic")
                return interference_design_distribution();
            throw CLI::ValidationError("--preset", "unknown preset " + preset);
        }
        if (!regular.empty()) {
            const auto comma = regular.find(',');
            if (comma == std::string::npos)
                throw CLI::ValidationError("--regular", "expected c,d");
            return EdgeDistribution::regular(std::stoi(regular.substr(0, comma)),
                                             std::stoi(regular.substr(comma + 1)));
        }
        if (lambda.empty() || rho.empty())
            throw CLI::ValidationError("ensemble",
                                       "need --preset, --regular or --lambda/--rho");
        EdgeDistribution ed;
        ed.lambda = normalized_fractions(parse_degree_list(lambda));
        ed.rho = normalized_fractions(parse_degree_list(rho));
        ed.validate();
        return ed;
    }
    json resolved_json(const EdgeDistribution& ed) const {
        return json::parse(ed.to_json());
    }
};

int thread_default() {
    if (const char* env = std::getenv("BADCODES_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

// Options may come from a JSON config file; explicit flags win.
void apply_config(CLI::App* cmd, const std::string& path) {
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg = json::parse(is);
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        CLI::Option* op = cmd->get_option_no_throw("--" + it.key());
        if (op == nullptr || op->count() > 0) continue;
        std::stringstream vs;
        if (it.value().is_string()) vs << it.value().get<std::string>();
        else vs << it.value().dump();
        op->add_result(vs.str());
        op->run_callback();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bad-code strategies over erasure relay and interference channels"};
    app.set_help_flag("--help", "print help");  // keep --h free for the cross gain
    app.require_subcommand(1);

    // shared option storage
    EnsembleArgs ens;
    double d2 = 0.5, d3 = 0.82, co = 0.9, dhat2 = 0.212, delta = 0.5;
    double h = 0.839, sigma = 1.075;
    double eta = 0.1, eta_prime = 0.02;
    double eps_s = 0.101, eps_t = 0.231, p_u = 0.055;
    double rate = 0.5, partial_threshold = 0.0;
    int t = 2000, n = 10000, trials = 10, max_iters = 5, quad = 96;
    int grid_bins = 2048, max_size = 4;
    double l_max = 30.0;
    std::uint64_t seed = 1;
    int threads = thread_default();
    std::string out, config;
    bool enforce_partial = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "write CSV/JSON payload here");
        cmd->add_option("--config", config, "JSON config file (flags override)");
        cmd->add_option("--threads", threads, "worker threads");
        return cmd;
    };

    auto* cmd_debec = add_common(app.add_subcommand("de-bec", "point-to-point BEC density evolution"));
    ens.attach(cmd_debec);
    cmd_debec->add_option("--delta", delta, "channel erasure probability");
    cmd_debec->add_option("--t", t, "max iterations");

    auto* cmd_simde = add_common(app.add_subcommand("sim-de", "simultaneous density evolution"));
    ens.attach(cmd_simde);
    cmd_simde->add_option("--d2", d2);
    cmd_simde->add_option("--d3", d3);
    cmd_simde->add_option("--dhat2", dhat2);
    cmd_simde->add_option("--t", t);

    auto* cmd_bounds = add_common(app.add_subcommand("bounds", "quantization-noise bound curves"));
    ens.attach(cmd_bounds);
    cmd_bounds->add_option("--d2", d2);
    cmd_bounds->add_option("--d3", d3);

    auto* cmd_mind = add_common(app.add_subcommand("min-dhat2", "minimal quantization noise at c_o"));
    ens.attach(cmd_mind);
    cmd_mind->add_option("--d2", d2);
    cmd_mind->add_option("--d3", d3);
    cmd_mind->add_option("--co", co);

    auto* cmd_rates = add_common(app.add_subcommand("rates", "benchmark rates"));
    cmd_rates->add_option("--d2", d2);
    cmd_rates->add_option("--d3", d3);
    cmd_rates->add_option("--co", co);
    cmd_rates->add_option("--h", h);
    cmd_rates->add_option("--sigma", sigma);

    auto* cmd_mmse = add_common(app.add_subcommand("mmse-curves", "uncoded and good-code MMSE curves"));
    cmd_mmse->add_option("--rate", rate);

    auto* cmd_icde = add_common(app.add_subcommand("soft-ic-de", "interference decoder density evolution"));
    ens.attach(cmd_icde);
    cmd_icde->add_option("--h", h);
    cmd_icde->add_option("--sigma", sigma);
    cmd_icde->add_option("--t", t);
    cmd_icde->add_option("--grid-bins", grid_bins, "half bins of the LLR grid");
    cmd_icde->add_option("--l-max", l_max);

    auto* cmd_srelay = add_common(app.add_subcommand("simulate-relay", "Monte-Carlo relay campaign"));
    ens.attach(cmd_srelay);
    cmd_srelay->add_option("--d2", d2);
    cmd_srelay->add_option("--d3", d3);
    cmd_srelay->add_option("--co", co);
    cmd_srelay->add_option("--dhat2", dhat2);
    cmd_srelay->add_option("--n", n);
    cmd_srelay->add_option("--t", t);
    cmd_srelay->add_option("--trials", trials);
    cmd_srelay->add_option("--seed", seed);

    auto* cmd_sic = add_common(app.add_subcommand("simulate-ic", "Monte-Carlo interference decoding"));
    ens.attach(cmd_sic);
    cmd_sic->add_option("--h", h);
    cmd_sic->add_option("--sigma", sigma);
    cmd_sic->add_option("--n", n);
    cmd_sic->add_option("--t", t);
    cmd_sic->add_option("--trials", trials);
    cmd_sic->add_option("--seed", seed);

    auto* cmd_orelay = add_common(app.add_subcommand("optimize-relay", "relay lambda hill climb"));
    ens.attach(cmd_orelay);
    cmd_orelay->add_option("--d2", d2);
    cmd_orelay->add_option("--d3", d3);
    cmd_orelay->add_option("--co", co);
    cmd_orelay->add_option("--eta", eta);
    cmd_orelay->add_option("--t", t);
    cmd_orelay->add_option("--max-iters", max_iters);

    auto* cmd_oic = add_common(app.add_subcommand("optimize-ic", "interference lambda hill climb"));
    ens.attach(cmd_oic);
    cmd_oic->add_option("--h", h);
    cmd_oic->add_option("--sigma", sigma);
    cmd_oic->add_option("--eta", eta);
    cmd_oic->add_option("--eta-prime", eta_prime);
    cmd_oic->add_option("--t", t);
    cmd_oic->add_option("--max-iters", max_iters);
    cmd_oic->add_flag("--enforce-partial", enforce_partial);
    cmd_oic->add_option("--partial-threshold", partial_threshold);
    cmd_oic->add_option("--grid-bins", grid_bins);
    cmd_oic->add_option("--l-max", l_max);

    auto* cmd_hk = add_common(app.add_subcommand("hk-check", "rate-splitting badness certificate"));
    cmd_hk->add_option("--s", eps_s, "first split rate");
    cmd_hk->add_option("--t-rate", eps_t, "second split rate");
    cmd_hk->add_option("--p-u", p_u);
    cmd_hk->add_option("--rate", rate, "total rate for the Shannon-limit compare");

    auto* cmd_stop = add_common(app.add_subcommand("stopping-oracle", "exhaustive stopping-set counts"));
    ens.attach(cmd_stop);
    cmd_stop->add_option("--n", n);
    cmd_stop->add_option("--max-size", max_size);
    cmd_stop->add_option("--seed", seed);
    cmd_stop->add_option("--quad", quad);  // unused here, kept for config parity

    CLI::App* chosen = nullptr;
    try {
        app.parse(argc, argv);
        chosen = app.get_subcommands().front();
        apply_config(chosen, config);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        OutputSink sink;
        sink.path = out;
        sink.seed = seed;
        std::ostringstream human;
        std::string payload;
        json cfg;

        if (chosen == cmd_debec) {
            const EdgeDistribution ed = ens.resolve();
            const DeResult r = de_bec(ed, delta, t);
            cfg = {{"command", "de-bec"}, {"delta", delta}, {"t", t},
                   {"ensemble", ens.resolved_json(ed)}};
            human.precision(10);
            human << "de-bec: delta=" << delta
                  << " bit_erasure=" << r.final_bit_erasure
                  << " edge_fixed_point=" << r.per_iteration.back()
                  << " iterations=" << r.iterations
                  << (r.converged ? " (converged)" : "") << "\n";
            payload = de_result_csv(r);
        } else if (chosen == cmd_simde) {
            const EdgeDistribution ed = ens.resolve();
            const SimDeResult r = sim_de(ed, d2, d3, dhat2, t);
            cfg = {{"command", "sim-de"}, {"d2", d2}, {"d3", d3},
                   {"dhat2", dhat2}, {"t", t}, {"ensemble", ens.resolved_json(ed)}};
            human.precision(10);
            human << "sim-de: P_e_final=" << r.final_erasure
                  << " iterations=" << r.iterations
                  << (r.converged ? " (converged)" : "") << "\n";
            std::ostringstream os;
            os.precision(17);
            os << "iteration,relay_erasure,dest_erasure\n";
            for (std::size_t i = 0; i < r.rightbound.size(); ++i)
                os << i << ',' << r.rightbound[i].relay_erasure() << ','
                   << r.rightbound[i].dest_erasure() << '\n';
            os << "final," << r.final_pair.relay_erasure() << ','
               << r.final_erasure << '\n';
            payload = os.str();
        } else if (chosen == cmd_bounds) {
            const EdgeDistribution ed = ens.resolve();
            const BoundContext ctx = make_bound_context(ed, d2, d3);
            const IPlusCurve curve(ctx);
            cfg = {{"command", "bounds"}, {"d2", d2}, {"d3", d3},
                   {"delta2_bp", ctx.delta2_bp}, {"ensemble", ens.resolved_json(ed)}};
            human.precision(10);
            human << "bounds: delta2_bp=" << ctx.delta2_bp
                  << " f(delta2_bp)=" << curve.f_at_delta2bp()
                  << " i_plus(0)=" << curve(0.0) << "\n";
            payload = curve.curve_csv();
        } else if (chosen == cmd_mind) {
            const EdgeDistribution ed = ens.resolve();
            const BoundContext ctx = make_bound_context(ed, d2, d3);
            const IPlusCurve curve(ctx);
            const double v = curve.min_quantization_noise(co);
            cfg = {{"command", "min-dhat2"}, {"d2", d2}, {"d3", d3}, {"co", co}};
            human.precision(10);
            human << "min-dhat2: " << v << " (i_plus there: " << curve(v) << ")\n";
            payload = "c_o,min_dhat2\n" + std::to_string(co) + "," + std::to_string(v) + "\n";
        } else if (chosen == cmd_rates) {
            RelayParams rp{d2, d3, co, 0.0};
            InterferenceParams ip{h, sigma};
            const RateReport ub = r_ub_good(rp);
            cfg = {{"command", "rates"}, {"d2", d2}, {"d3", d3}, {"co", co},
                   {"h", h}, {"sigma", sigma}};
            human.precision(6);
            human << "relay benchmarks (d2=" << d2 << " d3=" << d3 << " co=" << co
                  << "):\n"
                  << "  R_DF    = " << r_df(rp) << "\n"
                  << "  R_CF    = " << r_cf(rp) << "\n"
                  << "  R_DF-UB = " << r_df_ub(rp) << "\n"
                  << "  R_UB    = " << ub.value << " [" << ub.flags << "]\n"
                  << "interference benchmarks (h=" << h << " sigma=" << sigma
                  << "):\n"
                  << "  R_MUD   = " << r_mud(ip) << "\n"
                  << "  R_SUD   = " << r_sud(ip) << "\n"
                  << "  good-code bound = " << good_code_interference_bound(ip)
                  << "\n";
            std::ostringstream os;
            os.precision(12);
            os << "name,value\nR_DF," << r_df(rp) << "\nR_CF," << r_cf(rp)
               << "\nR_DF_UB," << r_df_ub(rp) << "\nR_UB," << ub.value
               << "\nR_MUD," << r_mud(ip) << "\nR_SUD," << r_sud(ip) << "\n";
            payload = os.str();
        } else if (chosen == cmd_mmse) {
            std::vector<double> grid;
            for (double s = 0.0; s <= 4.0 + 1e-12; s += 0.02) grid.push_back(s);
            const auto pts = mmse_curves(grid, rate);
            cfg = {{"command", "mmse-curves"}, {"rate", rate}};
            human << "mmse-curves: " << pts.size() << " grid points, rate=" << rate
                  << ", snr*=" << shannon_limit_biawgn(rate) << "\n";
            std::ostringstream os;
            os.precision(12);
            os << "snr,uncoded,good_code\n";
            for (const auto& pt : pts)
                os << pt.snr << ',' << pt.uncoded << ',' << pt.good_code << '\n';
            payload = os.str();
        } else if (chosen == cmd_icde) {
            const EdgeDistribution ed = ens.resolve();
            InterferenceParams ip{h, sigma};
            IcDeOptions io;
            io.grid = LlrGrid{l_max, grid_bins};
            io.max_iters = t == 2000 ? 500 : t;
            const IcDeResult r = soft_ic_de(ed, ip, io);
            cfg = {{"command", "soft-ic-de"}, {"h", h}, {"sigma", sigma},
                   {"grid_bins", grid_bins}, {"l_max", l_max},
                   {"ensemble", ens.resolved_json(ed)}};
            human.precision(8);
            human << "soft-ic-de: primary_ber=" << r.primary_ber.back()
                  << " interference_ber=" << r.interference_ber.back()
                  << " iterations=" << r.iterations
                  << (r.converged ? " (converged)" : "") << "\n";
            payload = r.trajectory_csv();
        } else if (chosen == cmd_srelay) {
            const EdgeDistribution ed = ens.resolve();
            RelayParams rp{d2, d3, co, dhat2};
            const int tt = t == 2000 ? -1 : t;
            const CampaignResult r =
                run_campaign(ed, n, rp, tt, trials, seed, threads, true);
            cfg = {{"command", "simulate-relay"}, {"d2", d2}, {"d3", d3},
                   {"co", co}, {"dhat2", dhat2}, {"n", n}, {"t", tt},
                   {"trials", trials}, {"seed", seed}};
            human.precision(8);
            human << "simulate-relay: mean_dest_erasure="
                  << r.mean_destination_erasure << " +-" << r.ci95_halfwidth
                  << " relay=" << r.mean_relay_erasure
                  << " violations=" << r.degradedness_violations << "\n";
            payload = r.report_json() + "\n" + r.per_trial_csv();
        } else if (chosen == cmd_sic) {
            const EdgeDistribution ed = ens.resolve();
            InterferenceParams ip{h, sigma};
            RandomStream rng(seed);
            double ber1 = 0.0, ber2 = 0.0;
            for (int k = 0; k < trials; ++k) {
                RandomStream sub = rng.split(k);
                const FactorGraphPair fg = make_factor_graph_pair(ed, n, sub);
                const std::vector<double> ones(n, 1.0);
                const auto y = sample_interference_channel(ones, ones, ip, sub);
                const auto r = soft_ic_bp(fg, y, ip, t == 2000 ? 200 : t);
                ber1 += r.primary_ber;
                ber2 += r.interference_ber;
            }
            cfg = {{"command", "simulate-ic"}, {"h", h}, {"sigma", sigma},
                   {"n", n}, {"trials", trials}, {"seed", seed}};
            human.precision(8);
            human << "simulate-ic: primary_ber=" << ber1 / trials
                  << " interference_ber=" << ber2 / trials << " (" << trials
                  << " trials)\n";
            std::ostringstream os;
            os << "primary_ber,interference_ber\n"
               << ber1 / trials << ',' << ber2 / trials << '\n';
            payload = os.str();
        } else if (chosen == cmd_orelay) {
            const EdgeDistribution ed = ens.resolve();
            RelayParams rp{d2, d3, co, 0.0};
            RelayOptimizerOptions oo;
            oo.eta = eta;
            oo.t = t == 2000 ? 100 : t;
            oo.max_iters = max_iters;
            const OptimizerState st = optimize_relay(ed, rp, oo);
            cfg = {{"command", "optimize-relay"}, {"eta", eta},
                   {"max_iters", max_iters}};
            human.precision(8);
            human << "optimize-relay: iterations=" << st.log.size()
                  << " design_rate=" << st.current.design_rate()
                  << " dhat2=" << st.current_dhat2 << "\n";
            payload = st.log_json();
        } else if (chosen == cmd_oic) {
            const EdgeDistribution ed = ens.resolve();
            InterferenceParams ip{h, sigma};
            InterferenceOptimizerOptions oo;
            oo.eta = eta;
            oo.eta_prime = eta_prime;
            oo.t = t == 2000 ? 30 : t;
            oo.max_iters = max_iters;
            oo.grid = LlrGrid{l_max, grid_bins};
            oo.enforce_partial = enforce_partial;
            oo.partial_threshold = partial_threshold;
            const OptimizerState st = optimize_interference(ed, ip, oo);
            cfg = {{"command", "optimize-ic"}, {"eta", eta},
                   {"eta_prime", eta_prime}, {"max_iters", max_iters}};
            human.precision(8);
            human << "optimize-ic: iterations=" << st.log.size()
                  << " design_rate=" << st.current.design_rate() << "\n";
            payload = st.log_json();
        } else if (chosen == cmd_hk) {
            const double msnr = hk_badness_min_snr(eps_s, eps_t, p_u);
            const double limit = shannon_limit_biawgn(rate);
            cfg = {{"command", "hk-check"}, {"S", eps_s}, {"T", eps_t},
                   {"p_u", p_u}, {"rate", rate}};
            human.precision(8);
            human << "hk-check: min_snr=" << msnr << " shannon_limit(" << rate
                  << ")=" << limit
                  << (msnr > limit ? "  [point-to-point bad]" : "") << "\n";
            std::ostringstream os;
            os << "min_snr,shannon_limit\n" << msnr << ',' << limit << '\n';
            payload = os.str();
        } else if (chosen == cmd_stop) {
            const EdgeDistribution ed = ens.resolve();
            RandomStream rng(seed);
            const TannerGraph g = sample_graph(ed, n, rng);
            const auto counts = enumerate_stopping_sets(g, max_size);
            cfg = {{"command", "stopping-oracle"}, {"n", n},
                   {"max_size", max_size}, {"seed", seed}};
            human << "stopping-oracle: n=" << n << "\n";
            std::ostringstream os;
            os << "size,count\n";
            for (const auto& [size, count] : counts) {
                os << size << ',' << count << '\n';
                human << "  size " << size << ": " << count << "\n";
            }
            payload = os.str();
        }

        sink.resolved = cfg;
        sink.write(human.str(), payload);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
}
