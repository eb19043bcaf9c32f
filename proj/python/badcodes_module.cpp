#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "badcodes/awgn_ic.hpp"
#include "badcodes/bec_bp.hpp"
#include "badcodes/density_evolution.hpp"
#include "badcodes/ensemble.hpp"
#include "badcodes/info_bounds.hpp"
#include "badcodes/optimizer.hpp"
#include "badcodes/rates.hpp"
#include "badcodes/relay_pipeline.hpp"

namespace py = pybind11;
using namespace badcodes;

namespace {

EdgeDistribution make_ed(const std::map<int, double>& lambda,
                         const std::map<int, double>& rho) {
    EdgeDistribution ed;
    ed.lambda = normalized_fractions(lambda);
    ed.rho = normalized_fractions(rho);
    ed.validate();
    return ed;
}

} // namespace

PYBIND11_MODULE(_badcodes, m) {
    m.doc() = "soft decoding strategies over erasure relay and interference channels";

    py::class_<EdgeDistribution>(m, "EdgeDistribution")
        .def(py::init(&make_ed), py::arg("lambda_"), py::arg("rho"))
        .def_readonly("lambda_", &EdgeDistribution::lambda)
        .def_readonly("rho", &EdgeDistribution::rho)
        .def("design_rate", &EdgeDistribution::design_rate)
        .def("gamma", &EdgeDistribution::gamma)
        .def("node_fractions", &EdgeDistribution::lambda_node_fractions)
        .def("to_json", &EdgeDistribution::to_json)
        .def_static("from_json", &EdgeDistribution::from_json)
        .def_static("regular", &EdgeDistribution::regular);
    m.def("relay_design_distribution", &relay_design_distribution);
    m.def("interference_design_distribution", &interference_design_distribution);

    py::class_<DeResult>(m, "DeResult")
        .def_readonly("per_iteration", &DeResult::per_iteration)
        .def_readonly("final_bit_erasure", &DeResult::final_bit_erasure)
        .def_readonly("converged", &DeResult::converged)
        .def_readonly("iterations", &DeResult::iterations);
    py::class_<PairDensity>(m, "PairDensity")
        .def_readonly("p00", &PairDensity::p00)
        .def_readonly("p0e", &PairDensity::p0e)
        .def_readonly("pe0", &PairDensity::pe0)
        .def_readonly("pee", &PairDensity::pee)
        .def("relay_erasure", &PairDensity::relay_erasure)
        .def("dest_erasure", &PairDensity::dest_erasure);
    py::class_<SimDeResult>(m, "SimDeResult")
        .def_readonly("final_erasure", &SimDeResult::final_erasure)
        .def_readonly("converged", &SimDeResult::converged)
        .def_readonly("iterations", &SimDeResult::iterations)
        .def_readonly("final_pair", &SimDeResult::final_pair);

    m.def("de_bec", &de_bec, py::arg("ed"), py::arg("delta"), py::arg("t") = 2000,
          py::arg("stop_tol") = 1e-12);
    m.def("sim_de", &sim_de, py::arg("ed"), py::arg("d2"), py::arg("d3"),
          py::arg("dhat2"), py::arg("t") = 2000, py::arg("stop_tol") = 1e-12);
    m.def("de_threshold", &de_threshold, py::arg("ed"), py::arg("t") = 5000);

    py::enum_<DeStatistic>(m, "DeStatistic")
        .value("bit_level", DeStatistic::bit_level)
        .value("edge_message", DeStatistic::edge_message);
    py::class_<BoundContext>(m, "BoundContext")
        .def_readonly("delta2", &BoundContext::delta2)
        .def_readonly("delta3", &BoundContext::delta3)
        .def_readonly("delta2_bp", &BoundContext::delta2_bp);
    m.def("make_bound_context", &make_bound_context, py::arg("ed"),
          py::arg("delta2"), py::arg("delta3"),
          py::arg("stat") = DeStatistic::bit_level, py::arg("de_iters") = 5000);
    m.def("naive_bound", &naive_bound);
    m.def("f_alpha",
          py::overload_cast<const BoundContext&, double>(&f_alpha));
    m.def("a_term", &A_term);
    m.def("i_plus", &i_plus);
    m.def("min_quantization_noise", &min_quantization_noise);
    m.def("good_code_quantization_mi", &good_code_quantization_mi);
    m.def("pmap_good", &pmap_good);
    m.def("binary_entropy", &binary_entropy);

    py::class_<RelayParams>(m, "RelayParams")
        .def(py::init([](double d2, double d3, double co, double dh) {
                 RelayParams p{d2, d3, co, dh};
                 p.validate();
                 return p;
             }),
             py::arg("delta2"), py::arg("delta3"), py::arg("c_o"),
             py::arg("dhat2") = 0.0)
        .def_readonly("delta2", &RelayParams::delta2)
        .def_readonly("delta3", &RelayParams::delta3)
        .def_readonly("c_o", &RelayParams::c_o)
        .def_readonly("dhat2", &RelayParams::dhat2);
    py::class_<InterferenceParams>(m, "InterferenceParams")
        .def(py::init([](double h, double sigma) {
                 InterferenceParams p{h, sigma};
                 p.validate();
                 return p;
             }),
             py::arg("h"), py::arg("sigma"))
        .def_readonly("h", &InterferenceParams::h)
        .def_readonly("sigma", &InterferenceParams::sigma);

    m.def("r_df", &r_df);
    m.def("r_cf", &r_cf);
    m.def("r_df_ub", &r_df_ub);
    m.def("cf_min_dhat2", &cf_min_dhat2);
    m.def("r_mud", &r_mud);
    m.def("r_sud", &r_sud);
    m.def("good_code_interference_bound", &good_code_interference_bound);
    m.def("bitwise_interference_ber", &bitwise_interference_ber);
    m.def("biawgn_mi", &biawgn_mi, py::arg("snr"), py::arg("quad_order") = 96);
    m.def("shannon_limit_biawgn", &shannon_limit_biawgn);
    m.def("shannon_limit_bec", &shannon_limit_bec);
    m.def("bitwise_mmse", &bitwise_mmse, py::arg("snr"), py::arg("quad_order") = 96);
    m.def("hk_badness_min_snr", &hk_badness_min_snr);
    m.def("achievable_rate_from_epsilon", &achievable_rate_from_epsilon);

    m.def(
        "run_relay_campaign",
        [](const EdgeDistribution& ed, int n, const RelayParams& p, int t,
           int trials, std::uint64_t seed, int threads) {
            const auto r = run_campaign(ed, n, p, t, trials, seed, threads);
            py::dict out;
            out["mean_destination_erasure"] = r.mean_destination_erasure;
            out["mean_relay_erasure"] = r.mean_relay_erasure;
            out["ci95_halfwidth"] = r.ci95_halfwidth;
            out["degradedness_violations"] = r.degradedness_violations;
            return out;
        },
        py::arg("ed"), py::arg("n"), py::arg("params"), py::arg("t") = -1,
        py::arg("trials") = 10, py::arg("seed") = 1, py::arg("threads") = 1);

    m.def(
        "soft_ic_de",
        [](const EdgeDistribution& ed, const InterferenceParams& p, int max_iters,
           double l_max, int half_bins) {
            IcDeOptions opt;
            opt.grid = LlrGrid{l_max, half_bins};
            opt.max_iters = max_iters;
            const auto r = soft_ic_de(ed, p, opt);
            py::dict out;
            out["primary_ber"] = r.primary_ber.back();
            out["interference_ber"] = r.interference_ber.back();
            out["iterations"] = r.iterations;
            out["converged"] = r.converged;
            return out;
        },
        py::arg("ed"), py::arg("params"), py::arg("max_iters") = 500,
        py::arg("l_max") = 30.0, py::arg("half_bins") = 2048);

    m.attr("__version__") = "0.1.0";
}
