#ifndef BADCODES_ENSEMBLE_HPP
#define BADCODES_ENSEMBLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "badcodes/rng.hpp"

namespace badcodes {

// Edge-perspective degree profiles (lambda on the variable side, rho on the
// check side). Fractions are per edge; node fractions are derived.
struct EdgeDistribution {
    std::map<int, double> lambda;
    std::map<int, double> rho;

    // throws std::invalid_argument on malformed profiles
    void validate(bool allow_degree_one = false) const;

    // lambda(z) = sum_i lambda_i z^{i-1}
    double lambda_eval(double z) const;
    // rho(z) = sum_j rho_j z^{j-1}
    double rho_eval(double z) const;

    // node fractions lambda~_i = (lambda_i/i) / sum_k (lambda_k/k)
    std::map<int, double> lambda_node_fractions() const;
    std::map<int, double> rho_node_fractions() const;

    double design_rate() const;
    // average variable-node degree, sum_i i*lambda~_i = 1/sum_i(lambda_i/i)
    double gamma() const;
    // throws unless rho is concentrated on a single degree
    int right_regular_degree() const;

    int max_lambda_degree() const;
    int max_rho_degree() const;

    std::string to_json() const;
    static EdgeDistribution from_json(const std::string& text);

    static EdgeDistribution regular(int c, int d);
};

// Named distributions used across tests and the CLI (normalized so the
// fractions sum to one exactly).
EdgeDistribution relay_design_distribution();       // rho_10 = 1, rate ~0.5056
EdgeDistribution interference_design_distribution(); // rho_6 = 1, rate ~0.3243

struct TannerGraph {
    int n = 0;  // variable nodes
    int m = 0;  // check nodes
    // per-node adjacency; edge ids are positions in the global edge list
    std::vector<std::vector<int>> var_checks;   // check index per edge slot
    std::vector<std::vector<int>> var_edges;    // edge id per slot
    std::vector<std::vector<int>> chk_vars;
    std::vector<std::vector<int>> chk_edges;
    int edge_count = 0;

    int var_degree(int v) const { return static_cast<int>(var_checks[v].size()); }
    int chk_degree(int c) const { return static_cast<int>(chk_vars[c].size()); }

    // line-oriented text: "n m" header then one line of variable indices per check
    std::string to_text() const;
    static TannerGraph from_text(const std::string& text);
};

// Socket-permutation sampler. Node counts per degree come from
// largest-remainder rounding of n*lambda~_i (and of the check fractions,
// with the last class absorbing the socket balance). When reject_multi_edges
// is set, re-draws the permutation until no double edge remains.
TannerGraph sample_graph(const EdgeDistribution& ed, int n, RandomStream& rng,
                         bool reject_multi_edges = false);

// Largest-remainder apportionment of n items to the given fractions.
std::map<int, double> normalized_fractions(const std::map<int, double>& weights);
std::map<int, int> largest_remainder(const std::map<int, double>& fractions, int n);

// True iff every check adjacent to s has at least two edges into s.
bool is_stopping_set(const TannerGraph& g, const std::vector<int>& s);

// Exact counts of stopping sets of every size <= max_size. Refuses n > 25.
std::map<int, std::uint64_t> enumerate_stopping_sets(const TannerGraph& g, int max_size);

} // namespace badcodes

#endif
