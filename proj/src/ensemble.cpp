#include "badcodes/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace badcodes {

namespace {
constexpr double kSumTol = 1e-12;

double weighted_inv_degree_sum(const std::map<int, double>& dist) {
    double s = 0.0;
    for (const auto& [deg, frac] : dist) s += frac / deg;
    return s;
}
} // namespace

void EdgeDistribution::validate(bool allow_degree_one) const {
    if (lambda.empty() || rho.empty())
        throw std::invalid_argument("EdgeDistribution: empty profile");
    double ls = 0.0, rs = 0.0;
    for (const auto& [deg, frac] : lambda) {
        if (deg < 1 || (deg < 2 && !allow_degree_one))
            throw std::invalid_argument("EdgeDistribution: variable degree < 2");
        if (frac < 0.0)
            throw std::invalid_argument("EdgeDistribution: negative lambda fraction");
        ls += frac;
    }
    for (const auto& [deg, frac] : rho) {
        if (deg < 1)
            throw std::invalid_argument("EdgeDistribution: check degree < 1");
        if (frac < 0.0)
            throw std::invalid_argument("EdgeDistribution: negative rho fraction");
        rs += frac;
    }
    if (std::abs(ls - 1.0) > kSumTol)
        throw std::invalid_argument("EdgeDistribution: lambda does not sum to 1");
    if (std::abs(rs - 1.0) > kSumTol)
        throw std::invalid_argument("EdgeDistribution: rho does not sum to 1");
    if (design_rate() >= 1.0)
        throw std::invalid_argument("EdgeDistribution: design rate >= 1");
}

double EdgeDistribution::lambda_eval(double z) const {
    double s = 0.0;
    for (const auto& [deg, frac] : lambda) s += frac * std::pow(z, deg - 1);
    return s;
}

double EdgeDistribution::rho_eval(double z) const {
    double s = 0.0;
    for (const auto& [deg, frac] : rho) s += frac * std::pow(z, deg - 1);
    return s;
}

std::map<int, double> EdgeDistribution::lambda_node_fractions() const {
    const double z = weighted_inv_degree_sum(lambda);
    std::map<int, double> out;
    for (const auto& [deg, frac] : lambda) out[deg] = (frac / deg) / z;
    return out;
}

std::map<int, double> EdgeDistribution::rho_node_fractions() const {
    const double z = weighted_inv_degree_sum(rho);
    std::map<int, double> out;
    for (const auto& [deg, frac] : rho) out[deg] = (frac / deg) / z;
    return out;
}

double EdgeDistribution::design_rate() const {
    return 1.0 - weighted_inv_degree_sum(rho) / weighted_inv_degree_sum(lambda);
}

double EdgeDistribution::gamma() const {
    return 1.0 / weighted_inv_degree_sum(lambda);
}

int EdgeDistribution::right_regular_degree() const {
    if (rho.size() != 1)
        throw std::invalid_argument("right_regular_degree: rho not concentrated");
    return rho.begin()->first;
}

int EdgeDistribution::max_lambda_degree() const { return lambda.rbegin()->first; }
int EdgeDistribution::max_rho_degree() const { return rho.rbegin()->first; }

std::string EdgeDistribution::to_json() const {
    nlohmann::json j;
    for (const auto& [deg, frac] : lambda) j["lambda"][std::to_string(deg)] = frac;
    for (const auto& [deg, frac] : rho) j["rho"][std::to_string(deg)] = frac;
    return j.dump();
}

EdgeDistribution EdgeDistribution::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    EdgeDistribution ed;
    for (auto it = j.at("lambda").begin(); it != j.at("lambda").end(); ++it)
        ed.lambda[std::stoi(it.key())] = it.value().get<double>();
    for (auto it = j.at("rho").begin(); it != j.at("rho").end(); ++it)
        ed.rho[std::stoi(it.key())] = it.value().get<double>();
    ed.validate();
    return ed;
}

EdgeDistribution EdgeDistribution::regular(int c, int d) {
    EdgeDistribution ed;
    ed.lambda[c] = 1.0;
    ed.rho[d] = 1.0;
    return ed;
}

std::map<int, double> normalized_fractions(const std::map<int, double>& weights) {
    double s = 0.0;
    for (const auto& [k, w] : weights) s += w;
    std::map<int, double> out;
    for (const auto& [k, w] : weights) out[k] = w / s;
    return out;
}

EdgeDistribution relay_design_distribution() {
    EdgeDistribution ed;
    ed.lambda = normalized_fractions({{2, 0.2289}, {3, 0.04532}, {4, 0.2361},
                                      {23, 0.233}, {24, 0.03178}, {100, 0.2249}});
    ed.rho = {{10, 1.0}};
    return ed;
}

EdgeDistribution interference_design_distribution() {
    EdgeDistribution ed;
    ed.lambda = normalized_fractions({{2, 0.2949}, {3, 0.2036}, {10, 0.05943},
                                      {11, 0.2399}, {55, 0.0001219},
                                      {56, 0.09542}, {57, 0.1065}});
    ed.rho = {{6, 1.0}};
    return ed;
}

std::map<int, int> largest_remainder(const std::map<int, double>& fractions, int n) {
    std::map<int, int> counts;
    std::vector<std::pair<double, int>> rem;  // (remainder, degree)
    int assigned = 0;
    for (const auto& [deg, frac] : fractions) {
        const double raw = n * frac;
        const int base = static_cast<int>(std::floor(raw));
        counts[deg] = base;
        assigned += base;
        rem.push_back({raw - base, deg});
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;  // deterministic tie-break by degree
    });
    for (int i = 0; i < n - assigned; ++i)
        counts[rem[i % rem.size()].second] += 1;
    return counts;
}

TannerGraph sample_graph(const EdgeDistribution& ed, int n, RandomStream& rng,
                         bool reject_multi_edges) {
    ed.validate();
    const auto lt = ed.lambda_node_fractions();
    auto var_counts = largest_remainder(lt, n);
    for (const auto& [deg, cnt] : var_counts)
        if (cnt < 1)
            throw std::invalid_argument(
                "sample_graph: n too small, degree class " + std::to_string(deg) +
                " receives no node");

    int sockets = 0;
    for (const auto& [deg, cnt] : var_counts) sockets += deg * cnt;

    // Check side: allocate so the socket counts match exactly; the largest
    // degree class absorbs the remainder.
    const auto rt = ed.rho_node_fractions();
    const double avgChk = [&] {
        double s = 0.0;
        for (const auto& [deg, frac] : rt) s += deg * frac;
        return s;
    }();
    int m = static_cast<int>(std::lround(sockets / avgChk));
    if (m < 1) m = 1;
    std::map<int, int> chk_counts = largest_remainder(rt, m);
    int chk_sockets = 0;
    for (const auto& [deg, cnt] : chk_counts) chk_sockets += deg * cnt;
    // balance socket mismatch by adjusting counts of the largest degree class
    const int dmax = chk_counts.rbegin()->first;
    while (chk_sockets < sockets) { chk_counts[dmax] += 1; m += 1; chk_sockets += dmax; }
    while (chk_sockets > sockets) {
        if (chk_counts[dmax] == 0)
            throw std::invalid_argument("sample_graph: cannot balance check sockets");
        // shrink by one node of the largest class, padding with smaller ones
        chk_counts[dmax] -= 1; m -= 1; chk_sockets -= dmax;
    }
    while (chk_sockets < sockets) {
        // pad with degree equal to the deficit when possible
        const int deficit = sockets - chk_sockets;
        chk_counts[deficit] += 1; m += 1; chk_sockets += deficit;
    }

    TannerGraph g;
    g.n = n;
    g.m = m;
    g.var_checks.assign(n, {});
    g.var_edges.assign(n, {});
    g.chk_vars.assign(m, {});
    g.chk_edges.assign(m, {});

    std::vector<int> var_of_socket(sockets), chk_of_socket(sockets);
    {
        int v = 0, s = 0;
        for (const auto& [deg, cnt] : var_counts)
            for (int k = 0; k < cnt; ++k, ++v)
                for (int d = 0; d < deg; ++d) var_of_socket[s++] = v;
        int c = 0;
        s = 0;
        for (const auto& [deg, cnt] : chk_counts)
            for (int k = 0; k < cnt; ++k, ++c)
                for (int d = 0; d < deg; ++d) chk_of_socket[s++] = c;
    }

    std::vector<int> perm(sockets);
    for (int attempt = 0;; ++attempt) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = sockets - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        if (!reject_multi_edges) break;
        std::vector<std::pair<int, int>> pairs(sockets);
        for (int s = 0; s < sockets; ++s)
            pairs[s] = {var_of_socket[s], chk_of_socket[perm[s]]};
        std::sort(pairs.begin(), pairs.end());
        if (std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end()) break;
        if (attempt > 10000)
            throw std::runtime_error("sample_graph: multi-edge rejection failed");
    }

    for (int s = 0; s < sockets; ++s) {
        const int v = var_of_socket[s];
        const int c = chk_of_socket[perm[s]];
        g.var_checks[v].push_back(c);
        g.var_edges[v].push_back(s);
        g.chk_vars[c].push_back(v);
        g.chk_edges[c].push_back(s);
    }
    g.edge_count = sockets;
    return g;
}

std::string TannerGraph::to_text() const {
    std::ostringstream os;
    os << n << ' ' << m << '\n';
    for (int c = 0; c < m; ++c) {
        for (std::size_t k = 0; k < chk_vars[c].size(); ++k) {
            if (k) os << ' ';
            os << chk_vars[c][k];
        }
        os << '\n';
    }
    return os.str();
}

TannerGraph TannerGraph::from_text(const std::string& text) {
    std::istringstream is(text);
    TannerGraph g;
    if (!(is >> g.n >> g.m))
        throw std::invalid_argument("TannerGraph::from_text: bad header");
    is.ignore();
    g.var_checks.assign(g.n, {});
    g.var_edges.assign(g.n, {});
    g.chk_vars.assign(g.m, {});
    g.chk_edges.assign(g.m, {});
    int edge = 0;
    std::string line;
    for (int c = 0; c < g.m; ++c) {
        if (!std::getline(is, line))
            throw std::invalid_argument("TannerGraph::from_text: missing check line");
        std::istringstream ls(line);
        int v;
        while (ls >> v) {
            if (v < 0 || v >= g.n)
                throw std::invalid_argument("TannerGraph::from_text: bad variable index");
            g.var_checks[v].push_back(c);
            g.var_edges[v].push_back(edge);
            g.chk_vars[c].push_back(v);
            g.chk_edges[c].push_back(edge);
            ++edge;
        }
    }
    g.edge_count = edge;
    return g;
}

bool is_stopping_set(const TannerGraph& g, const std::vector<int>& s) {
    std::vector<char> in_set(g.n, 0);
    for (int v : s) {
        if (v < 0 || v >= g.n)
            throw std::invalid_argument("is_stopping_set: index out of range");
        in_set[v] = 1;
    }
    std::vector<int> hits(g.m, 0);
    for (int v = 0; v < g.n; ++v)
        if (in_set[v])
            for (int c : g.var_checks[v]) hits[c] += 1;
    for (int c = 0; c < g.m; ++c)
        if (hits[c] == 1) return false;
    return true;
}

namespace {
// singly_hit tracks how many checks currently see exactly one selected
// variable; the subset is a stopping set iff it is zero.
void enumerate_rec(const TannerGraph& g, int first, int remaining,
                   std::vector<int>& hits, int& singly_hit, int size,
                   std::map<int, std::uint64_t>& counts) {
    if (singly_hit == 0) counts[size] += 1;
    if (remaining == 0) return;
    for (int v = first; v < g.n; ++v) {
        for (int c : g.var_checks[v]) {
            if (hits[c] == 0) ++singly_hit;
            else if (hits[c] == 1) --singly_hit;
            hits[c] += 1;
        }
        enumerate_rec(g, v + 1, remaining - 1, hits, singly_hit, size + 1, counts);
        for (int c : g.var_checks[v]) {
            hits[c] -= 1;
            if (hits[c] == 0) --singly_hit;
            else if (hits[c] == 1) ++singly_hit;
        }
    }
}
} // namespace

std::map<int, std::uint64_t> enumerate_stopping_sets(const TannerGraph& g, int max_size) {
    if (g.n > 25)
        throw std::invalid_argument("enumerate_stopping_sets: n > 25 refused "
                                    "(exponential enumeration)");
    if (max_size < 0 || max_size > g.n)
        throw std::invalid_argument("enumerate_stopping_sets: bad max_size");
    std::map<int, std::uint64_t> counts;
    for (int s = 0; s <= max_size; ++s) counts[s] = 0;
    std::vector<int> hits(g.m, 0);
    int singly_hit = 0;
    enumerate_rec(g, 0, max_size, hits, singly_hit, 0, counts);
    return counts;
}

} // namespace badcodes
