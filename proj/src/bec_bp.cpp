#include "badcodes/bec_bp.hpp"

#include <cstdint>
#include <deque>
#include <stdexcept>

namespace badcodes {

namespace {

constexpr ErasureSymbol kErased = ErasureSymbol::erased;

inline int bit_of(ErasureSymbol s) { return static_cast<int>(s); }
inline ErasureSymbol sym_of(int b) { return static_cast<ErasureSymbol>(b & 1); }

} // namespace

BpTrace bp_decode(const TannerGraph& g, const ErasureWord& y, int t, bool keep_trace) {
    if (static_cast<int>(y.size()) != g.n)
        throw std::invalid_argument("bp_decode: word length != n");
    if (t < 1) throw std::invalid_argument("bp_decode: t < 1");

    const int E = g.edge_count;
    std::vector<ErasureSymbol> right(E), left(E, kErased);
    BpTrace trace;

    // Discovery is monotone, so an iteration that uncovers nothing is a fixed
    // point and later iterations cannot change the decisions.
    int prev_left_erased = E + 1;

    for (int iter = 0; iter < t; ++iter) {
        // rightbound: r_ij = y_i * prod of incoming leftbounds except edge (i,j)
        for (int v = 0; v < g.n; ++v) {
            ErasureSymbol rep = y[v];
            int known = is_erased(y[v]) ? 0 : 1;
            if (iter > 0) {
                for (int e : g.var_edges[v]) {
                    rep = erasure_mul(rep, left[e]);
                    if (!is_erased(left[e])) ++known;
                }
            }
            for (std::size_t k = 0; k < g.var_edges[v].size(); ++k) {
                const int e = g.var_edges[v][k];
                int excl = known;
                if (iter > 0 && !is_erased(left[e])) --excl;
                right[e] = excl > 0 ? rep : kErased;
            }
        }
        if (keep_trace) trace.rightbound.push_back(right);

        // leftbound: l_ji = sum of incoming rightbounds except edge (j,i)
        for (int c = 0; c < g.m; ++c) {
            int erased = 0, parity = 0;
            for (int e : g.chk_edges[c]) {
                if (is_erased(right[e])) ++erased;
                else parity ^= bit_of(right[e]);
            }
            for (std::size_t k = 0; k < g.chk_edges[c].size(); ++k) {
                const int e = g.chk_edges[c][k];
                const int other_erased = erased - (is_erased(right[e]) ? 1 : 0);
                if (other_erased > 0) left[e] = kErased;
                else left[e] = sym_of(parity ^ (is_erased(right[e]) ? 0 : bit_of(right[e])));
            }
        }
        if (keep_trace) trace.leftbound.push_back(left);

        if (!keep_trace) {
            int le = 0;
            for (auto s : left)
                if (is_erased(s)) ++le;
            if (le == prev_left_erased && iter > 0) break;
            prev_left_erased = le;
        }
    }

    ErasureWord out(g.n);
    for (int v = 0; v < g.n; ++v) {
        ErasureSymbol rep = y[v];
        for (int e : g.var_edges[v]) rep = erasure_mul(rep, left[e]);
        out[v] = rep;
    }
    trace.decisions = std::move(out);
    return trace;
}

ErasureWord peeling_decode(const TannerGraph& g, const ErasureWord& y) {
    if (static_cast<int>(y.size()) != g.n)
        throw std::invalid_argument("peeling_decode: word length != n");

    std::vector<ErasureSymbol> val(y.symbols());
    std::vector<int> unknown(g.m, 0), parity(g.m, 0);
    for (int c = 0; c < g.m; ++c) {
        for (int v : g.chk_vars[c]) {
            if (is_erased(val[v])) unknown[c] += 1;
            else parity[c] ^= bit_of(val[v]);
        }
    }
    std::deque<int> ready;
    for (int c = 0; c < g.m; ++c)
        if (unknown[c] == 1) ready.push_back(c);

    while (!ready.empty()) {
        const int c = ready.front();
        ready.pop_front();
        if (unknown[c] != 1) continue;  // stale entry
        int target = -1;
        for (int v : g.chk_vars[c])
            if (is_erased(val[v])) { target = v; break; }
        const ErasureSymbol b = sym_of(parity[c]);
        val[target] = b;
        for (int c2 : g.var_checks[target]) {
            unknown[c2] -= 1;
            parity[c2] ^= bit_of(b);
            if (unknown[c2] == 1) ready.push_back(c2);
        }
    }
    return ErasureWord(std::move(val));
}

ErasureWord map_erase_decode(const TannerGraph& g, const ErasureWord& y) {
    if (static_cast<int>(y.size()) != g.n)
        throw std::invalid_argument("map_erase_decode: word length != n");

    // Peeling reveals only linear consequences, so the residual system has
    // the same solution set over the remaining erased coordinates.
    ErasureWord w = peeling_decode(g, y);

    std::vector<int> cols;  // erased variable -> column
    std::vector<int> col_of(g.n, -1);
    for (int v = 0; v < g.n; ++v)
        if (is_erased(w[v])) {
            col_of[v] = static_cast<int>(cols.size());
            cols.push_back(v);
        }
    const int nc = static_cast<int>(cols.size());
    const int words = (nc + 1 + 63) / 64;  // + augmented parity bit

    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(g.m);
    for (int c = 0; c < g.m; ++c) {
        std::vector<std::uint64_t> row(words, 0);
        int rhs = 0;
        for (int v : g.chk_vars[c]) {
            if (is_erased(w[v]))
                row[col_of[v] / 64] ^= (std::uint64_t{1} << (col_of[v] % 64));  // mod-2 coefficient
            else
                rhs ^= bit_of(w[v]);
        }
        bool zero = true;
        for (auto x : row) if (x) { zero = false; break; }
        if (zero) {
            if (rhs)
                throw std::runtime_error("map_erase_decode: revealed bits violate parity");
            continue;
        }
        if (rhs) row[nc / 64] ^= (std::uint64_t{1} << (nc % 64));
        rows.push_back(std::move(row));
    }

    // reduced row echelon form, pivots in ascending column order
    std::vector<int> pivot_row_of_col(nc, -1);
    int rank = 0;
    for (int col = 0; col < nc && rank < static_cast<int>(rows.size()); ++col) {
        const int wi = col / 64;
        const std::uint64_t mask = std::uint64_t{1} << (col % 64);
        int pr = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][wi] & mask) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(rows[rank], rows[pr]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && (rows[r][wi] & mask))
                for (int k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }
    // inconsistent zero rows below the rank
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
        bool zero = true;
        for (int k = 0; k < words; ++k) {
            std::uint64_t x = rows[r][k];
            if (k == nc / 64) x &= ~(std::uint64_t{1} << (nc % 64));
            if (k > nc / 64) x = 0;
            if (x) { zero = false; break; }
        }
        if (zero && (rows[r][nc / 64] >> (nc % 64)) & 1)
            throw std::runtime_error("map_erase_decode: inconsistent erasure system");
    }

    for (int col = 0; col < nc; ++col) {
        const int r = pivot_row_of_col[col];
        if (r < 0) continue;  // free variable, stays erased
        int ones = 0;
        for (int k = 0; k < words; ++k) {
            std::uint64_t x = rows[r][k];
            if (k == nc / 64) x &= (std::uint64_t{1} << (nc % 64)) - 1;
            ones += __builtin_popcountll(x);
        }
        if (ones == 1) {
            const int b = static_cast<int>((rows[r][nc / 64] >> (nc % 64)) & 1);
            w[cols[col]] = sym_of(b);
        }
    }
    return w;
}

} // namespace badcodes
