#include "badcodes/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace badcodes {

void LpProblem::validate() const {
    const std::size_t n = objective.size();
    if (n == 0) throw std::invalid_argument("LpProblem: empty objective");
    if (a_ub.size() != b_ub.size() || a_eq.size() != b_eq.size())
        throw std::invalid_argument("LpProblem: row count mismatch");
    for (const auto& r : a_ub)
        if (r.size() != n) throw std::invalid_argument("LpProblem: bad ub row width");
    for (const auto& r : a_eq)
        if (r.size() != n) throw std::invalid_argument("LpProblem: bad eq row width");
    if (!upper.empty() && upper.size() != n)
        throw std::invalid_argument("LpProblem: bad bounds width");
    auto finite = [](double v) { return std::isfinite(v); };
    for (double v : objective)
        if (!finite(v)) throw std::invalid_argument("LpProblem: non-finite objective");
    for (const auto& r : a_ub)
        for (double v : r)
            if (!finite(v)) throw std::invalid_argument("LpProblem: non-finite entry");
    for (const auto& r : a_eq)
        for (double v : r)
            if (!finite(v)) throw std::invalid_argument("LpProblem: non-finite entry");
}

namespace {

enum class RowKind { le, ge, eq };

struct Row {
    std::vector<double> a;
    double b;
    RowKind kind;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p, double tol) {
    p.validate();
    const int n = static_cast<int>(p.objective.size());

    std::vector<Row> rows;
    for (std::size_t r = 0; r < p.a_ub.size(); ++r)
        rows.push_back({p.a_ub[r], p.b_ub[r], RowKind::le});
    for (int j = 0; j < n; ++j) {
        std::vector<double> a(n, 0.0);
        a[j] = 1.0;
        rows.push_back({a, p.upper.empty() ? 1.0 : p.upper[j], RowKind::le});
    }
    for (std::size_t r = 0; r < p.a_eq.size(); ++r)
        rows.push_back({p.a_eq[r], p.b_eq[r], RowKind::eq});

    // normalize to nonnegative right-hand sides
    for (auto& row : rows) {
        if (row.b < 0.0) {
            for (double& v : row.a) v = -v;
            row.b = -row.b;
            if (row.kind == RowKind::le) row.kind = RowKind::ge;
            else if (row.kind == RowKind::ge) row.kind = RowKind::le;
        }
    }

    const int m = static_cast<int>(rows.size());
    int slack_count = 0, art_count = 0;
    for (const auto& row : rows) {
        if (row.kind != RowKind::eq) ++slack_count;
        if (row.kind != RowKind::le) ++art_count;
        (void)row;
    }
    const int total = n + slack_count + art_count;
    const int rhs_col = total;

    std::vector<std::vector<double>> tab(m + 1, std::vector<double>(total + 1, 0.0));
    std::vector<int> basis(m, -1);

    int slack_at = n, art_at = n + slack_count;
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < n; ++j) tab[r][j] = rows[r].a[j];
        tab[r][rhs_col] = rows[r].b;
        switch (rows[r].kind) {
            case RowKind::le:
                tab[r][slack_at] = 1.0;
                basis[r] = slack_at++;
                break;
            case RowKind::ge:
                tab[r][slack_at++] = -1.0;
                tab[r][art_at] = 1.0;
                basis[r] = art_at++;
                break;
            case RowKind::eq:
                tab[r][art_at] = 1.0;
                basis[r] = art_at++;
                break;
        }
    }

    auto pivot = [&](int pr, int pc) {
        const double pv = tab[pr][pc];
        for (int c = 0; c <= total; ++c) tab[pr][c] /= pv;
        for (int r = 0; r <= m; ++r) {
            if (r == pr) continue;
            const double f = tab[r][pc];
            if (f == 0.0) continue;
            for (int c = 0; c <= total; ++c) tab[r][c] -= f * tab[pr][c];
        }
    };

    // Bland's rule: entering = lowest eligible column, leaving = lowest basis
    // index among the minimum ratios. Deterministic and cycle-free.
    auto run_simplex = [&](int allowed_cols) -> bool {
        for (;;) {
            int pc = -1;
            for (int c = 0; c < allowed_cols; ++c)
                if (tab[m][c] > tol) { pc = c; break; }
            if (pc < 0) return true;
            int pr = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                const double a = tab[r][pc];
                if (a > tol) {
                    const double ratio = tab[r][rhs_col] / a;
                    if (ratio < best - 1e-12 ||
                        (std::abs(ratio - best) <= 1e-12 &&
                         (pr < 0 || basis[r] < basis[pr]))) {
                        best = ratio;
                        pr = r;
                    }
                }
            }
            if (pr < 0) return false;  // unbounded direction
            pivot(pr, pc);
            basis[pr] = pc;
        }
    };

    LpSolution sol;

    if (art_count > 0) {
        // phase 1: maximize minus the artificial sum; the reduced objective
        // row is the sum of the artificial-basis rows
        for (int c = 0; c <= total; ++c) tab[m][c] = 0.0;
        for (int r = 0; r < m; ++r)
            if (basis[r] >= n + slack_count)
                for (int c = 0; c <= total; ++c) tab[m][c] += tab[r][c];
        for (int c = n + slack_count; c < total; ++c) tab[m][c] = 0.0;
        run_simplex(n + slack_count);
        if (tab[m][rhs_col] > 1e-7) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        for (int r = 0; r < m; ++r) {
            if (basis[r] >= n + slack_count) {
                int pc = -1;
                for (int c = 0; c < n + slack_count; ++c)
                    if (std::abs(tab[r][c]) > tol) { pc = c; break; }
                if (pc >= 0) { pivot(r, pc); basis[r] = pc; }
                // an all-zero row stays basic on its artificial at level zero
            }
        }
    }

    for (int c = 0; c <= total; ++c) tab[m][c] = 0.0;
    for (int j = 0; j < n; ++j) tab[m][j] = p.objective[j];
    for (int r = 0; r < m; ++r) {
        if (basis[r] < total && tab[m][basis[r]] != 0.0) {
            const double f = tab[m][basis[r]];
            for (int c = 0; c <= total; ++c) tab[m][c] -= f * tab[r][c];
        }
    }
    if (!run_simplex(n + slack_count)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    sol.status = LpStatus::optimal;
    sol.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (basis[r] < n) sol.x[basis[r]] = tab[r][rhs_col];
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.x[j];
    return sol;
}

} // namespace badcodes
