#ifndef BADCODES_LP_HPP
#define BADCODES_LP_HPP

#include <string>
#include <vector>

namespace badcodes {

// maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, 0 <= x <= upper
struct LpProblem {
    std::vector<double> objective;
    std::vector<std::vector<double>> a_ub;
    std::vector<double> b_ub;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
    std::vector<double> upper;  // empty means all 1.0

    void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

// Dense two-phase simplex with Bland's rule; deterministic and portable.
LpSolution solve_lp(const LpProblem& p, double tol = 1e-9);

} // namespace badcodes

#endif
