#include "badcodes/info_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "badcodes/density_evolution.hpp"
#include "badcodes/erasure.hpp"

namespace badcodes {

namespace {
constexpr double kLog2 = 0.69314718055994530941723212145818;

// golden-section minimizer for unimodal slices
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol, long* evals = nullptr) {
    const double gr = 0.61803398874989484820;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    if (evals) *evals += 2;
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
        if (evals) ++*evals;
    }
    return 0.5 * (a + b);
}
} // namespace

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return (-x * std::log(x) - (1.0 - x) * std::log(1.0 - x)) / kLog2;
}

void BoundContext::validate() const {
    check_probability(delta2, "BoundContext delta2");
    check_probability(delta3, "BoundContext delta3");
    if (delta2_bp < 0.0 || delta2_bp > delta2 + 1e-12)
        throw std::invalid_argument("BoundContext: delta2_bp outside [0, delta2]");
    if (right_degree() < 2)
        throw std::invalid_argument("BoundContext: right degree < 2");
}

BoundContext make_bound_context(const EdgeDistribution& ed, double delta2,
                                double delta3, DeStatistic stat, int de_iters) {
    BoundContext ctx;
    ctx.ed = ed;
    ctx.delta2 = delta2;
    ctx.delta3 = delta3;
    const DeResult de = de_bec(ed, delta2, de_iters, 1e-14);
    ctx.delta2_bp = stat == DeStatistic::bit_level ? de.final_bit_erasure
                                                   : de.per_iteration.back();
    ctx.validate();
    return ctx;
}

double naive_bound(const BoundContext& ctx, double dhat2) {
    check_probability(dhat2, "naive_bound dhat2");
    const double b = ctx.delta2_bp;
    const double comp = circ(b, dhat2);
    return binary_entropy(comp) + (1.0 - comp) * ctx.delta3 -
           binary_entropy(dhat2) * (1.0 - b);
}

double f_alpha(const std::map<int, double>& lt, int d, double R, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("f_alpha: alpha outside (0,1)");
    if (d < 2) throw std::invalid_argument("f_alpha: right degree < 2");

    double gamma = 0.0;
    for (const auto& [deg, frac] : lt) gamma += deg * frac;

    // term1(beta) = log2 inf_{x,y>0} prod_i (1+x y^i)^{lt_i} / (x^alpha y^beta),
    // minimized over (u,v) = (ln x, ln y): convex (log-sum-exp of affine maps).
    auto term1 = [&](double beta, long* budget) {
        auto obj = [&](double u, double v) {
            double s = 0.0;
            for (const auto& [deg, frac] : lt) {
                const double z = u + deg * v;
                s += frac * (z > 35.0 ? z : std::log1p(std::exp(z)));
            }
            return (s - alpha * u - beta * v) / kLog2;
        };
        double u = 0.0, v = 0.0;
        long evals = 0;
        for (int sweep = 0; sweep < 400; ++sweep) {
            const double u0 = u, v0 = v;
            u = golden_min([&](double uu) { return obj(uu, v); }, u - 25, u + 25,
                           1e-9, &evals);
            v = golden_min([&](double vv) { return obj(u, vv); }, v - 25, v + 25,
                           1e-9, &evals);
            if (std::abs(u - u0) < 1e-10 && std::abs(v - v0) < 1e-10) break;
        }
        *budget = std::max(*budget, evals);
        return obj(u, v);
    };

    // term2(beta) = log2 inf_{x>0} ((1+x)^d - dx)^{1-R} / x^beta; the base is a
    // polynomial with nonnegative coefficients, so the log is convex in ln x.
    auto term2 = [&](double beta) {
        auto obj = [&](double u) {
            const double x = std::exp(u);
            const double lv = d * std::log1p(x);
            // past this point the dx correction is below double precision
            const double val =
                lv > 600.0 ? lv : std::log(std::pow(1.0 + x, d) - d * x);
            return ((1.0 - R) * val - beta * u) / kLog2;
        };
        return obj(golden_min(obj, -60.0, 60.0, 1e-9));
    };

    long worst_inner = 0;
    const double eps = 1e-9;
    auto g = [&](double beta) {
        return term1(beta, &worst_inner) + term2(beta) -
               gamma * binary_entropy(beta / gamma);
    };

    const int nb = 64;
    double best = -1e300, best_beta = eps;
    for (int k = 0; k < nb; ++k) {
        const double beta = eps + (gamma - 2 * eps) * k / (nb - 1);
        const double v = g(beta);
        if (v > best) { best = v; best_beta = beta; }
    }
    const double lo = std::max(eps, best_beta - (gamma - 2 * eps) / (nb - 1));
    const double hi = std::min(gamma - eps, best_beta + (gamma - 2 * eps) / (nb - 1));
    const double bm = golden_min([&](double b) { return -g(b); }, lo, hi, 1e-10);
    const double result = g(bm);
    if (worst_inner > 100000) {
        std::ostringstream os;
        os << "f_alpha: inner optimizer budget exhausted, best iterate " << result;
        throw std::runtime_error(os.str());
    }
    return std::max(result, best);
}

double f_alpha(const BoundContext& ctx, double alpha) {
    return f_alpha(ctx.ed.lambda_node_fractions(), ctx.right_degree(),
                   ctx.design_rate(), alpha);
}

double A_term(const BoundContext& ctx, double dhat2) {
    check_probability(dhat2, "A_term dhat2");
    const double b = ctx.delta2_bp;
    const int d = ctx.right_degree();
    const double keep = 1.0 - dhat2;
    return ctx.delta3 * keep *
               ((1.0 - ctx.delta2) +
                (ctx.delta2 - b) * (1.0 - std::pow(keep, d - 1))) -
           (1.0 - b) * binary_entropy(dhat2);
}

IPlusCurve::IPlusCurve(const BoundContext& ctx, int grid_points) : ctx_(ctx) {
    ctx_.validate();
    f_value_ = f_alpha(ctx_, ctx_.delta2_bp);
    grid_.resize(grid_points);
    envelope_.resize(grid_points);
    double run = 1e300;
    for (int k = 0; k < grid_points; ++k) {
        grid_[k] = static_cast<double>(k) / (grid_points - 1);
        run = std::min(run, pointwise_min(grid_[k]));
        envelope_[k] = run;
    }
}

double IPlusCurve::i1(double dhat2) const {
    return A_term(ctx_, dhat2) + binary_entropy(circ(ctx_.delta2_bp, dhat2));
}

double IPlusCurve::i2(double dhat2) const {
    return A_term(ctx_, dhat2) + f_value_ +
           (1.0 - ctx_.delta2_bp) * binary_entropy(dhat2);
}

double IPlusCurve::pointwise_min(double dhat2) const {
    return std::min(i1(dhat2), i2(dhat2));
}

double IPlusCurve::operator()(double dhat2) const {
    check_probability(dhat2, "i_plus dhat2");
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), dhat2);
    double env = 1e300;
    if (it != grid_.begin()) env = envelope_[(it - grid_.begin()) - 1];
    return std::min(env, pointwise_min(dhat2));
}

double IPlusCurve::min_quantization_noise(double c_o) const {
    if (c_o < 0.0)
        throw std::invalid_argument("min_quantization_noise: c_o < 0");
    if ((*this)(1.0) > c_o) return 1.0;
    // first grid cell where the envelope crosses, then bisect on the envelope
    std::size_t k = 0;
    while (k < grid_.size() && envelope_[k] > c_o) ++k;
    if (k == 0) return 0.0;
    double lo = grid_[k - 1], hi = grid_[k];
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(mid) <= c_o) hi = mid;
        else lo = mid;
    }
    return hi;
}

std::string IPlusCurve::curve_csv(int points) const {
    std::ostringstream os;
    os.precision(12);
    os << "dhat2,i_plus,naive,good_code\n";
    for (int k = 0; k < points; ++k) {
        const double dh = static_cast<double>(k) / (points - 1);
        os << dh << ',' << (*this)(dh) << ',' << naive_bound(ctx_, dh) << ','
           << good_code_quantization_mi(ctx_.delta2, ctx_.delta3, dh) << '\n';
    }
    return os.str();
}

double i_plus(const BoundContext& ctx, double dhat2) {
    return IPlusCurve(ctx)(dhat2);
}

double min_quantization_noise(const BoundContext& ctx, double c_o) {
    return IPlusCurve(ctx).min_quantization_noise(c_o);
}

double good_code_quantization_mi(double delta2, double delta3, double dhat2) {
    const double comp = circ(delta2, dhat2);
    return binary_entropy(comp) + (1.0 - comp) * delta3 -
           binary_entropy(dhat2) * (1.0 - delta2);
}

double pmap_good(double delta, double R) {
    check_probability(delta, "pmap_good delta");
    const double dstar = 1.0 - R;
    if (delta == dstar)
        throw std::invalid_argument("pmap_good: undefined at delta = 1 - R");
    return delta > dstar ? delta : 0.0;
}

} // namespace badcodes
