#include "crgen/gaussian_tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crgen {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Laplace continued fraction for the Mills ratio,
// lambda(t) = t + 1/(t + 2/(t + 3/(...))), evaluated backwards.
// Accurate for t >= 6.
double mills_continued_fraction(double t) {
    double v = t;
    for (int j = 64; j >= 1; --j) v = t + j / v;
    return v;
}

}  // namespace

double normal_pdf(double t) {
    return std::exp(-0.5 * t * t - kHalfLog2Pi);
}

double q_tail(double t) {
    if (std::isnan(t)) throw domain_error("q_tail: NaN input");
    if (t > kQTailSaturation) return 0.0;
    if (t < -kQTailSaturation) return 1.0;
    return 0.5 * std::erfc(t * kInvSqrt2);
}

bool q_tail_saturated(double t) { return std::fabs(t) > kQTailSaturation; }

double log_q_tail(double t) {
    if (std::isnan(t)) throw domain_error("log_q_tail: NaN input");
    if (t >= 6.0) {
        // Q(t) = pdf(t)/lambda(t); both factors are stable in log space.
        return -0.5 * t * t - kHalfLog2Pi - std::log(mills_continued_fraction(t));
    }
    if (t <= -6.0) {
        // Q(t) = 1 - Q(-t), with Q(-t) tiny.
        return std::log1p(-std::exp(log_q_tail(-t)));
    }
    return std::log(0.5 * std::erfc(t * kInvSqrt2));
}

double mills_ratio(double t) {
    if (std::isnan(t) || t < 0.0) throw domain_error("mills_ratio: requires t >= 0");
    if (t >= 6.0) return mills_continued_fraction(t);
    return normal_pdf(t) / q_tail(t);
}

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("q_inverse: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -q_inverse(1.0 - p);

    // Newton iteration on log Q(t) = log p; d/dt log Q(t) = -lambda(t).
    const double target = std::log(p);
    double t = std::sqrt(std::max(0.0, -2.0 * std::log(2.0 * p)));
    if (t == 0.0) t = 0.1;
    for (int iter = 0; iter < 100; ++iter) {
        const double f = log_q_tail(t) - target;
        const double lam = mills_ratio(std::max(t, 0.0));
        double step = f / lam;
        step = std::clamp(step, -1.0, 1.0);
        t += step;
        if (t < 0.0) t = 0.0;  // p < 1/2 means the root is nonnegative
        if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(t))) break;
    }
    return t;
}

double sheppard_disagreement(double rho) {
    if (std::isnan(rho) || std::fabs(rho) > 1.0)
        throw domain_error("sheppard_disagreement: |rho| must be <= 1");
    return std::acos(rho) / M_PI;
}

namespace {

struct OrthantIntegrand {
    double phi_t;   // the threshold phi*t for Y
    double rho;
    double scale;   // sqrt(1 - rho^2)

    double operator()(double x) const {
        return normal_pdf(x) * q_tail((phi_t - rho * x) / scale);
    }
};

double adaptive_simpson(const OrthantIntegrand& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double orthant_probability(double t, double phi, double rho) {
    if (std::isnan(rho) || std::fabs(rho) > 1.0)
        throw domain_error("orthant_probability: |rho| must be <= 1");
    if (std::isnan(t) || std::isnan(phi))
        throw domain_error("orthant_probability: NaN input");

    const double s = phi * t;
    if (rho == 1.0) return q_tail(std::max(t, s));
    if (rho == -1.0) {
        // Y = -X: need X > t and X < -s.
        if (-s <= t) return 0.0;
        return q_tail(t) - q_tail(-s);
    }

    OrthantIntegrand f{s, rho, std::sqrt(1.0 - rho * rho)};
    const double lo = std::max(t, -40.0);
    const double hi = std::max(lo, 0.0) + 40.0;
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fm = f(m), fb = f(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, lo, hi, fa, fm, fb, whole, 1e-14, 48);
}

TailParams::TailParams(double t_, double phi_, double rho_, double delta_)
    : t(t_), phi(phi_), rho(rho_), delta(delta_) {
    if (t < 0.0) throw domain_error("TailParams: t must be nonnegative");
    if (!(rho >= 0.0 && rho < 1.0)) throw domain_error("TailParams: rho must lie in [0,1)");
    if (delta < 0.0) throw domain_error("TailParams: delta must be nonnegative");
    const double expect = rho + delta * std::sqrt(1.0 - rho * rho);
    if (std::fabs(phi - expect) > 1e-12 * std::max(1.0, std::fabs(expect)))
        throw domain_error("TailParams: phi != rho + delta*sqrt(1-rho^2)");
    const double dmax = std::sqrt((1.0 - rho) / (1.0 + rho));
    if (delta > dmax * (1.0 + 1e-12))
        throw domain_error("TailParams: delta exceeds sqrt((1-rho)/(1+rho))");
}

}  // namespace crgen
