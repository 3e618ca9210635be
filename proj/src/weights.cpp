#include "gapcheck/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "gapcheck/quadrature.hpp"

namespace gapcheck {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

RadialProfile flat_laplacian() {
    return {"flat",
            [](double rho) { return 3.0 / rho; },
            [](double rho) { return -3.0 / (rho * rho); }};
}

RadialProfile hyperbolic_laplacian() {
    return {"hyperbolic",
            [](double rho) { return 3.0 / std::tanh(rho); },
            [](double rho) {
                const double sh = std::sinh(rho);
                return -3.0 / (sh * sh);
            }};
}

RadialProfile chm_laplacian_profile(int m) {
    if (m < 1) throw std::invalid_argument("chm_laplacian_profile: m must be >= 1");
    return {"chm", [m](double rho) { return chm_laplacian(m, rho); },
            [m](double rho) { return chm_laplacian_derivative(m, rho); }};
}

RadialWeight carron_weight() {
    return {"carron", [](double rho) { return 1.0 / (rho * rho); }};
}

RadialWeight comparison_weight(std::function<double(double)> psi,
                               std::function<double(double)> dpsi,
                               std::function<double(double)> ddpsi, std::string name) {
    return {std::move(name), [psi = std::move(psi), dpsi = std::move(dpsi),
                              ddpsi = std::move(ddpsi)](double rho) {
                const double p = psi(rho);
                const double dp = dpsi(rho);
                return 0.75 * (2.0 * ddpsi(rho) / p + (dp * dp - 1.0) / (p * p)) +
                       0.25 / (rho * rho) + 0.75 / (p * p);
            }};
}

RadialWeight bgg_weight(double b) {
    if (b < 0.0) throw std::invalid_argument("bgg_weight: b must be >= 0");
    // psi = sinh(b rho)/b collapses the profile weight to
    // 9 b^2/4 + 1/(4 rho^2) + 3 b^2/(4 sinh^2(b rho)); b = 0 is the flat limit.
    return {"bgg", [b](double rho) {
                const double hardy = 0.25 / (rho * rho);
                if (b == 0.0) return hardy + 0.75 / (rho * rho);
                return 2.25 * b * b + hardy +
                       0.75 * b * b * std::exp(-2.0 * log_sinh(b * rho));
            }};
}

RadialWeight ak_weight(const RadialProfile& laplacian) {
    return {"ak/" + laplacian.name,
            [value = laplacian.value, derivative = laplacian.derivative](double rho) {
                const double lap = value(rho);
                return 0.25 / (rho * rho) + 0.25 * lap * lap + 0.5 * derivative(rho);
            }};
}

RadialWeight chm_weight(int m) {
    if (m < 1) throw std::invalid_argument("chm_weight: m must be >= 1");
    return {"chm", [m](double rho) {
                return static_cast<double>(m) * m + 0.25 / (rho * rho) +
                       (m - 1.0) * (m - 1.0) * std::exp(-2.0 * log_sinh(rho)) -
                       std::exp(-2.0 * log_sinh(2.0 * rho));
            }};
}

Cutoff linear_cutoff(double r) {
    if (r <= 0.0) throw std::invalid_argument("linear_cutoff: r must be positive");
    return {"linear", r, 2.0 * r,
            [r](double rho) {
                if (rho <= r) return 1.0;
                if (rho >= 2.0 * r) return 0.0;
                return 2.0 - rho / r;
            },
            [r](double rho) { return (rho <= r || rho >= 2.0 * r) ? 0.0 : -1.0 / r; }};
}

Cutoff log_cutoff(double r) {
    if (r <= 1.0) throw std::invalid_argument("log_cutoff: r must exceed 1");
    const double hi = r * r;
    const double lr = std::log(r);
    return {"log", r, hi,
            [r, hi, lr](double rho) {
                if (rho <= r) return 1.0;
                if (rho >= hi) return 0.0;
                return 2.0 - std::log(rho) / lr;
            },
            [r, hi, lr](double rho) { return (rho <= r || rho >= hi) ? 0.0 : -1.0 / (rho * lr); }};
}

Cutoff unit_cutoff(double r) {
    if (r <= 0.0) throw std::invalid_argument("unit_cutoff: r must be positive");
    return {"unit", r, r + 1.0,
            [r](double rho) {
                if (rho <= r) return 1.0;
                if (rho >= r + 1.0) return 0.0;
                return 1.0 - (rho - r);
            },
            [r](double rho) { return (rho <= r || rho >= r + 1.0) ? 0.0 : -1.0; }};
}

namespace {

// Largest value of log(f) + log(J) over linear, logarithmic, and top-anchored
// geometric probe grids on [a, b]. The geometric probes walk distances
// 2^j below b so a boundary layer of any width under exponential volume
// growth is sampled within a bounded factor of its peak. A max over actual
// evaluations can only underestimate the true sup, which keeps the shifted
// integrand >= its intended O(1) normalization without risking overflow.
double log_peak(const std::function<double(double)>& f, const ModelSpace& space, double a,
                double b) {
    double peak = -std::numeric_limits<double>::infinity();
    const auto probe = [&](double rho) {
        if (!(rho >= a) || !(rho <= b)) return;
        const double v = f(rho);
        if (v > 0.0) peak = std::max(peak, std::log(v) + space.log_volume_density(rho));
    };
    constexpr int kGrid = 256;
    const double log_a = std::log(std::max(a, 1e-9));
    const double log_b = std::log(b);
    for (int i = 0; i <= kGrid; ++i) {
        const double t = static_cast<double>(i) / kGrid;
        probe(a + t * (b - a));
        probe(std::exp(log_a + t * (log_b - log_a)));
    }
    for (double u = 1.0 / 1024.0; u < b - a; u *= 2.0) probe(b - u);
    return peak;
}

// Integral of f(rho) * exp(logJ(rho) - shift) over [a, b], walking segments
// down from b that start a quarter unit wide and double as they descend, so a
// thin boundary layer near the top (where exponential volume growth puts all
// the mass) cannot be stepped over by the adaptive rule's first probes.
double laddered_integral(const std::function<double(double)>& f, const ModelSpace& space,
                         double shift, double a, double b) {
    if (!(b > a)) return 0.0;
    const auto g = [&](double rho) {
        const double scale = std::exp(space.log_volume_density(rho) - shift);
        return scale == 0.0 ? 0.0 : f(rho) * scale;
    };
    constexpr double kMaxWidth = 16.0;
    double width = 0.25;
    double total = 0.0;
    double top = b;
    while (top > a) {
        const double lo = std::max(a, top - width);
        total += integrate(g, lo, top, 1e-11);
        top = lo;
        width = std::min(2.0 * width, kMaxWidth);
    }
    return total;
}

double log_scaled_integral(const std::function<double(double)>& f, const ModelSpace& space,
                           double shift, double a, double b) {
    if (!(b > a)) return 0.0;
    const auto g = [&](double rho) {
        const double scale = std::exp(space.log_volume_density(rho) - shift);
        return scale == 0.0 ? 0.0 : f(rho) * scale;
    };
    return integrate_log(g, a, b, 1e-11);
}

}  // namespace

PoincareResult verify_poincare(const ModelSpace& space, const RadialWeight& weight,
                               const Cutoff& cutoff) {
    constexpr double kLo = 1e-9;
    const double hi = std::min(cutoff.support_hi, space.diameter);
    const double r = std::min(cutoff.r, hi);

    const auto num_f = [&](double rho) {
        const double d = cutoff.dphi(rho);
        return d * d;
    };
    const auto den_f = [&](double rho) {
        const double p = cutoff.phi(rho);
        return weight.q(rho) * p * p;
    };

    // Each side gets its own scale so the shifted integrand peaks at O(1) and
    // the absolute quadrature tolerance buys relative accuracy; the cutoff can
    // suppress the integrand by many orders against the raw volume peak.
    const double num_scale = log_peak(num_f, space, r, hi);
    const double den_scale = log_peak(den_f, space, kLo, hi);
    if (!std::isfinite(num_scale) || !std::isfinite(den_scale)) {
        return {0.0, std::isfinite(den_scale) ? 1.0 : 0.0, 0.0, 0.0};
    }

    const double num_val = laddered_integral(num_f, space, num_scale, r, hi);
    const double mid = std::min(1.0, r);
    const double den_val = log_scaled_integral(den_f, space, den_scale, kLo, mid) +
                           laddered_integral(den_f, space, den_scale, mid, r) +
                           laddered_integral(den_f, space, den_scale, r, hi);

    const double ratio =
        num_val <= 0.0 ? 0.0
                       : std::exp(std::log(num_val) - std::log(den_val) + num_scale - den_scale);
    // Report both integrals against the larger scale; rescaling only shrinks.
    const double shift = std::max(num_scale, den_scale);
    return {num_val * std::exp(num_scale - shift), den_val * std::exp(den_scale - shift), ratio,
            shift};
}

TrialResult hardy_trial(double eps, double inner, double r) {
    if (!(eps > 0.0) || !(inner > 0.0) || !(r > inner))
        throw std::invalid_argument("hardy_trial: need eps > 0 and 0 < inner < r");
    const Cutoff cut = linear_cutoff(r);
    const double s = -1.0 + eps;
    const double pi2 = kPi * kPi;

    // Flat volume density 2 pi^2 rho^3. Both integrands are exact powers on
    // [0, inner] where the cutoff is 1, so the heads integrate in closed form
    // to 2 pi^2 K with K = inner^{2 eps}/(2 eps); the gradient head carries
    // the extra (1-eps)^2. The seam at `inner` is pure bookkeeping: moving it
    // does not change the trial function.
    const double head = std::pow(inner, 2.0 * eps) / (2.0 * eps);
    double num = 2.0 * pi2 * (1.0 - eps) * (1.0 - eps) * head;
    double den = 2.0 * pi2 * head;

    const auto density = [&](double rho) { return 2.0 * pi2 * rho * rho * rho; };
    const auto num_f = [&](double rho) {
        const double d = s * std::pow(rho, s - 1.0) * cut.phi(rho) +
                         std::pow(rho, s) * cut.dphi(rho);
        return d * d * density(rho);
    };
    const auto den_f = [&](double rho) {
        const double f = std::pow(rho, s) * cut.phi(rho);
        return f * f / (rho * rho) * density(rho);
    };

    num += integrate_log(num_f, inner, r) + integrate(num_f, r, 2.0 * r);
    den += integrate_log(den_f, inner, r) + integrate(den_f, r, 2.0 * r);
    return {num, den, num / den};
}

TrialResult complex_hyperbolic_trial(double eps, double inner, double r) {
    if (!(eps > 0.0) || !(inner > 0.0) || !(r > inner))
        throw std::invalid_argument("complex_hyperbolic_trial: need eps > 0 and 0 < inner < r");
    const Cutoff cut = linear_cutoff(r);
    const RadialWeight weight = chm_weight(2);
    const double s = -1.0 + eps;
    const double pi2 = kPi * kPi;

    // Near the pole sinh(rho) ~ rho, the density ~ 2 pi^2 rho^3 and the weight
    // ~ 1/rho^2, so both head integrals reduce to 2 pi^2 K rho^{-1+2 eps} with
    // K = inner^{2 eps}/(2 eps); the gradient head carries the extra (1-eps)^2.
    const double head = std::pow(inner, 2.0 * eps) / (2.0 * eps);
    double num = 2.0 * pi2 * (1.0 - eps) * (1.0 - eps) * head;
    double den = 2.0 * pi2 * head;

    const auto density = [&](double rho) {
        const double sh = std::sinh(rho);
        return pi2 * sh * sh * std::sinh(2.0 * rho);
    };
    const auto num_f = [&](double rho) {
        const double sh = std::sinh(rho);
        const double d = s * std::pow(sh, s - 1.0) * std::cosh(rho) * cut.phi(rho) +
                         std::pow(sh, s) * cut.dphi(rho);
        return d * d * density(rho);
    };
    const auto den_f = [&](double rho) {
        const double f = std::pow(std::sinh(rho), s) * cut.phi(rho);
        return weight.q(rho) * f * f * density(rho);
    };

    num += integrate_log(num_f, inner, r) + integrate(num_f, r, 2.0 * r);
    den += integrate_log(den_f, inner, r) + integrate(den_f, r, 2.0 * r);
    return {num, den, num / den};
}

}  // namespace gapcheck
