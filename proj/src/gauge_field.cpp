#include "gapcheck/gauge_field.hpp"

#include <cmath>
#include <stdexcept>

#include "gapcheck/quadrature.hpp"

namespace gapcheck {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

const std::array<SkewMatrix, 3>& generators(ConnectionKind kind) {
    static const std::array<SkewMatrix, 3> plus = selfdual_generators();
    static const std::array<SkewMatrix, 3> minus = antiselfdual_generators();
    return kind == ConnectionKind::anti_bpst ? minus : plus;
}

AlgebraTwoForm zero_form() {
    AlgebraTwoForm f;
    for (int k = 0; k < 6; ++k) f.c[k] = SkewMatrix::Zero(4, 4);
    return f;
}

}  // namespace

ConnectionKind connection_kind(const std::string& name) {
    if (name == "bpst") return ConnectionKind::bpst;
    if (name == "anti-bpst" || name == "anti_bpst") return ConnectionKind::anti_bpst;
    if (name == "zero") return ConnectionKind::zero;
    throw std::invalid_argument("unknown connection: " + name);
}

std::string connection_name(ConnectionKind kind) {
    switch (kind) {
        case ConnectionKind::bpst: return "bpst";
        case ConnectionKind::anti_bpst: return "anti-bpst";
        case ConnectionKind::zero: return "zero";
    }
    throw std::invalid_argument("unknown connection kind");
}

std::array<SkewMatrix, 4> GaugeField::connection(const Eigen::Vector4d& x) const {
    std::array<SkewMatrix, 4> a;
    for (auto& m : a) m = SkewMatrix::Zero(4, 4);
    if (kind == ConnectionKind::zero) return a;
    if (!(lambda > 0.0)) throw std::invalid_argument("connection: lambda must be positive");
    const Eigen::Vector4d z = x - center;
    const double f = 1.0 / (lambda * lambda + z.squaredNorm());
    const auto& e = generators(kind);
    for (int mu = 0; mu < 4; ++mu)
        for (int a_idx = 0; a_idx < 3; ++a_idx) {
            double coef = 0.0;
            for (int nu = 0; nu < 4; ++nu) coef += e[a_idx](mu, nu) * z[nu];
            a[mu] -= f * coef * e[a_idx];
        }
    return a;
}

AlgebraTwoForm GaugeField::curvature(const Eigen::Vector4d& x) const {
    if (kind == ConnectionKind::zero) return zero_form();
    if (!(lambda > 0.0)) throw std::invalid_argument("curvature: lambda must be positive");
    const Eigen::Vector4d z = x - center;
    const double f = 1.0 / (lambda * lambda + z.squaredNorm());
    const double s = 2.0 * lambda * lambda * f * f;
    const auto& e = generators(kind);
    AlgebraTwoForm out = zero_form();
    for (int k = 0; k < 6; ++k) {
        static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        for (int a_idx = 0; a_idx < 3; ++a_idx)
            out.c[k] += s * e[a_idx](pairs[k][0], pairs[k][1]) * e[a_idx];
    }
    return out;
}

AlgebraTwoForm GaugeField::curvature_fd(const Eigen::Vector4d& x, double h) const {
    const std::array<SkewMatrix, 4> a = connection(x);
    std::array<std::array<SkewMatrix, 4>, 4> da;  // da[mu][nu] = d_mu A_nu
    for (int mu = 0; mu < 4; ++mu) {
        Eigen::Vector4d xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        const auto ap = connection(xp);
        const auto am = connection(xm);
        for (int nu = 0; nu < 4; ++nu) da[mu][nu] = (ap[nu] - am[nu]) / (2.0 * h);
    }
    AlgebraTwoForm out = zero_form();
    for (int k = 0; k < 6; ++k) {
        static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        const int i = pairs[k][0], j = pairs[k][1];
        out.c[k] = da[i][j] - da[j][i] + bracket(a[i], a[j]);
    }
    return out;
}

double GaugeField::norm_flat(const Eigen::Vector4d& x) const {
    return std::sqrt(norm_squared(curvature(x), metric));
}

double GaugeField::norm_selfdual(const Eigen::Vector4d& x) const {
    return std::sqrt(norm_squared(project_pm(curvature(x), +1), metric));
}

double GaugeField::norm_antiselfdual(const Eigen::Vector4d& x) const {
    return std::sqrt(norm_squared(project_pm(curvature(x), -1), metric));
}

double GaugeField::norm_sphere(const Eigen::Vector4d& x) const {
    const double w = 0.5 * (1.0 + x.squaredNorm());
    return norm_flat(x) * w * w;
}

double GaugeField::ym_residual(const Eigen::Vector4d& x, double h) const {
    const std::array<SkewMatrix, 4> a = connection(x);
    const AlgebraTwoForm f0 = curvature(x);
    std::array<AlgebraTwoForm, 4> df;  // df[mu] = d_mu F
    for (int mu = 0; mu < 4; ++mu) {
        Eigen::Vector4d xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        const AlgebraTwoForm fp = curvature(xp);
        const AlgebraTwoForm fm = curvature(xm);
        df[mu] = (fp - fm) * (0.5 / h);
    }
    double worst = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
        SkewMatrix r = SkewMatrix::Zero(4, 4);
        for (int mu = 0; mu < 4; ++mu) {
            if (mu == nu) continue;
            r += df[mu].component(mu, nu) + bracket(a[mu], f0.component(mu, nu));
        }
        worst = std::max(worst, norm(r, metric));
    }
    return worst;
}

double GaugeField::bianchi_residual(const Eigen::Vector4d& x, double h) const {
    const std::array<SkewMatrix, 4> a = connection(x);
    const AlgebraTwoForm f0 = curvature(x);
    std::array<AlgebraTwoForm, 4> df;
    for (int mu = 0; mu < 4; ++mu) {
        Eigen::Vector4d xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        df[mu] = (curvature(xp) - curvature(xm)) * (0.5 / h);
    }
    const auto cov = [&](int mu, int nu, int rho) {
        return SkewMatrix(df[mu].component(nu, rho) + bracket(a[mu], f0.component(nu, rho)));
    };
    double worst = 0.0;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = mu + 1; nu < 3; ++nu)
            for (int rho = nu + 1; rho < 4; ++rho) {
                const SkewMatrix r = cov(mu, nu, rho) + cov(nu, rho, mu) + cov(rho, mu, nu);
                worst = std::max(worst, norm(r, metric));
            }
    return worst;
}

double GaugeField::kato_ratio(const Eigen::Vector4d& x, double h) const {
    if (kind == ConnectionKind::zero)
        throw std::domain_error("kato_ratio: undefined for the flat connection");
    const Eigen::Vector4d z = x - center;
    const double u = z.squaredNorm();
    if (u == 0.0) throw std::domain_error("kato_ratio: |F| is critical at the center");

    const std::array<SkewMatrix, 4> a = connection(x);
    std::array<AlgebraTwoForm, 4> df;
    for (int mu = 0; mu < 4; ++mu) {
        Eigen::Vector4d xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        df[mu] = (curvature(xp) - curvature(xm)) * (0.5 / h);
    }
    const AlgebraTwoForm f0 = curvature(x);
    double grad_sq = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        for (int k = 0; k < 6; ++k) {
            const SkewMatrix d = df[mu].c[k] + bracket(a[mu], f0.c[k]);
            grad_sq += inner(d, d, metric);
        }
    }
    if (metric.convention == Convention::tensor) grad_sq *= 2.0;

    // |F| = K (lambda^2 + u)^{-2}  =>  |d|F||^2 = 16 K^2 u (lambda^2 + u)^{-6}.
    const double conv = metric.convention == Convention::tensor ? 2.0 : 1.0;
    const double k_sq = 96.0 * metric.alpha * conv * std::pow(lambda, 4.0);
    const double denom_pow = std::pow(lambda * lambda + u, 6.0);
    const double norm_grad_sq = 16.0 * k_sq * u / denom_pow;
    return grad_sq / norm_grad_sq;
}

double charge_radial(const GaugeField& field) {
    if (field.kind == ConnectionKind::zero) return 0.0;
    AlgebraMetric standard = field.metric;
    standard.convention = Convention::standard;
    GaugeField probe = field;
    probe.metric = standard;
    const Eigen::Vector4d axis(1.0, 0.0, 0.0, 0.0);
    const auto integrand = [&](double rho) {
        const Eigen::Vector4d x = probe.center + rho * axis;
        const double plus = probe.norm_selfdual(x);
        const double minus = probe.norm_antiselfdual(x);
        return (plus * plus - minus * minus) * 2.0 * kPi * kPi * rho * rho * rho;
    };
    const double lam = field.lambda;
    return integrate_log(integrand, 1e-8 * lam, 1e4 * lam) / (8.0 * kPi * kPi);
}

double charge_monte_carlo(const GaugeField& field, std::uint64_t seed, int samples) {
    if (samples <= 0) throw std::invalid_argument("charge_monte_carlo: samples must be positive");
    if (field.kind == ConnectionKind::zero) return 0.0;
    AlgebraMetric standard = field.metric;
    standard.convention = Convention::standard;
    GaugeField probe = field;
    probe.metric = standard;

    const double radius = 6.0 * field.lambda;
    std::mt19937_64 rng(seed);
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        Eigen::Vector4d p;
        do {
            for (int k = 0; k < 4; ++k) p[k] = uniform(rng, -radius, radius);
        } while (p.squaredNorm() > radius * radius);
        const Eigen::Vector4d x = probe.center + p;
        const double plus = probe.norm_selfdual(x);
        const double minus = probe.norm_antiselfdual(x);
        acc += plus * plus - minus * minus;
    }
    const double volume = 0.5 * kPi * kPi * radius * radius * radius * radius;
    return volume * (acc / samples) / (8.0 * kPi * kPi);
}

}  // namespace gapcheck
