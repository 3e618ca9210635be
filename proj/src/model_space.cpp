#include "gapcheck/model_space.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "gapcheck/algebra.hpp"
#include "gapcheck/quadrature.hpp"

namespace gapcheck {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

inline double recip(double x) { return 1.0 / x; }

template <typename T>
using Mat4T = std::array<std::array<T, 4>, 4>;

// g = phi^2 I with phi = 2 / (1 + curv_sign |x|^2): the round sphere of
// curvature +1 (curv_sign = +1), hyperbolic space of curvature -1
// (curv_sign = -1), or flat space (curv_sign = 0, phi = 2 rescaled to 1).
template <typename T>
Mat4T<T> conformal_ball_metric(const std::array<T, 4>& x, double curv_sign) {
    Mat4T<T> g{};
    if (curv_sign == 0.0) {
        for (int i = 0; i < 4; ++i) g[i][i] = T(1.0);
        return g;
    }
    T r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    T d = 1.0 + curv_sign * r2;
    T phi2 = 4.0 * recip(d * d);
    for (int i = 0; i < 4; ++i) g[i][i] = phi2;
    return g;
}

// Kahler potential K = sign * log(1 + sign |z|^2) on C^2, z = (x0 + i x1,
// x2 + i x3): sign = +1 is the Fubini-Study chart, sign = -1 the complex
// ball. Real metric G(2i+u, 2j+v) from the Hermitian g_{i jbar} =
// (d delta_ij - sign zbar_i z_j)/d^2, d = 1 + sign |z|^2.
template <typename T>
Mat4T<T> kahler_pair_metric(const std::array<T, 4>& x, double sign) {
    const T p[2] = {x[0], x[2]};
    const T q[2] = {x[1], x[3]};
    T zz = p[0] * p[0] + q[0] * q[0] + p[1] * p[1] + q[1] * q[1];
    T d = 1.0 + sign * zz;
    T inv_d2 = recip(d * d);
    Mat4T<T> g{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            T re = ((i == j) ? d : T(0.0)) - sign * (p[i] * p[j] + q[i] * q[j]);
            T im = (-sign) * (p[i] * q[j] - q[i] * p[j]);
            T a = re * inv_d2;
            T b = im * inv_d2;
            g[2 * i][2 * j] = a;
            g[2 * i + 1][2 * j + 1] = a;
            g[2 * i][2 * j + 1] = b;
            g[2 * i + 1][2 * j] = -b;
        }
    }
    return g;
}

// Product chart (chi, theta, phi, t) on S^3 x R, round factor of radius 1.
template <typename T>
Mat4T<T> cylinder_metric(const std::array<T, 4>& x) {
    using std::sin;
    Mat4T<T> g{};
    T s_chi = sin(x[0]);
    T s_theta = sin(x[1]);
    g[0][0] = T(1.0);
    g[1][1] = s_chi * s_chi;
    g[2][2] = g[1][1] * s_theta * s_theta;
    g[3][3] = T(1.0);
    return g;
}

template <typename F>
std::function<Mat4(const Vec4&)> wrap_plain(F f) {
    return [f](const Vec4& x) {
        std::array<double, 4> a{x[0], x[1], x[2], x[3]};
        Mat4T<double> g = f(a);
        Mat4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = g[i][j];
        return m;
    };
}

template <typename F>
std::function<JetMat4(const Vec4&)> wrap_jet(F f) {
    return [f](const Vec4& x) {
        std::array<Jet4, 4> a;
        for (int i = 0; i < 4; ++i) a[i] = Jet4::variable(x[i], i);
        return f(a);
    };
}

double s3xr_volume_density(double rho) {
    if (rho <= 0.0) return 0.0;
    // Geodesic sphere area on the cylinder: directions split between the S^3
    // factor (angle theta from the axis) and the line; the sphere of radius
    // rho meets S^3-distance rho sin(theta) <= pi.
    const double theta_max = rho <= kPi ? kPi / 2 : std::asin(kPi / rho);
    const double value = integrate(
        [rho](double theta) {
            const double s = std::sin(rho * std::sin(theta));
            return s * s;
        },
        0.0, theta_max, 1e-12);
    return 8.0 * kPi * rho * value;
}

ModelSpace make_r4() {
    ModelSpace s;
    s.id = Space::R4;
    s.name = "R4";
    s.diameter = kInf;
    s.growth = VolumeGrowth::polynomial;
    s.sectional_min = 0.0;
    s.sectional_max = 0.0;
    auto f = [](const auto& x) { return conformal_ball_metric(x, 0.0); };
    s.metric = wrap_plain(f);
    s.metric_jet = wrap_jet(f);
    s.in_chart = [](const Vec4&) { return true; };
    s.sample = [](std::mt19937_64& rng) {
        Vec4 x;
        for (int i = 0; i < 4; ++i) x[i] = uniform(rng, -1.5, 1.5);
        return x;
    };
    s.rho = [](const Vec4& x) { return x.norm(); };
    s.point_at_rho = [](double r) { return Vec4(r, 0.0, 0.0, 0.0); };
    s.volume_density = [](double r) { return 2.0 * kPi * kPi * r * r * r; };
    s.log_volume_density = [](double r) { return std::log(2.0 * kPi * kPi) + 3.0 * std::log(r); };
    s.laplacian_rho = [](double r) { return 3.0 / r; };
    return s;
}

ModelSpace make_s4() {
    ModelSpace s;
    s.id = Space::S4;
    s.name = "S4";
    s.diameter = kPi;
    s.growth = VolumeGrowth::finite;
    s.sectional_min = 1.0;
    s.sectional_max = 1.0;
    auto f = [](const auto& x) { return conformal_ball_metric(x, 1.0); };
    s.metric = wrap_plain(f);
    s.metric_jet = wrap_jet(f);
    s.in_chart = [](const Vec4&) { return true; };
    s.sample = [](std::mt19937_64& rng) {
        Vec4 x;
        for (int i = 0; i < 4; ++i) x[i] = uniform(rng, -0.9, 0.9);
        return x;
    };
    s.rho = [](const Vec4& x) { return 2.0 * std::atan(x.norm()); };
    s.point_at_rho = [](double r) { return Vec4(std::tan(0.5 * r), 0.0, 0.0, 0.0); };
    s.volume_density = [](double r) {
        if (r <= 0.0 || r >= kPi) return 0.0;
        const double sn = std::sin(r);
        return 2.0 * kPi * kPi * sn * sn * sn;
    };
    s.log_volume_density = [](double r) {
        return std::log(2.0 * kPi * kPi) + 3.0 * std::log(std::sin(r));
    };
    s.laplacian_rho = [](double r) { return 3.0 / std::tan(r); };
    return s;
}

ModelSpace make_h4() {
    ModelSpace s;
    s.id = Space::H4;
    s.name = "H4";
    s.diameter = kInf;
    s.growth = VolumeGrowth::exponential;
    s.sectional_min = -1.0;
    s.sectional_max = -1.0;
    auto f = [](const auto& x) { return conformal_ball_metric(x, -1.0); };
    s.metric = wrap_plain(f);
    s.metric_jet = wrap_jet(f);
    s.in_chart = [](const Vec4& x) { return x.norm() < 1.0; };
    s.sample = [](std::mt19937_64& rng) {
        while (true) {
            Vec4 x;
            for (int i = 0; i < 4; ++i) x[i] = uniform(rng, -0.8, 0.8);
            if (x.norm() < 0.8) return x;
        }
    };
    s.rho = [](const Vec4& x) { return 2.0 * std::atanh(x.norm()); };
    s.point_at_rho = [](double r) { return Vec4(std::tanh(0.5 * r), 0.0, 0.0, 0.0); };
    s.volume_density = [](double r) {
        const double sh = std::sinh(r);
        return 2.0 * kPi * kPi * sh * sh * sh;
    };
    s.log_volume_density = [](double r) { return std::log(2.0 * kPi * kPi) + 3.0 * log_sinh(r); };
    s.laplacian_rho = [](double r) { return 3.0 / std::tanh(r); };
    return s;
}

ModelSpace make_s3xr() {
    ModelSpace s;
    s.id = Space::S3xR;
    s.name = "S3xR";
    s.diameter = kInf;
    s.growth = VolumeGrowth::polynomial;
    s.sectional_min = 0.0;
    s.sectional_max = 1.0;
    auto f = [](const auto& x) { return cylinder_metric(x); };
    s.metric = wrap_plain(f);
    s.metric_jet = wrap_jet(f);
    s.in_chart = [](const Vec4& x) {
        return x[0] > 0.0 && x[0] < kPi && x[1] > 0.0 && x[1] < kPi;
    };
    s.sample = [](std::mt19937_64& rng) {
        Vec4 x;
        x[0] = uniform(rng, 0.3, kPi - 0.3);
        x[1] = uniform(rng, 0.3, kPi - 0.3);
        x[2] = uniform(rng, 0.0, 2.0 * kPi);
        x[3] = uniform(rng, -1.0, 1.0);
        return x;
    };
    // Base point: pole chi = 0 at t = 0. Product distance.
    s.rho = [](const Vec4& x) { return std::hypot(x[0], x[3]); };
    s.point_at_rho = [](double r) {
        if (r < kPi - 0.2) return Vec4(r, 0.5, 0.5, 0.0);
        const double chi = 0.5 * kPi;
        return Vec4(chi, 0.5, 0.5, std::sqrt(r * r - chi * chi));
    };
    s.volume_density = s3xr_volume_density;
    s.log_volume_density = [](double r) { return std::log(s3xr_volume_density(r)); };
    s.laplacian_rho = [](double r) {
        const double h = 1e-5 * std::max(1.0, r);
        const double lo = std::max(r - h, 1e-12);
        return (std::log(s3xr_volume_density(r + h)) - std::log(s3xr_volume_density(lo))) /
               (r + h - lo);
    };
    return s;
}

ModelSpace make_cp2() {
    ModelSpace s;
    s.id = Space::CP2;
    s.name = "CP2";
    s.diameter = kPi / 2;
    s.growth = VolumeGrowth::finite;
    s.sectional_min = 1.0;
    s.sectional_max = 4.0;
    auto f = [](const auto& x) { return kahler_pair_metric(x, 1.0); };
    s.metric = wrap_plain(f);
    s.metric_jet = wrap_jet(f);
    s.in_chart = [](const Vec4&) { return true; };
    s.sample = [](std::mt19937_64& rng) {
        Vec4 x;
        for (int i = 0; i < 4; ++i) x[i] = uniform(rng, -0.9, 0.9);
        return x;
    };
    s.rho = [](const Vec4& x) { return std::atan(x.norm()); };
    s.point_at_rho = [](double r) { return Vec4(std::tan(r), 0.0, 0.0, 0.0); };
    s.volume_density = [](double r) {
        if (r <= 0.0 || r >= kPi / 2) return 0.0;
        const double sn = std::sin(r);
        return kPi * kPi * sn * sn * std::sin(2.0 * r);
    };
    s.log_volume_density = [](double r) {
        return 2.0 * std::log(kPi) + 2.0 * std::log(std::sin(r)) + std::log(std::sin(2.0 * r));
    };
    s.laplacian_rho = [](double r) { return 2.0 / std::tan(r) + 2.0 / std::tan(2.0 * r); };
    return s;
}

ModelSpace make_ch2() {
    ModelSpace s;
    s.id = Space::CH2;
    s.name = "CH2";
    s.diameter = kInf;
    s.growth = VolumeGrowth::exponential;
    s.sectional_min = -4.0;
    s.sectional_max = -1.0;
    auto f = [](const auto& x) { return kahler_pair_metric(x, -1.0); };
    s.metric = wrap_plain(f);
    s.metric_jet = wrap_jet(f);
    s.in_chart = [](const Vec4& x) { return x.norm() < 1.0; };
    s.sample = [](std::mt19937_64& rng) {
        while (true) {
            Vec4 x;
            for (int i = 0; i < 4; ++i) x[i] = uniform(rng, -0.8, 0.8);
            if (x.norm() < 0.8) return x;
        }
    };
    s.rho = [](const Vec4& x) { return std::atanh(x.norm()); };
    s.point_at_rho = [](double r) { return Vec4(std::tanh(r), 0.0, 0.0, 0.0); };
    s.volume_density = [](double r) {
        const double sh = std::sinh(r);
        return kPi * kPi * sh * sh * std::sinh(2.0 * r);
    };
    s.log_volume_density = [](double r) {
        return 2.0 * std::log(kPi) + 2.0 * log_sinh(r) + log_sinh(2.0 * r);
    };
    s.laplacian_rho = [](double r) { return chm_laplacian(2, r); };
    return s;
}

}  // namespace

double log_sinh(double x) {
    if (x <= 0.0) throw std::invalid_argument("log_sinh: x must be positive");
    if (x < 20.0) return std::log(std::sinh(x));
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

const ModelSpace& model_space(Space id) {
    static const std::map<Space, ModelSpace> catalog = [] {
        std::map<Space, ModelSpace> m;
        m.emplace(Space::R4, make_r4());
        m.emplace(Space::S4, make_s4());
        m.emplace(Space::H4, make_h4());
        m.emplace(Space::S3xR, make_s3xr());
        m.emplace(Space::CP2, make_cp2());
        m.emplace(Space::CH2, make_ch2());
        return m;
    }();
    return catalog.at(id);
}

const ModelSpace& model_space(const std::string& name) {
    for (Space id : all_spaces())
        if (model_space(id).name == name) return model_space(id);
    throw std::invalid_argument("unknown space: " + name);
}

const std::vector<Space>& all_spaces() {
    static const std::vector<Space> ids = {Space::R4,   Space::S4,  Space::H4,
                                           Space::S3xR, Space::CP2, Space::CH2};
    return ids;
}

double ball_volume(const ModelSpace& space, double r, double tol) {
    if (r < 0.0) throw std::invalid_argument("ball_volume: r must be nonnegative");
    const double hi = std::min(r, space.diameter);
    if (hi <= 0.0) return 0.0;
    return integrate([&space](double t) { return space.volume_density(t); }, 0.0, hi, tol);
}

double annulus_log_bound(const ModelSpace& space, double k, double r, double tol) {
    if (r <= 1.0) throw std::invalid_argument("annulus_log_bound: r must exceed 1");
    const double lo = r;
    const double hi = std::min(r * r, space.diameter);
    if (hi <= lo) return 0.0;
    // Scale by the endpoint log-density so hyperbolic volume growth cannot
    // overflow; the shift cancels against the re-exponentiation at the end.
    const double shift = std::max(space.log_volume_density(lo), space.log_volume_density(hi));
    const double value = integrate_log(
        [&](double t) {
            return std::exp(space.log_volume_density(t) - shift - k * std::log(t));
        },
        lo, hi, tol);
    return std::exp(shift) * value / std::log(r);
}

double chm_laplacian(int m, double rho) {
    if (m < 1) throw std::invalid_argument("chm_laplacian: m must be >= 1");
    if (rho <= 0.0) throw std::invalid_argument("chm_laplacian: rho must be positive");
    return 2.0 * (m - 1) / std::tanh(rho) + 2.0 / std::tanh(2.0 * rho);
}

double chm_laplacian_derivative(int m, double rho) {
    if (m < 1) throw std::invalid_argument("chm_laplacian_derivative: m must be >= 1");
    const double sh = std::sinh(rho);
    const double sh2 = std::sinh(2.0 * rho);
    return -2.0 * (m - 1) / (sh * sh) - 4.0 / (sh2 * sh2);
}

double chm_laplacian_sq_identity_residual(int m, double rho) {
    const double lap = chm_laplacian(m, rho);
    const double sh = std::sinh(rho);
    const double sh2 = std::sinh(2.0 * rho);
    const double closed = 4.0 * m * m + 4.0 * m * (m - 1) / (sh * sh) + 4.0 / (sh2 * sh2);
    return lap * lap - closed;
}

double chm_laplacian_derivative_identity_residual(int m, double rho) {
    // differentiate 2(m-1) cosh/sinh + 2 cosh(2r)/sinh(2r) in forward mode
    const Jet4 r = Jet4::variable(rho, 0);
    const Jet4 lap = 2.0 * (m - 1) * cosh(r) / sinh(r) + 2.0 * cosh(2.0 * r) / sinh(2.0 * r);
    return lap.g[0] - chm_laplacian_derivative(m, rho);
}

}  // namespace gapcheck
