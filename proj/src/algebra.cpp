#include "gapcheck/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace gapcheck {

double inner(const SkewMatrix& m, const SkewMatrix& n, const AlgebraMetric& metric) {
    if (m.rows() != n.rows() || m.cols() != n.cols())
        throw std::invalid_argument("inner: dimension mismatch");
    return metric.alpha * (m.array() * n.array()).sum();
}

double norm(const SkewMatrix& m, const AlgebraMetric& metric) {
    return std::sqrt(inner(m, m, metric));
}

SkewMatrix bracket(const SkewMatrix& m, const SkewMatrix& n) {
    if (m.rows() != n.rows())
        throw std::invalid_argument("bracket: dimension mismatch");
    return m * n - n * m;
}

double commutator_constant(int n, const AlgebraMetric& metric) {
    if (n < 3) throw std::invalid_argument("commutator_constant: need n >= 3");
    if (metric.alpha <= 0.0) throw std::invalid_argument("commutator_constant: alpha > 0 required");
    return n == 3 ? 1.0 / std::sqrt(2.0 * metric.alpha) : 1.0 / std::sqrt(metric.alpha);
}

double gap_constant(int n, const AlgebraMetric& metric) {
    if (n < 3) throw std::invalid_argument("gap_constant: need n >= 3");
    if (metric.alpha <= 0.0) throw std::invalid_argument("gap_constant: alpha > 0 required");
    const double base = (n == 3 ? 2.0 : 2.0 * std::sqrt(2.0)) / std::sqrt(3.0 * metric.alpha);
    return metric.convention == Convention::standard ? base : base / std::sqrt(2.0);
}

std::array<SkewMatrix, 3> so3_generators() {
    std::array<SkewMatrix, 3> l;
    for (auto& m : l) m = SkewMatrix::Zero(3, 3);
    // (L_k)_ij = -eps_kij
    l[0](1, 2) = -1.0; l[0](2, 1) = 1.0;
    l[1](2, 0) = -1.0; l[1](0, 2) = 1.0;
    l[2](0, 1) = -1.0; l[2](1, 0) = 1.0;
    return l;
}

namespace {

std::array<SkewMatrix, 3> thooft(double dual_sign) {
    // E^a_ij = eps_aij on indices 1..3, E^a_{a4} = dual_sign.
    std::array<SkewMatrix, 3> e;
    for (auto& m : e) m = SkewMatrix::Zero(4, 4);
    const int eps[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    for (int a = 0; a < 3; ++a) {
        e[a](eps[a][0], eps[a][1]) = 1.0;
        e[a](eps[a][1], eps[a][0]) = -1.0;
        e[a](a, 3) = dual_sign;
        e[a](3, a) = -dual_sign;
    }
    return e;
}

}  // namespace

std::array<SkewMatrix, 3> selfdual_generators() { return thooft(1.0); }
std::array<SkewMatrix, 3> antiselfdual_generators() { return thooft(-1.0); }

std::array<SkewMatrix, 3> su2_generators() {
    auto e = selfdual_generators();
    for (auto& m : e) m *= -0.5;
    return e;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

double gaussian(std::mt19937_64& rng) {
    // Box-Muller, one branch; deterministic for a given seed.
    double u1 = uniform01(rng);
    while (u1 <= 1e-300) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

SkewMatrix random_skew(int n, std::mt19937_64& rng, double scale) {
    SkewMatrix m = SkewMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = scale * gaussian(rng);
            m(i, j) = v;
            m(j, i) = -v;
        }
    return m;
}

}  // namespace gapcheck
