#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gapcheck/algebra.hpp"

namespace gapcheck {

namespace detail {

inline double coef_inner(double a, double b, const AlgebraMetric&) { return a * b; }
inline double coef_inner(const SkewMatrix& a, const SkewMatrix& b, const AlgebraMetric& m) {
    return inner(a, b, m);
}
inline double coef_zero_like(const double&) { return 0.0; }
inline SkewMatrix coef_zero_like(const SkewMatrix& m) {
    return SkewMatrix::Zero(m.rows(), m.cols());
}

}  // namespace detail

// Two-form on oriented R^4 with coefficients in T (double for scalar forms,
// SkewMatrix for algebra-valued curvature). Stores the six independent
// components in pair order (12, 13, 14, 23, 24, 34).
template <typename T>
struct TwoForm {
    std::array<T, 6> c{};

    static constexpr int pair_index(int i, int j) {
        // i < j, zero-based
        constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return table[i][j];
    }

    T component(int i, int j) const {
        if (i == j) return detail::coef_zero_like(c[0]);
        const bool flip = i > j;
        const T& v = c[pair_index(flip ? j : i, flip ? i : j)];
        return flip ? T(-v) : v;
    }

    TwoForm operator+(const TwoForm& o) const {
        TwoForm r;
        for (int k = 0; k < 6; ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    TwoForm operator-(const TwoForm& o) const {
        TwoForm r;
        for (int k = 0; k < 6; ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    TwoForm operator*(double s) const {
        TwoForm r;
        for (int k = 0; k < 6; ++k) r.c[k] = c[k] * s;
        return r;
    }
};

using ScalarTwoForm = TwoForm<double>;
using AlgebraTwoForm = TwoForm<SkewMatrix>;

// (*F)_12 = F_34, (*F)_13 = -F_24, (*F)_14 = F_23 and the involutive images.
template <typename T>
TwoForm<T> hodge_star(const TwoForm<T>& f) {
    TwoForm<T> r;
    r.c[0] = f.c[5];
    r.c[1] = T(-f.c[4]);
    r.c[2] = f.c[3];
    r.c[3] = f.c[2];
    r.c[4] = T(-f.c[1]);
    r.c[5] = f.c[0];
    return r;
}

// F_pm = (F ± *F)/2, the eigenspace projections of the Hodge star.
template <typename T>
TwoForm<T> project_pm(const TwoForm<T>& f, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("project_pm: sign must be +-1");
    const TwoForm<T> s = hodge_star(f);
    return (sign > 0 ? f + s : f - s) * 0.5;
}

template <typename T>
double norm_squared(const TwoForm<T>& f, const AlgebraMetric& metric) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += detail::coef_inner(f.c[k], f.c[k], metric);
    return metric.convention == Convention::tensor ? 2.0 * s : s;
}

template <typename T>
double norm(const TwoForm<T>& f, const AlgebraMetric& metric) {
    return std::sqrt(norm_squared(f, metric));
}

template <typename T>
double inner(const TwoForm<T>& f, const TwoForm<T>& g, const AlgebraMetric& metric) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += detail::coef_inner(f.c[k], g.c[k], metric);
    return metric.convention == Convention::tensor ? 2.0 * s : s;
}

// sum_{i,j,k} <F_ij, [F_ik, F_jk]>; doubled in the tensor convention, where
// the norm is also the ordered-pair sum, so the sharp cubic bound holds with
// the convention's own gap constant.
double trilinear(const AlgebraTwoForm& f, const AlgebraMetric& metric);

// The estimate chain for the cubic term of a self-dual form:
//   a = |trilinear|
//   b = 6c * sum_{i<j<k} |F_ij||F_ik||F_jk|
//   c3 = 24c |F_12||F_13||F_14|
//   d = (24c/(3 sqrt 3)) (|F_12|^2+|F_13|^2+|F_14|^2)^{3/2}
//   e = a_G |F|^3
// with a <= b <= c3 <= d = e.
struct ChainReport {
    double a, b, c, d, e;
};
ChainReport trilinear_chain(const AlgebraTwoForm& f, const AlgebraMetric& metric);

// Self-dual form from its three independent components F_12, F_13, F_14.
AlgebraTwoForm selfdual_from_components(const SkewMatrix& f12, const SkewMatrix& f13,
                                        const SkewMatrix& f14);

// Configuration attaining equality in the whole chain: F_ij = lambda *
// sum_a E^a_ij E_a over the self-dual generator triple. trilinear is
// -a_G |F|^3 for it.
AlgebraTwoForm equality_configuration(double lambda = 1.0);

AlgebraTwoForm random_selfdual(int n, std::mt19937_64& rng);

// max |trilinear| / (a_G |F|^3) over random self-dual so(4) starts, each
// refined by stochastic hill climbing. Approaches 1 from below.
double sharpness_search(const AlgebraMetric& metric, int starts, int iterations,
                        std::mt19937_64& rng);

}  // namespace gapcheck
