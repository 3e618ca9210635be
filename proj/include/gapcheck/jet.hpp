#pragma once

#include <array>
#include <cmath>

namespace gapcheck {

// Second-order forward-mode scalar over 4 chart variables: value, gradient,
// Hessian. Propagating a metric component through Jet4 yields its exact first
// and second coordinate derivatives, which is what the curvature kernel needs.
struct Jet4 {
    double v = 0.0;
    std::array<double, 4> g{};
    std::array<std::array<double, 4>, 4> h{};

    Jet4() = default;
    Jet4(double value) : v(value) {}

    static Jet4 variable(double value, int index) {
        Jet4 j(value);
        j.g[index] = 1.0;
        return j;
    }
};

inline Jet4 operator+(const Jet4& a, const Jet4& b) {
    Jet4 r(a.v + b.v);
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
    }
    return r;
}

inline Jet4 operator-(const Jet4& a, const Jet4& b) {
    Jet4 r(a.v - b.v);
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] - b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] - b.h[i][j];
    }
    return r;
}

inline Jet4 operator-(const Jet4& a) {
    Jet4 r(-a.v);
    for (int i = 0; i < 4; ++i) {
        r.g[i] = -a.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = -a.h[i][j];
    }
    return r;
}

inline Jet4 operator*(const Jet4& a, const Jet4& b) {
    Jet4 r(a.v * b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.v * b.h[i][j] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
    return r;
}

// Composition with a univariate f: carries f'(v) and f''(v) through the chain
// and product rules.
inline Jet4 compose(const Jet4& a, double f, double df, double ddf) {
    Jet4 r(f);
    for (int i = 0; i < 4; ++i) r.g[i] = df * a.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.h[i][j] = df * a.h[i][j] + ddf * a.g[i] * a.g[j];
    return r;
}

inline Jet4 recip(const Jet4& a) {
    const double iv = 1.0 / a.v;
    return compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet4 operator/(const Jet4& a, const Jet4& b) { return a * recip(b); }

inline Jet4 operator+(const Jet4& a, double s) { return a + Jet4(s); }
inline Jet4 operator+(double s, const Jet4& a) { return a + Jet4(s); }
inline Jet4 operator-(const Jet4& a, double s) { return a - Jet4(s); }
inline Jet4 operator-(double s, const Jet4& a) { return Jet4(s) - a; }
inline Jet4 operator*(const Jet4& a, double s) { return a * Jet4(s); }
inline Jet4 operator*(double s, const Jet4& a) { return a * Jet4(s); }
inline Jet4 operator/(const Jet4& a, double s) { return a * Jet4(1.0 / s); }
inline Jet4 operator/(double s, const Jet4& a) { return Jet4(s) * recip(a); }

inline Jet4 sin(const Jet4& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet4 cos(const Jet4& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet4 sinh(const Jet4& a) {
    return compose(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v));
}
inline Jet4 cosh(const Jet4& a) {
    return compose(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v));
}
inline Jet4 sqrt(const Jet4& a) {
    const double s = std::sqrt(a.v);
    return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

}  // namespace gapcheck
