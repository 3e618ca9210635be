#include "gapcheck/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace gapcheck {

namespace {

using Tensor3 = std::array<std::array<std::array<double, 4>, 4>, 4>;

// Connection coefficients Gamma^l_jk and their chart derivatives
// dGamma[i][l][j][k] = d_i Gamma^l_jk.
struct Connection {
    Tensor3 gamma{};
    Tensor4 dgamma{};
    Mat4 g;
};

Tensor3 christoffel(const Mat4& gi, const Tensor3& dg) {
    // dg[m][i][j] = d_m g_ij
    Tensor3 gamma{};
    for (int l = 0; l < 4; ++l)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double s = 0.0;
                for (int m = 0; m < 4; ++m)
                    s += gi(l, m) * (dg[j][m][k] + dg[k][m][j] - dg[m][j][k]);
                gamma[l][j][k] = 0.5 * s;
            }
    return gamma;
}

Connection connection_jet(const ModelSpace& space, const Vec4& x) {
    const JetMat4 gj = space.metric_jet(x);
    Connection c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.g(i, j) = gj[i][j].v;
    const Mat4 gi = c.g.inverse();

    Tensor3 dg{};
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) dg[m][i][j] = gj[i][j].g[m];
    c.gamma = christoffel(gi, dg);

    std::array<Mat4, 4> dgi;  // d_i g^{-1} = -g^{-1} (d_i g) g^{-1}
    for (int i = 0; i < 4; ++i) {
        Mat4 dgm;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) dgm(a, b) = dg[i][a][b];
        dgi[i] = -gi * dgm * gi;
    }
    for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m) {
                        const double b = dg[j][m][k] + dg[k][m][j] - dg[m][j][k];
                        const double db = gj[m][k].h[i][j] + gj[m][j].h[i][k] - gj[j][k].h[i][m];
                        s += dgi[i](l, m) * b + gi(l, m) * db;
                    }
                    c.dgamma[i][l][j][k] = 0.5 * s;
                }
    return c;
}

Connection connection_fd(const ModelSpace& space, const Vec4& x, double h) {
    auto gamma_at = [&space](const Vec4& p) {
        const double hg = 1e-5;
        const Mat4 g0 = space.metric(p);
        const Mat4 gi = g0.inverse();
        Tensor3 dg{};
        for (int m = 0; m < 4; ++m) {
            Vec4 pp = p, pm = p;
            pp[m] += hg;
            pm[m] -= hg;
            const Mat4 d = (space.metric(pp) - space.metric(pm)) / (2.0 * hg);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) dg[m][i][j] = d(i, j);
        }
        return christoffel(gi, dg);
    };

    Connection c;
    c.g = space.metric(x);
    c.gamma = gamma_at(x);
    for (int i = 0; i < 4; ++i) {
        auto central = [&](double hh) {
            Vec4 xp = x, xm = x;
            xp[i] += hh;
            xm[i] -= hh;
            const Tensor3 gp = gamma_at(xp);
            const Tensor3 gm = gamma_at(xm);
            Tensor3 d{};
            for (int l = 0; l < 4; ++l)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        d[l][j][k] = (gp[l][j][k] - gm[l][j][k]) / (2.0 * hh);
            return d;
        };
        const Tensor3 d1 = central(h);
        const Tensor3 d2 = central(0.5 * h);
        for (int l = 0; l < 4; ++l)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    c.dgamma[i][l][j][k] = (4.0 * d2[l][j][k] - d1[l][j][k]) / 3.0;
    }
    return c;
}

CurvatureData analyze(const ModelSpace& space, const Vec4& x, const Connection& c) {
    CurvatureData out;
    out.point = x;
    out.metric = c.g;

    // R^l_{kij} = d_i Gamma^l_jk - d_j Gamma^l_ik
    //          + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
    Tensor4 rup{};
    for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double s = c.dgamma[i][l][j][k] - c.dgamma[j][l][i][k];
                    for (int m = 0; m < 4; ++m)
                        s += c.gamma[l][i][m] * c.gamma[m][j][k] -
                             c.gamma[l][j][m] * c.gamma[m][i][k];
                    rup[l][k][i][j] = s;
                }

    // Lower and flip sign so the unit sphere comes out positive:
    // R_ijkl = -g_lm R^m_{kij}.
    Tensor4 rchart{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m) s += c.g(l, m) * rup[m][k][i][j];
                    rchart[i][j][k][l] = -s;
                }

    // Orthonormal frame by Gram-Schmidt on the coordinate basis.
    Mat4 e = Mat4::Zero();
    for (int a = 0; a < 4; ++a) {
        Vec4 v = Vec4::Zero();
        v[a] = 1.0;
        for (int b = 0; b < a; ++b) {
            const Vec4 eb = e.col(b);
            v -= (eb.transpose() * c.g * v).value() * eb;
        }
        e.col(a) = v / std::sqrt((v.transpose() * c.g * v).value());
    }
    out.frame = e;

    // Push the curvature into the frame one index at a time.
    Tensor4 t = rchart;
    for (int pass = 0; pass < 4; ++pass) {
        Tensor4 n{};
        for (int a = 0; a < 4; ++a)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double s = 0.0;
                        for (int i = 0; i < 4; ++i) s += t[j][k][l][i] * e(i, a);
                        n[a][j][k][l] = s;  // cycles the contracted slot to front
                    }
        t = n;
    }
    out.riemann = t;

    for (int a = 0; a < 4; ++a)
        for (int cidx = 0; cidx < 4; ++cidx) {
            double s = 0.0;
            for (int b = 0; b < 4; ++b) s += t[a][b][cidx][b];
            out.ricci(a, cidx) = s;
        }
    out.scalar = out.ricci.trace();

    // W = R - (Ric o delta)/2 + (R/6) (delta o delta) in the frame.
    Tensor4 w{};
    const auto& ric = out.ricci;
    auto dl = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = t[i][j][k][l];
                    v -= 0.5 * (ric(i, k) * dl(j, l) - ric(i, l) * dl(j, k) +
                                dl(i, k) * ric(j, l) - dl(i, l) * ric(j, k));
                    v += (out.scalar / 6.0) * (dl(i, k) * dl(j, l) - dl(i, l) * dl(j, k));
                    w[i][j][k][l] = v;
                }

    // Oriented bases of the self-dual / anti-self-dual two-form spaces.
    struct Pair {
        int i, j;
    };
    const Pair pairs[3] = {{0, 1}, {0, 2}, {0, 3}};
    const Pair duals[3] = {{2, 3}, {1, 3}, {1, 2}};
    const double dual_sign[3] = {1.0, -1.0, 1.0};
    auto weyl_half = [&](double side) {
        Eigen::Matrix3d m;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                // Four pair-pair terms of W(omega_a, omega_b); the factor 1/2
                // is the product of the two 1/sqrt(2) normalizations.
                const double sa = side * dual_sign[a];
                const double sb = side * dual_sign[b];
                double v = w[pairs[a].i][pairs[a].j][pairs[b].i][pairs[b].j];
                v += sa * w[duals[a].i][duals[a].j][pairs[b].i][pairs[b].j];
                v += sb * w[pairs[a].i][pairs[a].j][duals[b].i][duals[b].j];
                v += sa * sb * w[duals[a].i][duals[a].j][duals[b].i][duals[b].j];
                m(a, b) = 0.5 * v;
            }
        return m;
    };
    out.weyl_plus = weyl_half(+1.0);
    out.weyl_minus = weyl_half(-1.0);
    out.weyl_plus_spectrum = symmetric_eigenvalues(out.weyl_plus);
    out.weyl_minus_spectrum = symmetric_eigenvalues(out.weyl_minus);

    CurvatureResiduals res;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    res.antisymmetry = std::max(res.antisymmetry,
                                                std::abs(t[i][j][k][l] + t[j][i][k][l]));
                    res.antisymmetry = std::max(res.antisymmetry,
                                                std::abs(t[i][j][k][l] + t[i][j][l][k]));
                    res.pair_symmetry = std::max(res.pair_symmetry,
                                                 std::abs(t[i][j][k][l] - t[k][l][i][j]));
                    res.first_bianchi =
                        std::max(res.first_bianchi,
                                 std::abs(t[i][j][k][l] + t[i][k][l][j] + t[i][l][j][k]));
                }
    for (int a = 0; a < 4; ++a)
        for (int cidx = 0; cidx < 4; ++cidx) {
            double s = 0.0;
            for (int b = 0; b < 4; ++b) s += w[a][b][cidx][b];
            res.weyl_trace = std::max(res.weyl_trace, std::abs(s));
        }
    out.residuals = res;
    return out;
}

}  // namespace

CurvatureData curvature_at(const ModelSpace& space, const Vec4& x) {
    return analyze(space, x, connection_jet(space, x));
}

CurvatureData curvature_at_fd(const ModelSpace& space, const Vec4& x, double h) {
    return analyze(space, x, connection_fd(space, x, h));
}

Eigen::Vector3d symmetric_eigenvalues(const Eigen::Matrix3d& m) {
    const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
    Eigen::Vector3d eig;
    if (p1 < 1e-300) {
        eig << m(0, 0), m(1, 1), m(2, 2);
        std::sort(eig.data(), eig.data() + 3);
        return eig;
    }
    const double q = m.trace() / 3.0;
    const double p2 = (m(0, 0) - q) * (m(0, 0) - q) + (m(1, 1) - q) * (m(1, 1) - q) +
                      (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const Eigen::Matrix3d b = (m - q * Eigen::Matrix3d::Identity()) / p;
    double r = b.determinant() / 2.0;
    r = std::min(1.0, std::max(-1.0, r));
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * 3.14159265358979323846 / 3.0);
    eig << lo, 3.0 * q - hi - lo, hi;
    return eig;
}

double lambda_max(const Eigen::Matrix3d& m) { return symmetric_eigenvalues(m)[2]; }

}  // namespace gapcheck
