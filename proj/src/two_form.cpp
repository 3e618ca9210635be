#include "gapcheck/two_form.hpp"

#include <cmath>

namespace gapcheck {

double trilinear(const AlgebraTwoForm& f, const AlgebraMetric& metric) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                s += inner(f.component(i, j), bracket(f.component(i, k), f.component(j, k)),
                           metric);
            }
        }
    return metric.convention == Convention::tensor ? 2.0 * s : s;
}

ChainReport trilinear_chain(const AlgebraTwoForm& f, const AlgebraMetric& metric) {
    const int n = static_cast<int>(f.c[0].rows());
    const double cc = commutator_constant(n, metric);
    const double conv = metric.convention == Convention::tensor ? 2.0 : 1.0;

    ChainReport r{};
    r.a = std::abs(trilinear(f, metric));

    double triple_sum = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                triple_sum += norm(f.component(i, j), metric) * norm(f.component(i, k), metric) *
                              norm(f.component(j, k), metric);
    r.b = conv * 6.0 * cc * triple_sum;

    const double n12 = norm(f.c[0], metric);
    const double n13 = norm(f.c[1], metric);
    const double n14 = norm(f.c[2], metric);
    r.c = conv * 24.0 * cc * n12 * n13 * n14;

    const double s2 = n12 * n12 + n13 * n13 + n14 * n14;
    r.d = conv * (24.0 * cc / (3.0 * std::sqrt(3.0))) * std::pow(s2, 1.5);

    r.e = gap_constant(n, metric) * std::pow(norm_squared(f, metric), 1.5);
    return r;
}

AlgebraTwoForm selfdual_from_components(const SkewMatrix& f12, const SkewMatrix& f13,
                                        const SkewMatrix& f14) {
    AlgebraTwoForm f;
    f.c[0] = f12;
    f.c[1] = f13;
    f.c[2] = f14;
    f.c[3] = f14;   // F_23 = F_14
    f.c[4] = -f13;  // F_24 = -F_13
    f.c[5] = f12;   // F_34 = F_12
    return f;
}

AlgebraTwoForm equality_configuration(double lambda) {
    const auto e = selfdual_generators();
    // E^3_12 = 1, E^2_13 = -1, E^1_14 = 1
    return selfdual_from_components(lambda * e[2], -lambda * e[1], lambda * e[0]);
}

AlgebraTwoForm random_selfdual(int n, std::mt19937_64& rng) {
    return selfdual_from_components(random_skew(n, rng), random_skew(n, rng),
                                    random_skew(n, rng));
}

double sharpness_search(const AlgebraMetric& metric, int starts, int iterations,
                        std::mt19937_64& rng) {
    const double a_g = gap_constant(4, metric);
    auto ratio = [&](const std::array<SkewMatrix, 3>& x) {
        const AlgebraTwoForm f = selfdual_from_components(x[0], x[1], x[2]);
        const double n2 = norm_squared(f, metric);
        if (n2 < 1e-12) return 0.0;
        return std::abs(trilinear(f, metric)) / (a_g * std::pow(n2, 1.5));
    };

    double best = 0.0;
    for (int s = 0; s < starts; ++s) {
        std::array<SkewMatrix, 3> x = {random_skew(4, rng), random_skew(4, rng),
                                       random_skew(4, rng)};
        double r = ratio(x);
        double step = 0.5;
        for (int it = 0; it < iterations && step > 1e-8; ++it) {
            std::array<SkewMatrix, 3> y = {x[0] + random_skew(4, rng, step),
                                           x[1] + random_skew(4, rng, step),
                                           x[2] + random_skew(4, rng, step)};
            const double ry = ratio(y);
            if (ry > r) {
                x = y;
                r = ry;
            } else {
                step *= 0.99;
            }
        }
        best = std::max(best, r);
    }
    return best;
}

}  // namespace gapcheck
