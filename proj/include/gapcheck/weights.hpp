#pragma once

#include <functional>
#include <string>

#include "gapcheck/model_space.hpp"

namespace gapcheck {

// A radial weight q(rho) for the inequality int q phi^2 <= int |grad phi|^2.
struct RadialWeight {
    std::string name;
    std::function<double(double)> q;
};

// A radial Laplacian profile rho -> Delta rho and its exact rho-derivative.
struct RadialProfile {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

RadialProfile flat_laplacian();                // 3/rho
RadialProfile hyperbolic_laplacian();          // 3 coth rho
RadialProfile chm_laplacian_profile(int m);    // 2(m-1) coth rho + 2 coth 2 rho

// q = 1/rho^2 (nonpositive sectional curvature).
RadialWeight carron_weight();

// q = (3/4)(2 psi''/psi + ((psi')^2 - 1)/psi^2) + 1/(4 rho^2) + 3/(4 psi^2)
// for a convex increasing psi with psi(0) = 0, psi'(0) = 1, psi''(0) = 0.
RadialWeight comparison_weight(std::function<double(double)> psi,
                               std::function<double(double)> dpsi,
                               std::function<double(double)> ddpsi, std::string name);

// The psi = sinh(b rho)/b instance in closed form:
// q = 9 b^2/4 + 1/(4 rho^2) + 3 b^2 / (4 sinh^2(b rho)).
RadialWeight bgg_weight(double b);

// q = 1/(4 rho^2) + (lap)^2/4 + (1/2) d(lap)/d(rho) from a pole's radial
// Laplacian profile (Bochner route, |grad rho| = 1).
RadialWeight ak_weight(const RadialProfile& laplacian);

// q = m^2 + 1/(4 rho^2) + (m-1)^2/sinh^2(rho) - 1/sinh^2(2 rho), the weight
// ak_weight produces on CH^m.
RadialWeight chm_weight(int m);

// Compactly supported radial cutoffs: 1 on [0, r], a decay band, 0 after.
struct Cutoff {
    std::string name;
    double r;
    double support_hi;
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
};

Cutoff linear_cutoff(double r);  // band [r, 2r], slope -1/r
Cutoff log_cutoff(double r);     // band [r, r^2], phi = 2 - log rho/log r; needs r > 1
Cutoff unit_cutoff(double r);    // band [r, r+1], slope -1

// Quadrature check of int |phi'|^2 J >= int q phi^2 J for a radial cutoff.
// Both integrals carry a common log-scale shift so exponential volume growth
// cannot overflow: true integral = reported value * exp(log_shift).
struct PoincareResult {
    double numerator;
    double denominator;
    double ratio;  // numerator / denominator, shift-free
    double log_shift;
};
PoincareResult verify_poincare(const ModelSpace& space, const RadialWeight& weight,
                               const Cutoff& cutoff);

// Near-sharp trial data: same scaled integrals for a concrete trial function.
struct TrialResult {
    double numerator;
    double denominator;
    double ratio;
};

// u = rho^(-1+eps) times a linear cutoff at r, against q = 1/rho^2 on flat
// space; the [0, inner] head is integrated in closed form (exact for this
// integrand), so the reported ratio depends on eps alone:
// ((1-eps)^2/(2 eps) + B_num)/(1/(2 eps) + B_den) -> 1 as eps -> 0.
TrialResult hardy_trial(double eps = 0.01, double inner = 1e-4, double r = 100.0);

// u = sinh(rho)^(-1+eps) times a linear cutoff at r against the m = 2 weight
// on the complex-hyperbolic space; the [0, inner] head is integrated in
// closed form from the leading asymptotics (relative error O(inner^2)).
TrialResult complex_hyperbolic_trial(double eps = 1e-3, double inner = 1e-4, double r = 1.5);

}  // namespace gapcheck
