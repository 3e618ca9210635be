#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gapcheck/algebra.hpp"
#include "gapcheck/gauge_field.hpp"
#include "gapcheck/model_space.hpp"
#include "gapcheck/weights.hpp"

namespace gapcheck {

// The catalogued curvature-gap bounds. Each one asserts that a Yang-Mills
// field with |F^side| below the bound's threshold function must vanish (or
// realize the equality configuration), under the bound's hypotheses on the
// geometry and, where applicable, a weighted Poincare inequality.
enum class Theorem { T1, T2, T4, T5, T6, T9, T11, T14, C7, C10, C12 };

Theorem theorem_from_string(const std::string& name);
std::string theorem_name(Theorem theorem);

enum class Verdict { vanishing_branch, equality_branch, hypothesis_violated };

std::string verdict_name(Verdict verdict);

// Which half of the curvature the bound constrains. `automatic` resolves to
// the half the statement concerns: minus where the anti-self-dual part is
// bounded (T14, and C7 on the complex projective plane), plus elsewhere.
enum class DualSide { automatic, plus, minus };

struct GapBoundSpec {
    Theorem theorem = Theorem::T5;
    Space space = Space::S4;
    // Weight for the Poincare term. Theorems with a canonical weight (T9,
    // C10: carron; T11, C12: bgg; T14: chm) fill it in themselves and reject
    // a differently named override; T1/T2/T4 take any weight, defaulting by
    // geometry (carron / bgg(1) / chm(2) on the flat, hyperbolic and
    // complex-hyperbolic spaces, none on the compact ones).
    std::optional<RadialWeight> weight;
    double p = 0.5;   // Kato exponent, > 1/4 where the bound uses it
    double b = 1.0;   // weight coefficient for T4, curvature scale for T11
    DualSide side = DualSide::automatic;
    AlgebraMetric metric;
    int n = 4;  // structure group dimension entering the gap constant
};

// threshold(rho) = (coeff_q * q(rho) + scalar/3 - 2 lambda_max(W^side)) / a_G
// with the curvature constants read off the model space. Negative values are
// legal (the bound's curvature hypothesis fails there).
struct GapThreshold {
    Theorem theorem;
    Space space;
    double coeff_q = 0.0;                // multiplier of the weight
    std::optional<RadialWeight> weight;  // none means q = 0
    double constant = 0.0;               // scalar/3 - 2 lambda_max(W^side)
    double a_g = 0.0;
    int side = +1;  // +1: self-dual half, -1: anti-self-dual half

    double value(double rho) const;
    // Large-distance limit of a_g * value: coeff_q * q(inf) + constant. For
    // C12 this is (1/p)(2 - 1/(2p)) * 9/4 - 4, vanishing at p = 3/8, 3/4.
    double asymptote() const;
};

// Validates the spec (exponent ranges, space admissibility, weight pairing)
// and assembles the threshold; throws std::invalid_argument on violations.
GapThreshold gap_threshold(const GapBoundSpec& spec);

struct GapSample {
    double rho = 0.0;
    double f_plus_norm = 0.0;  // |F^side| at the sample point
    double threshold = 0.0;
    double margin = 0.0;  // threshold - f_plus_norm
};

struct GapReport {
    std::vector<GapSample> samples;
    Verdict verdict = Verdict::vanishing_branch;
    // Largest-margin sample when some margin is strictly positive: the point
    // certifying that the bound holds with room to spare.
    std::optional<GapSample> strictness_witness;
    // Smallest-margin sample when the verdict is hypothesis_violated.
    std::optional<GapSample> violation_witness;
    double tolerance = 0.0;
};

// Compares |F^side| against the threshold at each point. equality_branch
// when every |margin| < tol * (1 + threshold); otherwise hypothesis_violated
// when some margin < -tol; otherwise vanishing_branch. Samples are reported
// stably sorted by rho, so the whole report is invariant under point
// permutations; verdicts are stable under doubling tol.
GapReport evaluate_gap(const std::function<double(const Vec4&)>& field_norm,
                       const GapBoundSpec& spec, const std::vector<Vec4>& points,
                       double tolerance = 1e-6);

// Deterministic evaluation points: a fixed ladder of radial probes (always
// including distance 1 when the geometry allows it) padded with seeded
// random chart samples.
std::vector<Vec4> gap_sample_points(const ModelSpace& space, std::uint64_t seed, int count);

// |F^side| as a function on the space's chart. Flat chart: the plain norm;
// conformally flat charts (round sphere, hyperbolic ball): two-form norms
// divide by the conformal factor squared. The zero connection works
// everywhere; other connections are rejected off these charts.
std::function<double(const Vec4&)> field_norm_on_space(const GaugeField& field,
                                                       const ModelSpace& space, int side = +1);

// threshold(rho) - |F^side| at the chart point point_at_rho(rho).
double margin_at(const GapBoundSpec& spec, const GaugeField& field, double rho);

// Both sides of the pointwise differential inequality
//   |F+|^p lap |F+|^p >= (1 - 1/(2p)) |grad |F+|^p|^2
//                        + (p/3) scalar |F+|^{2p} - 2p lambda_max(W+) |F+|^{2p}
//                        - p a_G |F+|^{2p+1}
// for a Yang-Mills field, with the metric Laplacian and gradient taken in
// the space's chart (exact metric derivatives, central differences on
// |F+|^p at steps h and h/2; fd_error estimates the discretization error
// from the difference). Skipped when |F+| vanishes at x or the stencil
// leaves the chart.
struct Lemma3Report {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;     // lhs - rhs
    double fd_error = 0.0;  // checkers widen their tolerance by this
    bool skipped = false;
};

Lemma3Report lemma3_check(const GaugeField& field, const ModelSpace& space, double p,
                          const Vec4& x, double h = 1e-3);

}  // namespace gapcheck
