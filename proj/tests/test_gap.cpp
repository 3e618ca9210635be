#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gapcheck/gap.hpp"

using namespace gapcheck;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kAg = gap_constant(4, AlgebraMetric{});  // 4/sqrt(3)

GapBoundSpec make_spec(Theorem t, Space s) {
    GapBoundSpec spec;
    spec.theorem = t;
    spec.space = s;
    return spec;
}

const std::vector<double>& rho_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int k = 0; k <= 120; ++k) g.push_back(std::pow(10.0, -2.0 + 3.5 * k / 120.0));
        return g;
    }();
    return grid;
}

}  // namespace

TEST_CASE("theorem and verdict names round-trip") {
    const std::vector<Theorem> all = {Theorem::T1, Theorem::T2,  Theorem::T4, Theorem::T5,
                                      Theorem::T6, Theorem::T9,  Theorem::T11, Theorem::T14,
                                      Theorem::C7, Theorem::C10, Theorem::C12};
    for (Theorem t : all) CHECK(theorem_from_string(theorem_name(t)) == t);
    CHECK(theorem_from_string("t14") == Theorem::T14);
    CHECK(theorem_from_string("c10") == Theorem::C10);
    CHECK_THROWS_AS(theorem_from_string("T3"), std::invalid_argument);
    CHECK_THROWS_AS(theorem_from_string(""), std::invalid_argument);
    CHECK(verdict_name(Verdict::vanishing_branch) == "vanishing_branch");
    CHECK(verdict_name(Verdict::equality_branch) == "equality_branch");
    CHECK(verdict_name(Verdict::hypothesis_violated) == "hypothesis_violated");
}

TEST_CASE("constant-curvature thresholds match the catalog values") {
    // sphere: scalar 12, W = 0, no weight -> threshold = 4/a_G = sqrt(3)
    const GapThreshold t5 = gap_threshold(make_spec(Theorem::T5, Space::S4));
    CHECK(t5.coeff_q == 0.0);
    CHECK(t5.side == +1);
    for (double rho : {0.1, 0.5, 1.0, 2.0, 3.0})
        CHECK(t5.value(rho) == doctest::Approx(kSqrt3).epsilon(1e-13));
    CHECK(t5.asymptote() == doctest::Approx(4.0).epsilon(1e-13));

    const GapThreshold t6 = gap_threshold(make_spec(Theorem::T6, Space::S4));
    CHECK(t6.value(1.0) == doctest::Approx(kSqrt3).epsilon(1e-13));

    // the three C7 geometries: 4/a_G, 8/a_G (anti-self-dual half), 2/a_G
    CHECK(gap_threshold(make_spec(Theorem::C7, Space::S4)).value(1.0) ==
          doctest::Approx(kSqrt3).epsilon(1e-13));
    const GapThreshold c7cp2 = gap_threshold(make_spec(Theorem::C7, Space::CP2));
    CHECK(c7cp2.side == -1);
    CHECK(c7cp2.value(1.0) == doctest::Approx(2.0 * kSqrt3).epsilon(1e-12));
    CHECK(gap_threshold(make_spec(Theorem::C7, Space::S3xR)).value(1.0) ==
          doctest::Approx(0.5 * kSqrt3).epsilon(1e-12));

    // the plus side on the complex projective plane loses 2 lambda_max(W+) = 8
    GapBoundSpec plus_side = make_spec(Theorem::C7, Space::CP2);
    plus_side.side = DualSide::plus;
    CHECK(gap_threshold(plus_side).value(1.0) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("flat-space thresholds carry the 1/rho^2 weight") {
    const GapThreshold c10 = gap_threshold(make_spec(Theorem::C10, Space::R4));
    const GapThreshold t9 = gap_threshold(make_spec(Theorem::T9, Space::R4));
    for (double rho : rho_grid()) {
        CHECK(c10.value(rho) == doctest::Approx(2.0 / (kAg * rho * rho)).epsilon(1e-12));
        CHECK(t9.value(rho) == doctest::Approx(c10.value(rho)).epsilon(1e-14));
    }
    CHECK(c10.value(1.0) == doctest::Approx(0.5 * kSqrt3).epsilon(1e-13));
}

TEST_CASE("p = 1/2 reduces the general bound to the fixed-coefficient one") {
    for (Space s : {Space::R4, Space::H4, Space::S4}) {
        GapBoundSpec g1 = make_spec(Theorem::T1, s);
        g1.p = 0.5;
        const GapThreshold t1 = gap_threshold(g1);
        const GapThreshold t2 = gap_threshold(make_spec(Theorem::T2, s));
        CHECK(t1.coeff_q == t2.coeff_q);
        for (double rho : {0.05, 0.3, 1.0, 4.0, 20.0})
            CHECK(t1.value(rho) == doctest::Approx(t2.value(rho)).epsilon(1e-14));
    }
}

TEST_CASE("hyperbolic threshold constant part vanishes at the boundary exponents") {
    GapBoundSpec c12 = make_spec(Theorem::C12, Space::H4);
    for (double p : {0.375, 0.75}) {
        c12.p = p;
        CHECK(std::abs(gap_threshold(c12).asymptote()) < 1e-12);
    }
    c12.p = 0.5;  // (1/p)(2 - 1/(2p)) * 9/4 - 4 = 1/2
    CHECK(gap_threshold(c12).asymptote() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("hyperbolic thresholds stay above the explicit positive envelope") {
    GapBoundSpec t11 = make_spec(Theorem::T11, Space::H4);
    t11.b = 1.0;
    for (double p : {0.375, 0.5, 0.6, 0.75}) {
        t11.p = p;
        const GapThreshold thr = gap_threshold(t11);
        const double c = (1.0 / p) * (2.0 - 1.0 / (2.0 * p));
        for (double rho : rho_grid()) {
            if (rho > 30.0) continue;
            const double sh = std::sinh(rho);
            const double envelope = (c / kAg) * (0.25 / (rho * rho) + 0.75 / (sh * sh));
            CHECK(thr.value(rho) >= envelope - 1e-12 * (1.0 + envelope));
            CHECK(thr.value(rho) > 0.0);
        }
    }
    // a weaker weight scale is admissible but may dip below zero
    t11.p = 0.5;
    t11.b = 0.5;
    const double sh = std::sinh(0.5);
    const double q1 = 9.0 * 0.25 / 4.0 + 0.25 + (0.75 * 0.25) / (sh * sh);
    CHECK(gap_threshold(t11).value(1.0) ==
          doctest::Approx((2.0 * q1 - 4.0) / kAg).epsilon(1e-12));
}

TEST_CASE("complex-hyperbolic threshold matches its closed form and stays positive") {
    const GapThreshold t14 = gap_threshold(make_spec(Theorem::T14, Space::CH2));
    CHECK(t14.side == -1);
    CHECK(t14.coeff_q == 2.0);
    for (double rho : rho_grid()) {
        const double sh = std::sinh(rho), sh2 = std::sinh(2.0 * rho);
        const double expected =
            (2.0 / kAg) * (0.25 / (rho * rho) + 1.0 / (sh * sh) - 1.0 / (sh2 * sh2));
        CHECK(t14.value(rho) == doctest::Approx(expected).epsilon(1e-10));
    }
    for (int k = 0; k <= 400; ++k) {
        const double rho = std::pow(10.0, -3.0 + 5.0 * k / 400.0);
        if (rho >= 100.0) continue;
        CHECK(t14.value(rho) > 0.0);
    }
}

TEST_CASE("spec validation rejects mismatched hypotheses") {
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T5, Space::CP2)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T5, Space::R4)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T5, Space::H4)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T6, Space::H4)), std::invalid_argument);
    CHECK_NOTHROW(gap_threshold(make_spec(Theorem::T5, Space::S3xR)));
    CHECK_NOTHROW(gap_threshold(make_spec(Theorem::T6, Space::S3xR)));

    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T9, Space::H4)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T9, Space::S3xR)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T9, Space::CP2)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::C10, Space::S4)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::C7, Space::R4)), std::invalid_argument);
    CHECK_THROWS_AS(gap_threshold(make_spec(Theorem::T14, Space::CP2)), std::invalid_argument);

    GapBoundSpec t11 = make_spec(Theorem::T11, Space::H4);
    t11.b = 1.2;  // sectional curvature of the unit ball only reaches -1
    CHECK_THROWS_AS(gap_threshold(t11), std::invalid_argument);
    t11.b = -0.5;
    CHECK_THROWS_AS(gap_threshold(t11), std::invalid_argument);
    t11.space = Space::R4;
    t11.b = 0.5;
    CHECK_THROWS_AS(gap_threshold(t11), std::invalid_argument);

    GapBoundSpec c12 = make_spec(Theorem::C12, Space::H4);
    c12.p = 0.3;
    CHECK_THROWS_AS(gap_threshold(c12), std::invalid_argument);
    c12.p = 0.8;
    CHECK_THROWS_AS(gap_threshold(c12), std::invalid_argument);
    c12.p = 0.5;
    c12.space = Space::R4;
    CHECK_THROWS_AS(gap_threshold(c12), std::invalid_argument);

    GapBoundSpec t4 = make_spec(Theorem::T4, Space::R4);
    t4.p = 0.5;
    t4.b = 2.5;  // cap is (1/p)(2 - 1/(2p)) = 2
    CHECK_THROWS_AS(gap_threshold(t4), std::invalid_argument);
    t4.b = 0.0;
    CHECK_THROWS_AS(gap_threshold(t4), std::invalid_argument);
    t4.b = 1.0;
    CHECK_NOTHROW(gap_threshold(t4));

    GapBoundSpec t1 = make_spec(Theorem::T1, Space::R4);
    t1.p = 0.25;
    CHECK_THROWS_AS(gap_threshold(t1), std::invalid_argument);
    t1.p = -1.0;
    CHECK_THROWS_AS(gap_threshold(t1), std::invalid_argument);

    GapBoundSpec weighted_t5 = make_spec(Theorem::T5, Space::S4);
    weighted_t5.weight = carron_weight();
    CHECK_THROWS_AS(gap_threshold(weighted_t5), std::invalid_argument);

    GapBoundSpec c10 = make_spec(Theorem::C10, Space::R4);
    c10.weight = bgg_weight(1.0);
    CHECK_THROWS_AS(gap_threshold(c10), std::invalid_argument);
    c10.weight = carron_weight();  // matching name is accepted
    CHECK_NOTHROW(gap_threshold(c10));
}

TEST_CASE("deterministic sample points include the radial ladder") {
    const ModelSpace& r4 = model_space(Space::R4);
    const auto a = gap_sample_points(r4, 2024, 30);
    const auto b = gap_sample_points(r4, 2024, 30);
    REQUIRE(a.size() == 30);
    for (size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
    CHECK(r4.rho(a[2]) == doctest::Approx(1.0).epsilon(1e-12));

    const auto c = gap_sample_points(model_space(Space::CP2), 7, 12);
    for (const Vec4& x : c) CHECK(model_space(Space::CP2).in_chart(x));
    CHECK_THROWS_AS(gap_sample_points(r4, 1, 0), std::invalid_argument);
}

TEST_CASE("field norms pull back through the conformal charts") {
    GaugeField bpst;
    const ModelSpace& s4 = model_space(Space::S4);
    const auto norm = field_norm_on_space(bpst, s4);
    std::mt19937_64 rng(51);
    for (int i = 0; i < 25; ++i) {
        const Vec4 x = s4.sample(rng);
        CHECK(norm(x) == doctest::Approx(bpst.norm_sphere(x)).epsilon(1e-12));
        CHECK(norm(x) == doctest::Approx(kSqrt3).epsilon(1e-10));
    }
    // anti-self-dual field has no self-dual half
    GaugeField anti;
    anti.kind = ConnectionKind::anti_bpst;
    CHECK(field_norm_on_space(anti, model_space(Space::R4))(Vec4(1, 0, 0, 0)) == 0.0);
    CHECK(field_norm_on_space(anti, model_space(Space::R4), -1)(Vec4(1, 0, 0, 0)) ==
          doctest::Approx(kSqrt3).epsilon(1e-12));
    // zero connection works on every chart; instantons need a conformal one
    GaugeField zero;
    zero.kind = ConnectionKind::zero;
    CHECK(field_norm_on_space(zero, model_space(Space::CH2))(Vec4(0.1, 0, 0, 0)) == 0.0);
    CHECK_THROWS_AS(field_norm_on_space(bpst, model_space(Space::CP2)), std::invalid_argument);
    CHECK_THROWS_AS(field_norm_on_space(bpst, s4, 0), std::invalid_argument);
}

TEST_CASE("gap verdicts on the three canonical scenarios") {
    GaugeField bpst;
    GaugeField zero;
    zero.kind = ConnectionKind::zero;

    const ModelSpace& s4 = model_space(Space::S4);
    const GapBoundSpec t5 = make_spec(Theorem::T5, Space::S4);
    const auto sphere_points = gap_sample_points(s4, 712, 40);
    const auto sphere_norm = field_norm_on_space(bpst, s4);

    const GapReport equal = evaluate_gap(sphere_norm, t5, sphere_points);
    CHECK(equal.verdict == Verdict::equality_branch);
    CHECK(equal.samples.size() == 40);
    for (const GapSample& s : equal.samples) CHECK(std::abs(s.margin) < 1e-9);
    CHECK(evaluate_gap(sphere_norm, t5, sphere_points, 2e-6).verdict ==
          Verdict::equality_branch);

    const GapReport vanish = evaluate_gap(field_norm_on_space(zero, s4), t5, sphere_points);
    CHECK(vanish.verdict == Verdict::vanishing_branch);
    REQUIRE(vanish.strictness_witness.has_value());
    CHECK(vanish.strictness_witness->margin == doctest::Approx(kSqrt3).epsilon(1e-10));
    CHECK(!vanish.violation_witness.has_value());
    CHECK(evaluate_gap(field_norm_on_space(zero, s4), t5, sphere_points, 2e-6).verdict ==
          Verdict::vanishing_branch);

    const ModelSpace& r4 = model_space(Space::R4);
    const GapBoundSpec c10 = make_spec(Theorem::C10, Space::R4);
    const auto flat_points = gap_sample_points(r4, 713, 40);
    const auto flat_norm = field_norm_on_space(bpst, r4);

    const GapReport violated = evaluate_gap(flat_norm, c10, flat_points);
    CHECK(violated.verdict == Verdict::hypothesis_violated);
    REQUIRE(violated.violation_witness.has_value());
    CHECK(violated.violation_witness->margin < -1e-3);
    CHECK(evaluate_gap(flat_norm, c10, flat_points, 2e-6).verdict ==
          Verdict::hypothesis_violated);

    // order of the evaluation points is immaterial
    auto reversed = flat_points;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(evaluate_gap(flat_norm, c10, reversed).verdict == Verdict::hypothesis_violated);

    CHECK_THROWS_AS(evaluate_gap(flat_norm, c10, {}), std::invalid_argument);

    // with no self-dual part the flat bound holds strictly
    GaugeField anti;
    anti.kind = ConnectionKind::anti_bpst;
    CHECK(evaluate_gap(field_norm_on_space(anti, r4), c10, flat_points).verdict ==
          Verdict::vanishing_branch);

    // the anti-self-dual bound on the complex hyperbolic plane, zero field
    const GapBoundSpec t14 = make_spec(Theorem::T14, Space::CH2);
    const auto ch2_points = gap_sample_points(model_space(Space::CH2), 99, 25);
    const GapReport ch2 =
        evaluate_gap(field_norm_on_space(zero, model_space(Space::CH2)), t14, ch2_points);
    CHECK(ch2.verdict == Verdict::vanishing_branch);
}

TEST_CASE("violation margin at unit distance reproduces the closed form") {
    GaugeField bpst;
    const GapBoundSpec c10 = make_spec(Theorem::C10, Space::R4);
    // threshold 2/a_G, field norm sqrt(48)/4 = sqrt(3)
    CHECK(margin_at(c10, bpst, 1.0) ==
          doctest::Approx(-(kSqrt3 - 2.0 / kAg)).epsilon(1e-9));
    CHECK(margin_at(c10, bpst, 1.0) == doctest::Approx(-0.5 * kSqrt3).epsilon(1e-9));

    const GapBoundSpec t5 = make_spec(Theorem::T5, Space::S4);
    CHECK(std::abs(margin_at(t5, bpst, 1.0)) < 1e-10);
}

TEST_CASE("pointwise differential inequality: equality cases") {
    GaugeField bpst;
    const ModelSpace& s4 = model_space(Space::S4);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = gaussian(rng);
        const Lemma3Report rep = lemma3_check(bpst, s4, 0.5, x);
        REQUIRE(!rep.skipped);
        CHECK(std::abs(rep.lhs) < 1e-3);
        CHECK(std::abs(rep.rhs) < 1e-3);
    }

    const ModelSpace& r4 = model_space(Space::R4);
    for (double p : {0.5, 0.75, 1.0}) {
        for (int i = 0; i < 50; ++i) {
            Vec4 x;
            for (int k = 0; k < 4; ++k) x[k] = 1.5 * gaussian(rng);
            const Lemma3Report rep = lemma3_check(bpst, r4, p, x);
            REQUIRE(!rep.skipped);
            const double band = 1.0 + std::abs(rep.rhs);
            // the instanton saturates the chain at every admissible exponent
            CHECK(rep.slack >= -(1e-3 * band + rep.fd_error));
            CHECK(std::abs(rep.slack) <= 1e-4 * band + rep.fd_error);
        }
    }
}

TEST_CASE("pointwise differential inequality: hyperbolic chart and edge cases") {
    GaugeField bpst;
    const ModelSpace& h4 = model_space(Space::H4);
    for (double rho : {0.3, 0.8, 1.5}) {
        const Lemma3Report rep = lemma3_check(bpst, h4, 0.5, h4.point_at_rho(rho));
        REQUIRE(!rep.skipped);
        CHECK(rep.slack >= -(1e-3 * (1.0 + std::abs(rep.rhs)) + rep.fd_error));
    }
    // stencil leaves the unit ball near the conformal boundary
    CHECK(lemma3_check(bpst, h4, 0.5, h4.point_at_rho(12.0)).skipped);

    GaugeField zero;
    zero.kind = ConnectionKind::zero;
    CHECK(lemma3_check(zero, model_space(Space::R4), 0.5, Vec4(1, 0, 0, 0)).skipped);

    CHECK_THROWS_AS(lemma3_check(bpst, model_space(Space::R4), 0.25, Vec4(1, 0, 0, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(lemma3_check(bpst, h4, 0.5, Vec4(2, 0, 0, 0)), std::invalid_argument);
}
