// Acceptance gate: one hard requirement per numbered check, full sample
// counts, pinned tolerances. Exits 1 on the first failure. The last check
// shells out to the report binary (path in argv[1], default ./gapcheck).
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gapcheck/algebra.hpp"
#include "gapcheck/curvature.hpp"
#include "gapcheck/gap.hpp"
#include "gapcheck/gauge_field.hpp"
#include "gapcheck/model_space.hpp"
#include "gapcheck/two_form.hpp"
#include "gapcheck/weights.hpp"

namespace {

using namespace gapcheck;

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

constexpr double kPi = 3.14159265358979323846;

const AlgebraMetric kStdHalf{0.5, Convention::standard};

// 01 -- pinned structure constants and the convention ratio
void check_constants() {
    const double a4 = gap_constant(4, kStdHalf);
    const double a3 = gap_constant(3, kStdHalf);
    REQUIRE(std::abs(a4 - 4.0 / std::sqrt(3.0)) < 1e-12, "a_G(4, 1/2) != 4/sqrt(3)");
    REQUIRE(std::abs(4.0 / a4 - std::sqrt(3.0)) < 1e-12, "4/a_G != sqrt(3)");
    REQUIRE(std::abs(a3 - 2.0 / std::sqrt(1.5)) < 1e-12, "a_G(3, 1/2) != 2/sqrt(1.5)");
    std::mt19937_64 rng(11);
    for (int n = 3; n <= 8; ++n)
        for (int k = 0; k < 16; ++k) {
            const double alpha = uniform(rng, 0.05, 8.0);
            const double s = gap_constant(n, AlgebraMetric{alpha, Convention::standard});
            const double t = gap_constant(n, AlgebraMetric{alpha, Convention::tensor});
            REQUIRE(std::abs(s / t - std::sqrt(2.0)) < 1e-12,
                    "standard/tensor ratio != sqrt(2) at n=" << n << " alpha=" << alpha);
        }
    std::cout << "[PASS] 01 structure constants: a_G(4)=4/sqrt(3), a_G(3)=2/sqrt(1.5), "
                 "convention ratio sqrt(2)\n";
}

// 02 -- commutator bound over so(n) with the sharp constant
void check_commutator_bound() {
    std::mt19937_64 rng(2024);
    for (int n : {3, 4, 5})
        for (double alpha : {0.5, 1.0, static_cast<double>(n - 2)}) {
            const AlgebraMetric metric{alpha, Convention::standard};
            const double c = commutator_constant(n, metric);
            for (int s = 0; s < 10000; ++s) {
                const SkewMatrix m = random_skew(n, rng);
                const SkewMatrix k = random_skew(n, rng);
                const double bound = c * norm(m, metric) * norm(k, metric);
                REQUIRE(norm(bracket(m, k), metric) <= bound * (1.0 + 1e-12),
                        "commutator bound violated at n=" << n << " alpha=" << alpha);
            }
            if (n == 3) {
                const auto gen = so3_generators();
                const double reached = norm(bracket(gen[0], gen[1]), metric) /
                                       (norm(gen[0], metric) * norm(gen[1], metric));
                REQUIRE(reached >= (1.0 - 1e-9) * c, "so(3) sharpness witness below c");
            }
        }
    std::cout << "[PASS] 02 commutator bound: 1e4 random so(n) pairs per (n, alpha), "
                 "so(3) witness sharp\n";
}

// 03 -- trilinear estimate chain and its saturation
void check_trilinear_chain() {
    std::mt19937_64 rng(2024);
    const double a_g = gap_constant(4, kStdHalf);
    for (int s = 0; s < 100000; ++s) {
        const ChainReport ch = trilinear_chain(random_selfdual(4, rng), kStdHalf);
        const double scale = 1.0 + std::abs(ch.e);
        REQUIRE(ch.a <= ch.b + 1e-10 * scale, "chain a > b");
        REQUIRE(ch.b <= ch.c + 1e-10 * scale, "chain b > c");
        REQUIRE(ch.c <= ch.d + 1e-10 * scale, "chain c > d");
        REQUIRE(std::abs(ch.d - ch.e) <= 1e-10 * scale, "ordered-pair identity d != e");
    }
    const AlgebraTwoForm eq = equality_configuration();
    const double nf = norm(eq, kStdHalf);
    REQUIRE(std::abs(std::abs(trilinear(eq, kStdHalf)) - a_g * nf * nf * nf) <=
                1e-10 * a_g * nf * nf * nf,
            "equality configuration does not reach a_G |F|^3");
    const double sup = sharpness_search(kStdHalf, 6, 2000, rng);
    REQUIRE(sup >= 0.999, "search supremum " << sup << " below 0.999 a_G");
    REQUIRE(sup <= 1.0 + 1e-9, "search supremum exceeds a_G");
    std::cout << "[PASS] 03 trilinear chain: monotone on 1e5 forms, saturated by the "
                 "distinguished configuration, supremum >= 0.999 a_G\n";
}

// 04 -- curvature kernel against the model-space catalog
void check_curvature_kernel() {
    struct Ref {
        Space id;
        double scalar, wplus, wminus;
    };
    const Ref refs[] = {{Space::R4, 0.0, 0.0, 0.0},  {Space::S4, 12.0, 0.0, 0.0},
                        {Space::H4, -12.0, 0.0, 0.0}, {Space::S3xR, 6.0, 0.0, 0.0},
                        {Space::CP2, 24.0, 4.0, 0.0}, {Space::CH2, -24.0, 2.0, 0.0}};
    for (const Ref& ref : refs) {
        const ModelSpace& space = model_space(ref.id);
        std::mt19937_64 rng(2024);
        for (int s = 0; s < 100; ++s) {
            const CurvatureData cd = curvature_at(space, space.sample(rng));
            REQUIRE(std::abs(cd.scalar - ref.scalar) < 1e-5,
                    space.name << " scalar curvature off");
            REQUIRE(std::abs(cd.weyl_plus_spectrum[2] - ref.wplus) < 1e-5,
                    space.name << " lambda_max(W+) off");
            REQUIRE(std::abs(cd.weyl_minus_spectrum[2] - ref.wminus) < 1e-5,
                    space.name << " lambda_max(W-) off");
            const double res =
                std::max({cd.residuals.antisymmetry, cd.residuals.pair_symmetry,
                          cd.residuals.first_bianchi, cd.residuals.weyl_trace});
            REQUIRE(res < 1e-6, space.name << " decomposition residual " << res);
            if (ref.id == Space::CP2) {
                const Eigen::Vector3d sp = cd.weyl_plus_spectrum;
                REQUIRE(std::abs(sp[2] - 4.0) < 1e-4, "CP2 top Weyl eigenvalue != 4");
                REQUIRE(std::abs(sp[0] + 0.5 * sp[2]) < 1e-4 &&
                            std::abs(sp[1] + 0.5 * sp[2]) < 1e-4,
                        "CP2 spectrum not of shape (x, -x/2, -x/2)");
            }
        }
    }
    std::cout << "[PASS] 04 curvature kernel: (R, lmax W+, lmax W-) catalog at 100 points "
                 "per space, residuals < 1e-6, CP2 spectrum (4, -2, -2)\n";
}

// 05 -- radial weight identities and positivity
void check_weight_identities() {
    const RadialWeight ak_flat = ak_weight(flat_laplacian());
    const RadialWeight comp_id = comparison_weight(
        [](double rho) { return rho; }, [](double) { return 1.0; }, [](double) { return 0.0; },
        "identity");
    std::array<RadialWeight, 3> ak_chm = {ak_weight(chm_laplacian_profile(1)),
                                          ak_weight(chm_laplacian_profile(2)),
                                          ak_weight(chm_laplacian_profile(3))};
    std::array<RadialWeight, 3> chm = {chm_weight(1), chm_weight(2), chm_weight(3)};
    for (int k = 0; k <= 400; ++k) {
        const double rho = 0.01 * std::pow(5000.0, k / 400.0);
        const double inv = 1.0 / (rho * rho);
        REQUIRE(std::abs(ak_flat.q(rho) - inv) <= 1e-8 * (1.0 + inv),
                "flat radial-Laplacian weight != 1/rho^2 at rho=" << rho);
        REQUIRE(std::abs(comp_id.q(rho) - inv) <= 1e-8 * (1.0 + inv),
                "psi=rho comparison weight != 1/rho^2 at rho=" << rho);
        for (int m = 0; m < 3; ++m)
            REQUIRE(std::abs(ak_chm[m].q(rho) - chm[m].q(rho)) <=
                        1e-8 * (1.0 + std::abs(chm[m].q(rho))),
                    "profile-built weight != closed form at m=" << m + 1 << " rho=" << rho);
        for (int m = 1; m <= 3; ++m) {
            REQUIRE(chm_laplacian_sq_identity_residual(m, rho) < 1e-10,
                    "(lap)^2 identity residual at m=" << m << " rho=" << rho);
            REQUIRE(chm_laplacian_derivative_identity_residual(m, rho) < 1e-10,
                    "d(lap)/drho identity residual at m=" << m << " rho=" << rho);
        }
    }
    for (int k = 0; k <= 360; ++k) {
        const double rho = std::pow(10.0, -6.0 + 9.0 * k / 360.0);
        for (int m = 1; m <= 3; ++m)
            REQUIRE(chm_weight(m).q(rho) > 0.0, "chm weight not positive at rho=" << rho);
    }
    std::cout << "[PASS] 05 weight identities: radial-Laplacian forms match closed forms "
                 "to 1e-8, algebraic identities to 1e-10, positivity on [1e-6, 1e3]\n";
}

// 06 -- weighted Poincare certificates and the near-sharp trial
void check_poincare() {
    const struct {
        Space space;
        RadialWeight weight;
    } rows[] = {{Space::R4, carron_weight()},
                {Space::H4, bgg_weight(1.0)},
                {Space::CH2, chm_weight(2)}};
    for (const auto& row : rows) {
        const ModelSpace& space = model_space(row.space);
        for (const std::string& family : {"linear", "log", "unit"})
            for (double r : {2.0, 10.0, 100.0}) {
                const Cutoff cutoff = family == "linear"  ? linear_cutoff(r)
                                      : family == "log"   ? log_cutoff(r)
                                                          : unit_cutoff(r);
                const PoincareResult res = verify_poincare(space, row.weight, cutoff);
                REQUIRE(std::isfinite(res.ratio) && res.ratio >= 1.0 - 1e-6,
                        space.name << " " << row.weight.name << " " << family << " r=" << r
                                   << " ratio " << res.ratio);
            }
    }
    const TrialResult trial = hardy_trial();
    REQUIRE(trial.ratio >= 1.0 - 1e-6 && trial.ratio <= 1.05,
            "near-sharp flat trial ratio " << trial.ratio);
    std::cout << "[PASS] 06 weighted Poincare: all certificate ratios >= 1 - 1e-6, "
                 "near-sharp flat trial <= 1.05\n";
}

// 07 -- instanton closed forms, purity, equations, charge
void check_instanton() {
    std::mt19937_64 rng(2024);
    GaugeField field;  // bpst, lambda 1, center 0, standard alpha = 1/2
    for (int s = 0; s < 1000; ++s) {
        GaugeField probe = field;
        probe.lambda = uniform(rng, 0.3, 3.0);
        for (int k = 0; k < 4; ++k) probe.center[k] = gaussian(rng);
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = probe.center[k] + 2.0 * gaussian(rng);
        const double u = (x - probe.center).squaredNorm();
        const double l2 = probe.lambda * probe.lambda;
        const double expected = std::sqrt(48.0) * l2 / ((l2 + u) * (l2 + u));
        const double measured = probe.norm_flat(x);
        REQUIRE(std::abs(measured - expected) <= 1e-8 * expected,
                "|F| off closed form at sample " << s);
        REQUIRE(probe.norm_antiselfdual(x) / measured < 1e-10,
                "anti-self-dual contamination at sample " << s);
    }
    for (int s = 0; s < 50; ++s) {
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = 1.5 * gaussian(rng);
        REQUIRE(field.ym_residual(x) < 1e-4, "Yang-Mills residual at sample " << s);
    }
    const double radial = charge_radial(field);
    REQUIRE(std::abs(radial - 1.0) <= 1e-3, "radial charge " << radial);
    const double mc = charge_monte_carlo(field, 2024, 200000);
    REQUIRE(std::abs(mc - 1.0) <= 0.05, "Monte-Carlo charge " << mc);
    for (int s = 0; s < 200; ++s) {
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = 2.0 * gaussian(rng);
        REQUIRE(std::abs(field.norm_sphere(x) - std::sqrt(3.0)) <= 1e-8,
                "sphere pullback norm != sqrt(3) at sample " << s);
    }
    std::cout << "[PASS] 07 instanton: |F| closed form on 1e3 draws, pure self-dual, "
                 "Yang-Mills residual < 1e-4, charge 1 (radial and Monte-Carlo), sphere "
                 "norm sqrt(3)\n";
}

// 08 -- refined Kato ratio away from critical points
void check_refined_kato() {
    std::mt19937_64 rng(2024);
    const GaugeField field;
    int tested = 0;
    while (tested < 100) {
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = 2.0 * gaussian(rng);
        if (x.norm() < 0.05) continue;  // |F| is critical only at the center
        REQUIRE(field.kato_ratio(x) >= 1.5 - 1e-3, "Kato ratio below 3/2 at |x|=" << x.norm());
        ++tested;
    }
    std::cout << "[PASS] 08 refined Kato: |dF|^2 / |d|F||^2 >= 3/2 - 1e-3 at 100 "
                 "non-critical points\n";
}

// 09 -- pointwise differential inequality and the coefficient identity
void check_differential_inequality() {
    const GaugeField field;
    const ModelSpace& sphere = model_space(Space::S4);
    const auto sphere_points = gap_sample_points(sphere, 2024, 20);
    for (const Vec4& x : sphere_points) {
        const Lemma3Report res = lemma3_check(field, sphere, 0.5, x);
        if (res.skipped) continue;
        REQUIRE(std::abs(res.lhs) < 1e-3 && std::abs(res.rhs) < 1e-3,
                "conformally flat equality case: sides " << res.lhs << ", " << res.rhs);
    }
    const ModelSpace& flat = model_space(Space::R4);
    const auto flat_points = gap_sample_points(flat, 2024, 50);
    for (const Vec4& x : flat_points) {
        const Lemma3Report res = lemma3_check(field, flat, 0.5, x);
        if (res.skipped) continue;
        REQUIRE(res.lhs >= res.rhs - 1e-3 * (1.0 + std::abs(res.rhs)) - res.fd_error,
                "flat-chart inequality fails at rho=" << flat.rho(x));
    }
    GapBoundSpec first;
    first.theorem = Theorem::T1;
    first.space = Space::R4;
    first.p = 0.5;
    GapBoundSpec second = first;
    second.theorem = Theorem::T2;
    const GapThreshold a = gap_threshold(first);
    const GapThreshold b = gap_threshold(second);
    REQUIRE(std::abs(a.coeff_q - b.coeff_q) < 1e-12, "weight coefficients differ at p=1/2");
    for (double rho : {0.1, 0.5, 1.0, 3.0, 10.0})
        REQUIRE(std::abs(a.value(rho) - b.value(rho)) < 1e-12,
                "thresholds differ at rho=" << rho);
    std::cout << "[PASS] 09 differential inequality: equality on the round sphere, holds "
                 "on the flat chart, p=1/2 coefficient identity\n";
}

// 10 -- gap verdicts and threshold structure
void check_gap_verdicts() {
    const auto report_for = [](Theorem theorem, Space space, ConnectionKind kind) {
        GapBoundSpec spec;
        spec.theorem = theorem;
        spec.space = space;
        GaugeField field;
        field.kind = kind;
        const ModelSpace& ms = model_space(space);
        const GapThreshold thr = gap_threshold(spec);
        const auto norm_fn = field_norm_on_space(field, ms, thr.side);
        return evaluate_gap(norm_fn, spec, gap_sample_points(ms, 2024, 40), 1e-6);
    };
    REQUIRE(report_for(Theorem::T5, Space::S4, ConnectionKind::bpst).verdict ==
                Verdict::equality_branch,
            "instanton on the sphere not in the equality branch");
    REQUIRE(report_for(Theorem::T5, Space::S4, ConnectionKind::zero).verdict ==
                Verdict::vanishing_branch,
            "flat connection on the sphere not in the vanishing branch");
    REQUIRE(report_for(Theorem::C10, Space::R4, ConnectionKind::bpst).verdict ==
                Verdict::hypothesis_violated,
            "flat-space instanton does not violate the smallness hypothesis");

    GapBoundSpec flat;
    flat.theorem = Theorem::C10;
    flat.space = Space::R4;
    const GaugeField field;
    const double margin = margin_at(flat, field, 1.0);
    const double expected = std::sqrt(3.0) - 2.0 / gap_constant(4, kStdHalf);
    REQUIRE(std::abs(std::abs(margin) - expected) < 1e-6,
            "unit-radius witness margin " << margin << " != -(sqrt(3) - 2/a_G)");

    for (double p : {0.375, 0.75}) {
        GapBoundSpec spec;
        spec.theorem = Theorem::C12;
        spec.space = Space::H4;
        spec.p = p;
        REQUIRE(std::abs(gap_threshold(spec).asymptote()) < 1e-12,
                "constant part nonzero at p=" << p);
    }
    GapBoundSpec kahler;
    kahler.theorem = Theorem::T14;
    kahler.space = Space::CH2;
    const GapThreshold thr = gap_threshold(kahler);
    for (int k = 0; k <= 400; ++k) {
        const double rho = std::pow(10.0, -3.0 + 5.0 * k / 400.0);
        REQUIRE(thr.value(rho) > 0.0, "complex-hyperbolic threshold not positive at rho="
                                          << rho);
    }
    std::cout << "[PASS] 10 gap verdicts: equality / vanishing / violated scenarios, "
                 "unit-radius margin, constant-part roots at p=3/8 and 3/4, positive "
                 "complex-hyperbolic threshold\n";
}

// 11 -- annulus decay functional
void check_annulus_bound() {
    const ModelSpace& cylinder = model_space(Space::S3xR);
    double lo = 1e300, hi = 0.0;
    for (double r : {10.0, 100.0, 1000.0}) {
        const double bound = annulus_log_bound(cylinder, 1.0, r);
        REQUIRE(std::isfinite(bound) && bound > 0.0, "cylinder annulus integral at r=" << r);
        lo = std::min(lo, bound);
        hi = std::max(hi, bound);
    }
    REQUIRE(hi <= 2.0 * lo, "cylinder annulus spread " << hi / lo << " exceeds 2");
    const ModelSpace& flat = model_space(Space::R4);
    for (double r : {10.0, 100.0, 1000.0}) {
        const double bound = annulus_log_bound(flat, 4.0, r);
        REQUIRE(std::abs(bound - 2.0 * kPi * kPi) <= 1e-6 * 2.0 * kPi * kPi,
                "flat annulus integral != 2 pi^2 at r=" << r);
    }
    std::cout << "[PASS] 11 annulus bound: cylinder spread within 2x, flat value "
                 "2 pi^2 across r = 10, 100, 1000\n";
}

// 12 -- byte-identical reports from identical seeds
void check_reproducibility(const std::string& binary) {
    const auto read_file = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        REQUIRE(in.good(), "report file missing: " << path);
        std::ostringstream body;
        body << in.rdbuf();
        return body.str();
    };
    const std::string args =
        " gap --theorem T5 --space S4 --connection bpst --seed 7 --format csv --out ";
    for (const char* name : {"acceptance_rep_a.csv", "acceptance_rep_b.csv"}) {
        const int rc = std::system((binary + args + name).c_str());
        REQUIRE(rc == 0, "report run exited with " << rc);
    }
    const std::string a = read_file("acceptance_rep_a.csv");
    const std::string b = read_file("acceptance_rep_b.csv");
    REQUIRE(!a.empty() && a == b, "same-seed reports differ");
    std::remove("acceptance_rep_a.csv");
    std::remove("acceptance_rep_b.csv");
    std::cout << "[PASS] 12 reproducibility: identical seeds give byte-identical reports\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "./gapcheck";
    check_constants();
    check_commutator_bound();
    check_trilinear_chain();
    check_curvature_kernel();
    check_weight_identities();
    check_poincare();
    check_instanton();
    check_refined_kato();
    check_differential_inequality();
    check_gap_verdicts();
    check_annulus_bound();
    check_reproducibility(binary);
    std::cout << "all acceptance checks passed\n";
    return 0;
}
