#include "gapcheck/gap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "gapcheck/curvature.hpp"

namespace gapcheck {
namespace {

constexpr const char* kTheoremNames[] = {"T1", "T2", "T4",  "T5",  "T6", "T9",
                                         "T11", "T14", "C7", "C10", "C12"};
constexpr int kTheoremCount = 11;

// (1/p)(2 - 1/(2p)), the weight coefficient of the p-indexed bounds;
// positive exactly when p > 1/4.
double weight_coefficient(double p) { return (1.0 / p) * (2.0 - 1.0 / (2.0 * p)); }

bool uses_exponent(Theorem t) {
    return t == Theorem::T1 || t == Theorem::T4 || t == Theorem::T11 || t == Theorem::C12;
}

// Leading alphabetic token: "bgg" from "bgg", "ak" from "ak/chm".
std::string weight_family(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (!std::isalpha(static_cast<unsigned char>(c))) break;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::optional<RadialWeight> default_weight(Space space) {
    switch (space) {
        case Space::R4: return carron_weight();
        case Space::H4: return bgg_weight(1.0);
        case Space::CH2: return chm_weight(2);
        default: return std::nullopt;  // compact: the zero weight suffices
    }
}

}  // namespace

Theorem theorem_from_string(const std::string& name) {
    std::string up;
    for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (int i = 0; i < kTheoremCount; ++i)
        if (up == kTheoremNames[i]) return static_cast<Theorem>(i);
    throw std::invalid_argument("unknown theorem '" + name +
                                "' (expected one of T1 T2 T4 T5 T6 T9 T11 T14 C7 C10 C12)");
}

std::string theorem_name(Theorem theorem) {
    return kTheoremNames[static_cast<int>(theorem)];
}

std::string verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::vanishing_branch: return "vanishing_branch";
        case Verdict::equality_branch: return "equality_branch";
        case Verdict::hypothesis_violated: return "hypothesis_violated";
    }
    throw std::logic_error("verdict_name: bad enum value");
}

double GapThreshold::value(double rho) const {
    const double q = weight ? weight->q(rho) : 0.0;
    return (coeff_q * q + constant) / a_g;
}

double GapThreshold::asymptote() const {
    const double q = weight ? weight->q(1e9) : 0.0;
    return coeff_q * q + constant;
}

GapThreshold gap_threshold(const GapBoundSpec& spec) {
    const ModelSpace& space = model_space(spec.space);
    const Theorem t = spec.theorem;
    const std::string name = theorem_name(t);

    if (uses_exponent(t) && !(spec.p > 0.25))
        throw std::invalid_argument(name + ": need p > 1/4");
    if (t == Theorem::C12 && !(spec.p >= 0.375 - 1e-12 && spec.p <= 0.75 + 1e-12))
        throw std::invalid_argument("C12: need 3/8 <= p <= 3/4");
    if (t == Theorem::T4) {
        const double cap = weight_coefficient(spec.p);
        if (!(spec.b > 0.0 && spec.b < cap))
            throw std::invalid_argument("T4: need 0 < b < (1/p)(2 - 1/(2p))");
    }

    // All catalog spaces are homogeneous, so one probe fixes the constants.
    const CurvatureData cd = curvature_at(space, space.point_at_rho(0.7));
    const double wplus_mag =
        std::max(std::abs(cd.weyl_plus_spectrum[0]), std::abs(cd.weyl_plus_spectrum[2]));
    const double kAsdTol = 1e-8;

    switch (t) {
        case Theorem::T1:
        case Theorem::T2:
        case Theorem::T4:
            break;  // any geometry; the weight carries the hypothesis
        case Theorem::T5:
            if (wplus_mag > kAsdTol || !(cd.scalar > 0.0))
                throw std::invalid_argument(name + ": needs W+ = 0 and positive scalar curvature; " +
                                            space.name + " fails");
            break;
        case Theorem::T6:
            if (wplus_mag > kAsdTol || !(cd.scalar > 0.0))
                throw std::invalid_argument(name + ": needs W+ = 0 and positive scalar curvature; " +
                                            space.name + " fails");
            if (space.growth == VolumeGrowth::exponential)
                throw std::invalid_argument(name + ": needs subexponential volume growth");
            break;
        case Theorem::C7:
            if (spec.space != Space::S4 && spec.space != Space::CP2 && spec.space != Space::S3xR)
                throw std::invalid_argument(
                    "C7: stated on the round sphere, the complex projective plane, and the "
                    "cylinder");
            break;
        case Theorem::T9:
            if (wplus_mag > kAsdTol)
                throw std::invalid_argument(name + ": needs W+ = 0; " + space.name + " fails");
            if (!(space.sectional_max <= 0.0))
                throw std::invalid_argument(name + ": needs nonpositive sectional curvature");
            if (space.growth != VolumeGrowth::polynomial)
                throw std::invalid_argument(name + ": needs polynomial volume growth");
            break;
        case Theorem::C10:
            if (spec.space != Space::R4) throw std::invalid_argument("C10: stated on flat R4");
            break;
        case Theorem::T11:
            if (!(spec.b > 0.0)) throw std::invalid_argument("T11: need b > 0");
            if (wplus_mag > kAsdTol)
                throw std::invalid_argument(name + ": needs W+ = 0; " + space.name + " fails");
            if (!(space.sectional_max <= -spec.b * spec.b + 1e-9))
                throw std::invalid_argument("T11: needs sectional curvature <= -b^2");
            break;
        case Theorem::C12:
            if (spec.space != Space::H4)
                throw std::invalid_argument("C12: stated on the hyperbolic ball");
            break;
        case Theorem::T14:
            if (spec.space != Space::CH2)
                throw std::invalid_argument("T14: stated on the complex hyperbolic plane");
            break;
    }

    int side = +1;
    if (spec.side == DualSide::minus) side = -1;
    else if (spec.side == DualSide::automatic)
        side = (spec.space == Space::CP2 || spec.space == Space::CH2) ? -1 : +1;

    std::optional<RadialWeight> canonical;
    bool forbid_weight = false;
    switch (t) {
        case Theorem::T5:
        case Theorem::T6:
        case Theorem::C7: forbid_weight = true; break;
        case Theorem::T9:
        case Theorem::C10: canonical = carron_weight(); break;
        case Theorem::T11: canonical = bgg_weight(spec.b); break;
        case Theorem::C12: canonical = bgg_weight(1.0); break;
        case Theorem::T14: canonical = chm_weight(2); break;
        default: break;
    }

    std::optional<RadialWeight> weight;
    if (forbid_weight) {
        if (spec.weight)
            throw std::invalid_argument(name + ": carries no weight term");
    } else if (canonical) {
        if (spec.weight && weight_family(spec.weight->name) != weight_family(canonical->name))
            throw std::invalid_argument(name + ": weight is fixed to " + canonical->name +
                                        ", got " + spec.weight->name);
        weight = canonical;
    } else if (spec.weight) {
        weight = spec.weight;
    } else {
        weight = default_weight(spec.space);
    }

    double coeff = 0.0;
    switch (t) {
        case Theorem::T1:
        case Theorem::T11:
        case Theorem::C12: coeff = weight_coefficient(spec.p); break;
        case Theorem::T2:
        case Theorem::T9:
        case Theorem::C10:
        case Theorem::T14: coeff = 2.0; break;
        case Theorem::T4: coeff = spec.b; break;
        case Theorem::T5:
        case Theorem::T6:
        case Theorem::C7: coeff = 0.0; break;
    }
    if (!weight) coeff = 0.0;

    GapThreshold thr;
    thr.theorem = t;
    thr.space = spec.space;
    thr.coeff_q = coeff;
    thr.weight = weight;
    thr.constant =
        cd.scalar / 3.0 - 2.0 * lambda_max(side > 0 ? cd.weyl_plus : cd.weyl_minus);
    thr.a_g = gap_constant(spec.n, spec.metric);
    thr.side = side;
    return thr;
}

GapReport evaluate_gap(const std::function<double(const Vec4&)>& field_norm,
                       const GapBoundSpec& spec, const std::vector<Vec4>& points,
                       double tolerance) {
    if (points.empty()) throw std::invalid_argument("evaluate_gap: no evaluation points");
    if (!(tolerance > 0.0)) throw std::invalid_argument("evaluate_gap: need tolerance > 0");
    const ModelSpace& space = model_space(spec.space);
    const GapThreshold thr = gap_threshold(spec);

    GapReport report;
    report.tolerance = tolerance;
    report.samples.reserve(points.size());
    bool all_within_band = true;
    bool any_violated = false;
    for (const Vec4& x : points) {
        GapSample s;
        s.rho = space.rho(x);
        s.f_plus_norm = field_norm(x);
        s.threshold = thr.value(s.rho);
        s.margin = s.threshold - s.f_plus_norm;
        if (!(std::abs(s.margin) < tolerance * (1.0 + s.threshold))) all_within_band = false;
        if (s.margin < -tolerance) any_violated = true;
        report.samples.push_back(s);
    }
    report.verdict = all_within_band  ? Verdict::equality_branch
                     : any_violated   ? Verdict::hypothesis_violated
                                      : Verdict::vanishing_branch;
    std::stable_sort(report.samples.begin(), report.samples.end(),
                     [](const GapSample& a, const GapSample& b) { return a.rho < b.rho; });

    const auto by_margin = [](const GapSample& a, const GapSample& b) {
        return a.margin < b.margin;
    };
    const auto best = std::max_element(report.samples.begin(), report.samples.end(), by_margin);
    if (best->margin > 0.0) report.strictness_witness = *best;
    if (report.verdict == Verdict::hypothesis_violated)
        report.violation_witness =
            *std::min_element(report.samples.begin(), report.samples.end(), by_margin);
    return report;
}

std::vector<Vec4> gap_sample_points(const ModelSpace& space, std::uint64_t seed, int count) {
    if (count <= 0) throw std::invalid_argument("gap_sample_points: need count > 0");
    std::vector<Vec4> points;
    points.reserve(count);
    const double ladder[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0};
    const double hi = 0.9 * space.diameter;
    for (double rho : ladder) {
        if (static_cast<int>(points.size()) >= count) break;
        if (rho < hi) points.push_back(space.point_at_rho(rho));
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(points.size()) < count) points.push_back(space.sample(rng));
    return points;
}

std::function<double(const Vec4&)> field_norm_on_space(const GaugeField& field,
                                                       const ModelSpace& space, int side) {
    if (side != +1 && side != -1)
        throw std::invalid_argument("field_norm_on_space: side must be +1 or -1");
    if (field.kind == ConnectionKind::zero)
        return [](const Vec4&) { return 0.0; };
    const GaugeField f = field;
    const auto half_norm = [f, side](const Vec4& x) {
        return side > 0 ? f.norm_selfdual(x) : f.norm_antiselfdual(x);
    };
    switch (space.id) {
        case Space::R4: return half_norm;
        case Space::S4:
        case Space::H4: {
            // g = phi^2 delta; a two-form's norm picks up phi^{-2}.
            const auto metric = space.metric;
            return [half_norm, metric](const Vec4& x) {
                return half_norm(x) / metric(x)(0, 0);
            };
        }
        default:
            throw std::invalid_argument("field_norm_on_space: no pullback of '" +
                                        connection_name(field.kind) + "' onto " + space.name);
    }
}

double margin_at(const GapBoundSpec& spec, const GaugeField& field, double rho) {
    const ModelSpace& space = model_space(spec.space);
    const GapThreshold thr = gap_threshold(spec);
    const auto norm = field_norm_on_space(field, space, thr.side);
    return thr.value(rho) - norm(space.point_at_rho(rho));
}

Lemma3Report lemma3_check(const GaugeField& field, const ModelSpace& space, double p,
                          const Vec4& x, double h) {
    if (!(p > 0.25)) throw std::invalid_argument("lemma3_check: need p > 1/4");
    if (!(h > 0.0)) throw std::invalid_argument("lemma3_check: need h > 0");
    if (!space.in_chart(x)) throw std::invalid_argument("lemma3_check: point outside chart");

    Lemma3Report report;
    const auto norm = field_norm_on_space(field, space, +1);
    const double n0 = norm(x);
    if (n0 <= 0.0) {
        report.skipped = true;
        return report;
    }
    for (int i = 0; i < 4; ++i)
        for (double s : {-1.0, 1.0}) {
            Vec4 y = x;
            y[i] += s * h;
            if (!space.in_chart(y)) {
                report.skipped = true;
                return report;
            }
        }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (double si : {-1.0, 1.0})
                for (double sj : {-1.0, 1.0}) {
                    Vec4 y = x;
                    y[i] += si * h;
                    y[j] += sj * h;
                    if (!space.in_chart(y)) {
                        report.skipped = true;
                        return report;
                    }
                }

    const auto f = [&norm, p](const Vec4& y) { return std::pow(norm(y), p); };
    const double f0 = std::pow(n0, p);

    const JetMat4 gj = space.metric_jet(x);
    Mat4 g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = gj[i][j].v;
    const Mat4 ginv = g.inverse();

    // lap f = g^{ij} d_i d_j f + A^j d_j f with
    // A^j = sum_i [d_i g^{ij} + g^{ij} d_i log sqrt(g)].
    Vec4 drift = Vec4::Zero();
    for (int i = 0; i < 4; ++i) {
        Mat4 dg;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) dg(a, b) = gj[a][b].g[i];
        const Mat4 dginv = -ginv * dg * ginv;
        const double dlog_sqrtg = 0.5 * (ginv * dg).trace();
        for (int j = 0; j < 4; ++j) drift[j] += dginv(i, j) + ginv(i, j) * dlog_sqrtg;
    }

    const auto lap_grad = [&](double step, double& lap, double& grad_sq) {
        Vec4 df = Vec4::Zero();
        Mat4 hess = Mat4::Zero();
        for (int i = 0; i < 4; ++i) {
            Vec4 yp = x, ym = x;
            yp[i] += step;
            ym[i] -= step;
            const double fp = f(yp), fm = f(ym);
            df[i] = (fp - fm) / (2.0 * step);
            hess(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                Vec4 ypp = x, ypm = x, ymp = x, ymm = x;
                ypp[i] += step; ypp[j] += step;
                ypm[i] += step; ypm[j] -= step;
                ymp[i] -= step; ymp[j] += step;
                ymm[i] -= step; ymm[j] -= step;
                hess(i, j) = hess(j, i) =
                    (f(ypp) - f(ypm) - f(ymp) + f(ymm)) / (4.0 * step * step);
            }
        lap = 0.0;
        grad_sq = 0.0;
        for (int i = 0; i < 4; ++i) {
            lap += drift[i] * df[i];
            for (int j = 0; j < 4; ++j) {
                lap += ginv(i, j) * hess(i, j);
                grad_sq += ginv(i, j) * df[i] * df[j];
            }
        }
    };

    const CurvatureData cd = curvature_at(space, x);
    const double a_g = gap_constant(4, field.metric);
    const double lmax = lambda_max(cd.weyl_plus);
    const double f2p = std::pow(n0, 2.0 * p);
    const double kato = 1.0 - 1.0 / (2.0 * p);
    const double curvature_part =
        (p / 3.0) * cd.scalar * f2p - 2.0 * p * lmax * f2p - p * a_g * f2p * n0;

    double lap = 0.0, grad_sq = 0.0, lap_half = 0.0, grad_sq_half = 0.0;
    lap_grad(h, lap, grad_sq);
    lap_grad(0.5 * h, lap_half, grad_sq_half);

    report.lhs = f0 * lap_half;
    report.rhs = kato * grad_sq_half + curvature_part;
    report.slack = report.lhs - report.rhs;
    report.fd_error = (std::abs(f0 * (lap - lap_half)) +
                       std::abs(kato * (grad_sq - grad_sq_half))) / 3.0;
    return report;
}

}  // namespace gapcheck
