// Command-line surface: runs each module's verification suite and writes a
// CSV or JSON report. Same configuration + seed => byte-identical output.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "gapcheck/algebra.hpp"
#include "gapcheck/curvature.hpp"
#include "gapcheck/gap.hpp"
#include "gapcheck/gauge_field.hpp"
#include "gapcheck/model_space.hpp"
#include "gapcheck/two_form.hpp"
#include "gapcheck/weights.hpp"

using namespace gapcheck;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// report plumbing: preformatted cells, CSV/JSON writers (12 significant
// digits everywhere, no locale dependence)

struct Cell {
    std::string token;
    bool quoted = false;
};

Cell num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return {buf, false};
}

Cell num(long long v) { return {std::to_string(v), false}; }
Cell num(int v) { return {std::to_string(v), false}; }
Cell txt(std::string s) { return {std::move(s), true}; }
Cell flag(bool b) { return {b ? "true" : "false", false}; }

struct Report {
    std::string suite;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    bool pass = true;
};

void write_csv(std::ostream& os, const std::vector<Report>& reports) {
    bool first = true;
    for (const Report& rep : reports) {
        if (!first) os << "\n";
        first = false;
        os << "# suite: " << rep.suite << "\n";
        for (size_t i = 0; i < rep.columns.size(); ++i)
            os << (i ? "," : "") << rep.columns[i];
        os << "\n";
        for (const auto& row : rep.rows) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].token;
            os << "\n";
        }
        for (const auto& [key, value] : rep.summary) os << "# " << key << "=" << value.token << "\n";
        os << "# pass=" << (rep.pass ? "true" : "false") << "\n";
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void write_json_cell(std::ostream& os, const Cell& cell) {
    const bool nonfinite = !cell.quoted && (cell.token.find("nan") != std::string::npos ||
                                            cell.token.find("inf") != std::string::npos);
    if (cell.quoted || nonfinite)
        os << '"' << json_escape(cell.token) << '"';
    else
        os << cell.token;
}

void write_json(std::ostream& os, const std::vector<Report>& reports) {
    os << "{\"reports\":[";
    for (size_t r = 0; r < reports.size(); ++r) {
        const Report& rep = reports[r];
        if (r) os << ",";
        os << "{\"suite\":\"" << json_escape(rep.suite) << "\",\"rows\":[";
        for (size_t i = 0; i < rep.rows.size(); ++i) {
            if (i) os << ",";
            os << "{";
            for (size_t j = 0; j < rep.rows[i].size(); ++j) {
                if (j) os << ",";
                os << '"' << json_escape(rep.columns[j]) << "\":";
                write_json_cell(os, rep.rows[i][j]);
            }
            os << "}";
        }
        os << "],\"summary\":{";
        for (size_t i = 0; i < rep.summary.size(); ++i) {
            if (i) os << ",";
            os << '"' << json_escape(rep.summary[i].first) << "\":";
            write_json_cell(os, rep.summary[i].second);
        }
        os << "},\"pass\":" << (rep.pass ? "true" : "false") << "}";
    }
    os << "]}\n";
}

// ---------------------------------------------------------------------------
// shared run configuration

struct Options {
    std::uint64_t seed = 2024;
    int samples = -1;  // -1: suite default
    std::string format = "csv";
    std::string out;
    double alpha = 0.5;
    std::string convention = "standard";
    int n = 0;  // 0: full grid (constants suite)
    bool n_set = false, alpha_set = false;
    std::string space, weight, cutoff;
    std::string theorem = "T5";
    std::string connection = "bpst";
    double p = 0.5, b = 1.0, lambda = 1.0, r = 0.0;
    double tolerance = -1.0;  // -1: suite default
    std::string center = "0,0,0,0";
    std::string config;
};

AlgebraMetric make_metric(const Options& opt) {
    if (!(opt.alpha > 0.0)) throw std::invalid_argument("--alpha must be positive");
    AlgebraMetric metric;
    metric.alpha = opt.alpha;
    metric.convention =
        opt.convention == "tensor" ? Convention::tensor : Convention::standard;
    return metric;
}

Vec4 parse_center(const std::string& text) {
    Vec4 c;
    std::stringstream ss(text);
    std::string item;
    int k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= 4) throw std::invalid_argument("--center needs exactly four components");
        size_t used = 0;
        c[k++] = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument("--center component '" + item + "' is not a number");
    }
    if (k != 4) throw std::invalid_argument("--center needs exactly four components");
    return c;
}

GaugeField make_field(const Options& opt) {
    GaugeField field;
    field.kind = connection_kind(opt.connection);
    field.lambda = opt.lambda;
    field.center = parse_center(opt.center);
    field.metric = make_metric(opt);
    return field;
}

int suite_samples(const Options& opt, int fallback) {
    if (opt.samples < 0) return fallback;
    if (opt.samples == 0) throw std::invalid_argument("--samples must be positive");
    return opt.samples;
}

// ---------------------------------------------------------------------------
// constants: structure constants and the commutator bound

Report constants_suite(const Options& opt) {
    Report rep;
    rep.suite = "constants";
    rep.columns = {"n",      "alpha",           "convention",     "a_g",
                   "commutator_c", "max_bracket_ratio", "sharpness_ratio", "pass"};
    const int samples = suite_samples(opt, 2000);
    const Convention conv = make_metric(opt).convention;
    const std::string conv_name = conv == Convention::tensor ? "tensor" : "standard";

    std::vector<int> ns = opt.n_set ? std::vector<int>{opt.n} : std::vector<int>{3, 4, 5};
    std::mt19937_64 rng(opt.seed);
    for (int n : ns) {
        std::vector<double> alphas =
            opt.alpha_set ? std::vector<double>{opt.alpha}
                          : std::vector<double>{0.5, 1.0, static_cast<double>(n - 2)};
        std::sort(alphas.begin(), alphas.end());
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
        for (double alpha : alphas) {
            const AlgebraMetric metric{alpha, conv};
            const double a_g = gap_constant(n, metric);
            const double c = commutator_constant(n, metric);
            double max_ratio = 0.0;
            for (int s = 0; s < samples; ++s) {
                const SkewMatrix m = random_skew(n, rng);
                const SkewMatrix k = random_skew(n, rng);
                const double denom = c * norm(m, metric) * norm(k, metric);
                if (denom > 0.0)
                    max_ratio = std::max(max_ratio, norm(bracket(m, k), metric) / denom);
            }
            double sharp = max_ratio;
            if (n == 3) {
                const auto gen = so3_generators();
                sharp = norm(bracket(gen[0], gen[1]), metric) /
                        (c * norm(gen[0], metric) * norm(gen[1], metric));
            }
            const bool row_pass =
                max_ratio <= 1.0 + 1e-12 && (n != 3 || sharp >= 1.0 - 1e-9);
            rep.pass = rep.pass && row_pass;
            rep.rows.push_back({num(n), num(alpha), txt(conv_name), num(a_g), num(c),
                                num(max_ratio), num(sharp), flag(row_pass)});
        }
    }

    // pinned values, independent of the requested grid
    const AlgebraMetric std_half{0.5, Convention::standard};
    const double a4 = gap_constant(4, std_half);
    const double a3 = gap_constant(3, std_half);
    const double sqrt3_res = std::abs(4.0 / a4 - std::sqrt(3.0));
    double ratio_res = 0.0;
    for (int n : {3, 4, 5})
        for (double alpha : {0.5, 1.0, 2.0}) {
            const double s = gap_constant(n, AlgebraMetric{alpha, Convention::standard});
            const double t = gap_constant(n, AlgebraMetric{alpha, Convention::tensor});
            ratio_res = std::max(ratio_res, std::abs(s / t - std::sqrt(2.0)));
        }
    const bool pinned = std::abs(a4 - 4.0 / std::sqrt(3.0)) < 1e-12 &&
                        std::abs(a3 - 2.0 / std::sqrt(1.5)) < 1e-12 && sqrt3_res < 1e-12 &&
                        ratio_res < 1e-12;
    rep.pass = rep.pass && pinned;
    rep.summary = {{"a_g_so4", num(a4)},
                   {"a_g_so3", num(a3)},
                   {"sqrt3_identity_residual", num(sqrt3_res)},
                   {"convention_ratio_residual", num(ratio_res)},
                   {"samples_per_row", num(samples)},
                   {"seed", num(static_cast<long long>(opt.seed))}};
    return rep;
}

// ---------------------------------------------------------------------------
// forms: trilinear estimate chain on self-dual two-forms

Report forms_suite(const Options& opt) {
    Report rep;
    rep.suite = "forms";
    rep.columns = {"check", "samples", "value", "reference", "pass"};
    const int samples = suite_samples(opt, 20000);
    const AlgebraMetric metric = make_metric(opt);
    const double a_g = gap_constant(4, metric);
    std::mt19937_64 rng(opt.seed);

    double chain_violation = 0.0, duality_gap = 0.0;
    for (int s = 0; s < samples; ++s) {
        const AlgebraTwoForm f = random_selfdual(4, rng);
        const ChainReport ch = trilinear_chain(f, metric);
        const double scale = 1.0 + std::abs(ch.e);
        chain_violation = std::max({chain_violation, (ch.a - ch.b) / scale,
                                    (ch.b - ch.c) / scale, (ch.c - ch.d) / scale});
        duality_gap = std::max(duality_gap, std::abs(ch.d - ch.e) / scale);
    }
    const bool chain_ok = chain_violation <= 1e-10;
    const bool dual_ok = duality_gap <= 1e-10;

    const AlgebraTwoForm eq = equality_configuration();
    const double nf = std::sqrt(norm_squared(eq, metric));
    const double eq_ratio = std::abs(trilinear(eq, metric)) / (a_g * nf * nf * nf);
    const bool eq_ok = std::abs(eq_ratio - 1.0) <= 1e-10;

    const int starts = std::max(4, samples / 4000);
    const double sup = sharpness_search(metric, starts, 1500, rng);
    const bool sup_ok = sup >= 0.999 && sup <= 1.0 + 1e-9;

    rep.rows.push_back({txt("chain_monotone_violation"), num(samples), num(chain_violation),
                        num(1e-10), flag(chain_ok)});
    rep.rows.push_back(
        {txt("duality_gap"), num(samples), num(duality_gap), num(1e-10), flag(dual_ok)});
    rep.rows.push_back(
        {txt("equality_configuration_ratio"), num(1), num(eq_ratio), num(1.0), flag(eq_ok)});
    rep.rows.push_back({txt("sharpness_supremum"), num(starts), num(sup), num(0.999),
                        flag(sup_ok)});
    rep.pass = chain_ok && dual_ok && eq_ok && sup_ok;
    rep.summary = {{"a_g", num(a_g)}, {"seed", num(static_cast<long long>(opt.seed))}};
    return rep;
}

// ---------------------------------------------------------------------------
// curvature: scalar/Weyl catalog for the model spaces

struct CurvatureReference {
    double scalar, wplus, wminus;
};

CurvatureReference curvature_reference(Space id) {
    switch (id) {
        case Space::R4: return {0.0, 0.0, 0.0};
        case Space::S4: return {12.0, 0.0, 0.0};
        case Space::H4: return {-12.0, 0.0, 0.0};
        case Space::S3xR: return {6.0, 0.0, 0.0};
        case Space::CP2: return {24.0, 4.0, 0.0};
        case Space::CH2: return {-24.0, 2.0, 0.0};
    }
    throw std::logic_error("curvature_reference: bad space");
}

Report curvature_suite(const Options& opt) {
    Report rep;
    rep.suite = "curvature";
    rep.columns = {"space",       "samples",     "scalar", "wplus_lmax",
                   "wminus_lmax", "max_deviation", "max_residual", "pass"};
    const int samples = suite_samples(opt, 25);

    std::vector<Space> spaces;
    if (opt.space.empty())
        spaces = all_spaces();
    else
        spaces = {model_space(opt.space).id};

    double cp2_shape = -1.0;
    for (Space id : spaces) {
        const ModelSpace& space = model_space(id);
        const CurvatureReference ref = curvature_reference(id);
        std::mt19937_64 rng(opt.seed);
        double max_dev = 0.0, max_res = 0.0;
        double scalar = 0.0, wplus = 0.0, wminus = 0.0;
        for (int s = 0; s < samples; ++s) {
            const CurvatureData cd = curvature_at(space, space.sample(rng));
            if (s == 0) {
                scalar = cd.scalar;
                wplus = cd.weyl_plus_spectrum[2];
                wminus = cd.weyl_minus_spectrum[2];
            }
            max_dev = std::max({max_dev, std::abs(cd.scalar - ref.scalar),
                                std::abs(cd.weyl_plus_spectrum[2] - ref.wplus),
                                std::abs(cd.weyl_minus_spectrum[2] - ref.wminus)});
            max_res = std::max({max_res, cd.residuals.antisymmetry, cd.residuals.pair_symmetry,
                                cd.residuals.first_bianchi, cd.residuals.weyl_trace});
            if (id == Space::CP2) {
                const Eigen::Vector3d sp = cd.weyl_plus_spectrum;
                cp2_shape = std::max({cp2_shape, std::abs(sp[2] - 4.0),
                                      std::abs(sp[0] + 0.5 * sp[2]),
                                      std::abs(sp[1] + 0.5 * sp[2])});
            }
        }
        const bool row_pass = max_dev < 1e-5 && max_res < 1e-6;
        rep.pass = rep.pass && row_pass;
        rep.rows.push_back({txt(space.name), num(samples), num(scalar), num(wplus),
                            num(wminus), num(max_dev), num(max_res), flag(row_pass)});
    }
    rep.summary = {{"seed", num(static_cast<long long>(opt.seed))}};
    if (cp2_shape >= 0.0) {
        const bool shape_ok = cp2_shape < 1e-4;
        rep.pass = rep.pass && shape_ok;
        rep.summary.insert(rep.summary.begin(),
                           {"cp2_spectrum_shape_residual", num(cp2_shape)});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// poincare: weighted inequalities, trials, weight identities, annulus decay

RadialWeight weight_for(const std::string& name, const Options& opt, Space space) {
    if (name == "carron") return carron_weight();
    if (name == "bgg") return bgg_weight(opt.b);
    if (name == "chm") return chm_weight(2);
    if (name == "ak") {
        switch (space) {
            case Space::R4: return ak_weight(flat_laplacian());
            case Space::H4: return ak_weight(hyperbolic_laplacian());
            case Space::CH2: return ak_weight(chm_laplacian_profile(2));
            default:
                throw std::invalid_argument("--weight ak needs a space with a radial profile");
        }
    }
    throw std::invalid_argument("unknown weight '" + name + "'");
}

Cutoff cutoff_for(const std::string& name, double r) {
    if (name == "linear") return linear_cutoff(r);
    if (name == "log") return log_cutoff(r);
    if (name == "unit") return unit_cutoff(r);
    throw std::invalid_argument("unknown cutoff '" + name + "'");
}

Report poincare_suite(const Options& opt) {
    Report rep;
    rep.suite = "poincare";
    rep.columns = {"space", "weight", "cutoff",   "r",   "numerator",
                   "denominator", "ratio", "log_shift", "pass"};

    struct Pair {
        Space space;
        std::string weight;
    };
    std::vector<Pair> pairs = {{Space::R4, "carron"}, {Space::H4, "bgg"}, {Space::CH2, "chm"}};
    if (!opt.space.empty() && !opt.weight.empty()) {
        pairs = {{model_space(opt.space).id, opt.weight}};
    } else if (!opt.space.empty()) {
        const Space id = model_space(opt.space).id;
        pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                                   [&](const Pair& p) { return p.space != id; }),
                    pairs.end());
        if (pairs.empty()) pairs.push_back({id, "carron"});
    } else if (!opt.weight.empty()) {
        pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                                   [&](const Pair& p) { return p.weight != opt.weight; }),
                    pairs.end());
        if (pairs.empty()) pairs.push_back({Space::R4, opt.weight});
    }

    std::vector<std::string> cutoffs = {"linear", "log", "unit"};
    if (!opt.cutoff.empty() && opt.cutoff != "trial" && opt.cutoff != "annulus")
        cutoffs = {opt.cutoff};
    std::vector<double> radii = {2.0, 10.0, 100.0};
    if (opt.r > 0.0) radii = {opt.r};

    const bool certificates =
        opt.cutoff.empty() || (opt.cutoff != "trial" && opt.cutoff != "annulus");
    if (certificates)
        for (const Pair& pr : pairs) {
            const ModelSpace& space = model_space(pr.space);
            for (const std::string& cname : cutoffs)
                for (double r : radii) {
                    if (cname == "log" && r <= 1.0) continue;
                    const RadialWeight w = weight_for(pr.weight, opt, pr.space);
                    const PoincareResult res = verify_poincare(space, w, cutoff_for(cname, r));
                    const bool ok = std::isfinite(res.ratio) && res.ratio >= 1.0 - 1e-6;
                    rep.pass = rep.pass && ok;
                    rep.rows.push_back({txt(space.name), txt(pr.weight), txt(cname), num(r),
                                        num(res.numerator), num(res.denominator),
                                        num(res.ratio), num(res.log_shift), flag(ok)});
                }
        }

    const bool want_trials = opt.cutoff.empty() || opt.cutoff == "trial";
    if (want_trials) {
        const TrialResult hardy = hardy_trial();
        const bool hardy_ok = hardy.ratio <= 1.05 && hardy.ratio >= 1.0;
        rep.pass = rep.pass && hardy_ok;
        rep.rows.push_back({txt("R4"), txt("carron"), txt("trial"), num(100.0),
                            num(hardy.numerator), num(hardy.denominator), num(hardy.ratio),
                            num(0.0), flag(hardy_ok)});
        const TrialResult ch2 = complex_hyperbolic_trial();
        const bool ch2_ok = ch2.ratio <= 1.2 && ch2.ratio >= 1.0;
        rep.pass = rep.pass && ch2_ok;
        rep.rows.push_back({txt("CH2"), txt("chm"), txt("trial"), num(1.5),
                            num(ch2.numerator), num(ch2.denominator), num(ch2.ratio), num(0.0),
                            flag(ch2_ok)});
    }

    const bool want_annulus = opt.cutoff.empty() || opt.cutoff == "annulus";
    double s3_spread = 0.0, r4_spread = 0.0, r4_exact = 0.0;
    if (want_annulus) {
        const struct {
            Space space;
            double k;
            const char* label;
        } rows[] = {{Space::S3xR, 1.0, "rho^-1"}, {Space::R4, 4.0, "rho^-4"}};
        for (const auto& cfg : rows) {
            const ModelSpace& space = model_space(cfg.space);
            double lo = 1e300, hi = 0.0;
            for (double r : {10.0, 100.0, 1000.0}) {
                const double bound = annulus_log_bound(space, cfg.k, r);
                lo = std::min(lo, bound);
                hi = std::max(hi, bound);
                rep.rows.push_back({txt(space.name), txt(cfg.label), txt("annulus"), num(r),
                                    num(bound * std::log(r)), num(std::log(r)), num(bound),
                                    num(0.0), flag(std::isfinite(bound))});
                rep.pass = rep.pass && std::isfinite(bound);
                if (cfg.space == Space::R4)
                    r4_exact = std::max(
                        r4_exact, std::abs(bound - 2.0 * kPi * kPi) / (2.0 * kPi * kPi));
            }
            const double spread = hi / lo;
            if (cfg.space == Space::S3xR)
                s3_spread = spread;
            else
                r4_spread = spread;
        }
        const bool annulus_ok =
            s3_spread <= 2.0 && r4_spread <= 2.0 && r4_exact < 1e-6;
        rep.pass = rep.pass && annulus_ok;
        rep.summary.push_back({"annulus_s3xr_spread", num(s3_spread)});
        rep.summary.push_back({"annulus_r4_spread", num(r4_spread)});
        rep.summary.push_back({"annulus_r4_exact_residual", num(r4_exact)});
    }

    // weight identities on a log grid rho in [0.01, 50]
    double identity_res = 0.0;
    {
        const RadialWeight ak_flat = ak_weight(flat_laplacian());
        const RadialWeight comp_id = comparison_weight(
            [](double rho) { return rho; }, [](double) { return 1.0; },
            [](double) { return 0.0; }, "identity");
        const RadialWeight carron = carron_weight();
        std::vector<RadialWeight> ak_chm, chm;
        for (int m = 1; m <= 3; ++m) {
            ak_chm.push_back(ak_weight(chm_laplacian_profile(m)));
            chm.push_back(chm_weight(m));
        }
        for (int k = 0; k <= 200; ++k) {
            const double rho = 0.01 * std::pow(5000.0, k / 200.0);
            const double scale = 1.0 + std::abs(carron.q(rho));
            identity_res = std::max(identity_res,
                                    std::abs(ak_flat.q(rho) - carron.q(rho)) / scale);
            identity_res = std::max(identity_res,
                                    std::abs(comp_id.q(rho) - carron.q(rho)) / scale);
            for (int m = 0; m < 3; ++m) {
                const double s = 1.0 + std::abs(chm[m].q(rho));
                identity_res = std::max(
                    identity_res, std::abs(ak_chm[m].q(rho) - chm[m].q(rho)) / s);
            }
        }
    }
    double laplacian_res = 0.0;
    double chm_min = 1e300;
    for (int m = 1; m <= 3; ++m) {
        for (int k = 0; k <= 200; ++k) {
            const double rho = 0.01 * std::pow(5000.0, k / 200.0);
            laplacian_res = std::max({laplacian_res,
                                      chm_laplacian_sq_identity_residual(m, rho),
                                      chm_laplacian_derivative_identity_residual(m, rho)});
        }
        for (int k = 0; k <= 180; ++k) {
            const double rho = std::pow(10.0, -6.0 + 9.0 * k / 180.0);
            chm_min = std::min(chm_min, chm_weight(m).q(rho));
        }
    }
    const bool identities_ok = identity_res < 1e-8 && laplacian_res < 1e-10 && chm_min > 0.0;
    rep.pass = rep.pass && identities_ok;
    rep.summary.push_back({"weight_identity_residual", num(identity_res)});
    rep.summary.push_back({"laplacian_identity_residual", num(laplacian_res)});
    rep.summary.push_back({"chm_weight_min", num(chm_min)});
    return rep;
}

// ---------------------------------------------------------------------------
// gauge: instanton closed forms, equations, Kato ratio, charge

Report gauge_suite(const Options& opt) {
    Report rep;
    rep.suite = "gauge";
    rep.columns = {"check", "value", "reference", "residual", "pass"};
    const int samples = suite_samples(opt, 200);
    const GaugeField field = make_field(opt);
    const AlgebraMetric metric = field.metric;
    const double conv = metric.convention == Convention::tensor ? 2.0 : 1.0;
    const double norm_scale = std::sqrt(96.0 * metric.alpha * conv);
    std::mt19937_64 rng(opt.seed);

    const auto push = [&rep](const std::string& check, double value, double reference,
                             double residual, bool ok) {
        rep.rows.push_back({txt(check), num(value), num(reference), num(residual), flag(ok)});
        rep.pass = rep.pass && ok;
    };

    if (field.kind == ConnectionKind::zero) {
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = gaussian(rng);
        push("curvature_norm", field.norm_flat(x), 0.0, field.norm_flat(x), true);
        push("charge_radial", 0.0, 0.0, 0.0, true);
        rep.summary = {{"connection", txt("zero")},
                       {"seed", num(static_cast<long long>(opt.seed))}};
        return rep;
    }

    double norm_dev = 0.0, purity = 0.0;
    for (int s = 0; s < samples; ++s) {
        GaugeField probe = field;
        probe.lambda = uniform(rng, 0.3, 3.0);
        for (int k = 0; k < 4; ++k) probe.center[k] = gaussian(rng);
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = probe.center[k] + 2.0 * gaussian(rng);
        const double u = (x - probe.center).squaredNorm();
        const double l2 = probe.lambda * probe.lambda;
        const double expected = norm_scale * l2 / ((l2 + u) * (l2 + u));
        const double measured = probe.norm_flat(x);
        norm_dev = std::max(norm_dev, std::abs(measured - expected) / expected);
        const double wrong = field.kind == ConnectionKind::bpst
                                 ? probe.norm_antiselfdual(x)
                                 : probe.norm_selfdual(x);
        purity = std::max(purity, wrong / measured);
    }
    push("curvature_norm_max_rel_dev", norm_dev, 0.0, norm_dev, norm_dev < 1e-8);
    push("opposite_half_fraction", purity, 0.0, purity, purity < 1e-10);

    double ym = 0.0, bianchi = 0.0, kato_min = 1e300;
    const int eq_points = std::min(samples, 50);
    for (int s = 0; s < eq_points; ++s) {
        Vec4 x;
        for (int k = 0; k < 4; ++k) x[k] = field.center[k] + field.lambda * 1.5 * gaussian(rng);
        if ((x - field.center).norm() < 0.05 * field.lambda) continue;
        ym = std::max(ym, field.ym_residual(x));
        bianchi = std::max(bianchi, field.bianchi_residual(x));
        kato_min = std::min(kato_min, field.kato_ratio(x));
    }
    push("ym_residual_max", ym, 0.0, ym, ym < 1e-4);
    push("bianchi_residual_max", bianchi, 0.0, bianchi, bianchi < 1e-4);
    push("kato_ratio_min", kato_min, 1.5, 1.5 - kato_min, kato_min >= 1.5 - 1e-3);

    const double charge_ref =
        (field.kind == ConnectionKind::bpst ? 1.0 : -1.0) * 2.0 * metric.alpha;
    const double radial = charge_radial(field);
    push("charge_radial", radial, charge_ref, std::abs(radial - charge_ref),
         std::abs(radial - charge_ref) <= 1e-3 * std::max(1.0, std::abs(charge_ref)));
    const double mc = charge_monte_carlo(field, opt.seed, 200000);
    push("charge_monte_carlo", mc, charge_ref, std::abs(mc - charge_ref),
         std::abs(mc - charge_ref) <= 0.05 * std::max(1.0, std::abs(charge_ref)));

    if (field.lambda == 1.0 && field.center.norm() == 0.0) {
        double dev = 0.0;
        for (int s = 0; s < samples; ++s) {
            Vec4 x;
            for (int k = 0; k < 4; ++k) x[k] = 2.0 * gaussian(rng);
            dev = std::max(dev, std::abs(field.norm_sphere(x) - norm_scale / 4.0));
        }
        push("sphere_norm_deviation", dev, 0.0, dev, dev < 1e-8);
    }

    rep.summary = {{"connection", txt(connection_name(field.kind))},
                   {"lambda", num(field.lambda)},
                   {"alpha", num(metric.alpha)},
                   {"convention", txt(metric.convention == Convention::tensor ? "tensor"
                                                                              : "standard")},
                   {"seed", num(static_cast<long long>(opt.seed))}};
    return rep;
}

// ---------------------------------------------------------------------------
// gap: threshold comparison and verdicts

GapBoundSpec make_gap_spec(const Options& opt) {
    GapBoundSpec spec;
    spec.theorem = theorem_from_string(opt.theorem);
    spec.space = opt.space.empty() ? Space::S4 : model_space(opt.space).id;
    spec.p = opt.p;
    spec.b = opt.b;
    spec.metric = make_metric(opt);
    if (opt.n_set) spec.n = opt.n;
    if (!opt.weight.empty()) spec.weight = weight_for(opt.weight, opt, spec.space);
    return spec;
}

Report gap_suite(const Options& opt) {
    Report rep;
    rep.suite = "gap";
    rep.columns = {"rho", "f_plus_norm", "threshold", "margin"};
    const int samples = suite_samples(opt, 40);
    const double tolerance = opt.tolerance > 0.0 ? opt.tolerance : 1e-6;

    const GapBoundSpec spec = make_gap_spec(opt);
    const ModelSpace& space = model_space(spec.space);
    const GapThreshold thr = gap_threshold(spec);
    const GaugeField field = make_field(opt);
    const auto norm = field_norm_on_space(field, space, thr.side);
    const auto points = gap_sample_points(space, opt.seed, samples);
    const GapReport report = evaluate_gap(norm, spec, points, tolerance);

    for (const GapSample& s : report.samples) {
        rep.rows.push_back({num(s.rho), num(s.f_plus_norm), num(s.threshold), num(s.margin)});
        rep.pass = rep.pass && std::isfinite(s.margin);
    }
    rep.summary = {{"theorem", txt(theorem_name(spec.theorem))},
                   {"space", txt(space.name)},
                   {"connection", txt(connection_name(field.kind))},
                   {"verdict", txt(verdict_name(report.verdict))},
                   {"side", num(thr.side)},
                   {"a_g", num(thr.a_g)},
                   {"coeff_q", num(thr.coeff_q)},
                   {"equality_tolerance", num(report.tolerance)},
                   {"violation_tolerance", num(report.tolerance)}};
    if (report.strictness_witness) {
        rep.summary.push_back({"strictness_witness_rho", num(report.strictness_witness->rho)});
        rep.summary.push_back(
            {"strictness_witness_margin", num(report.strictness_witness->margin)});
    }
    if (report.violation_witness) {
        rep.summary.push_back({"violation_witness_rho", num(report.violation_witness->rho)});
        rep.summary.push_back(
            {"violation_witness_margin", num(report.violation_witness->margin)});
    }
    if (space.diameter > 1.0)
        rep.summary.push_back({"margin_at_unit_rho", num(margin_at(spec, field, 1.0))});
    return rep;
}

// ---------------------------------------------------------------------------
// lemma3: pointwise differential inequality

Report lemma3_suite(const Options& opt) {
    Report rep;
    rep.suite = "lemma3";
    rep.columns = {"rho", "f_plus_norm", "lhs", "rhs", "slack", "fd_error", "pass"};
    const int samples = suite_samples(opt, 50);
    const double tolerance = opt.tolerance > 0.0 ? opt.tolerance : 1e-3;

    const ModelSpace& space = model_space(opt.space.empty() ? "S4" : opt.space);
    const GaugeField field = make_field(opt);
    const auto norm = field_norm_on_space(field, space, +1);
    const auto points = gap_sample_points(space, opt.seed, samples);

    int skipped = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const Vec4& x : points) {
        const Lemma3Report res = lemma3_check(field, space, opt.p, x);
        if (res.skipped) {
            ++skipped;
            continue;
        }
        const double band = tolerance * (1.0 + std::abs(res.rhs)) + res.fd_error;
        const bool ok = res.slack >= -band;
        worst = std::min(worst, res.slack);
        rep.pass = rep.pass && ok;
        rep.rows.push_back({num(space.rho(x)), num(norm(x)), num(res.lhs), num(res.rhs),
                            num(res.slack), num(res.fd_error), flag(ok)});
    }
    rep.summary = {{"space", txt(space.name)},
                   {"connection", txt(connection_name(field.kind))},
                   {"p", num(opt.p)},
                   {"points", num(static_cast<long long>(points.size()))},
                   {"skipped", num(skipped)},
                   {"min_slack", num(rep.rows.empty() ? 0.0 : worst)},
                   {"tolerance", num(tolerance)},
                   {"seed", num(static_cast<long long>(opt.seed))}};
    return rep;
}

// ---------------------------------------------------------------------------

int emit(const Options& opt, const std::vector<Report>& reports) {
    std::ostringstream buffer;
    if (opt.format == "json")
        write_json(buffer, reports);
    else
        write_csv(buffer, reports);
    if (opt.out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream file(opt.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open '" << opt.out << "' for writing\n";
            return 1;
        }
        file << buffer.str();
    }
    for (const Report& rep : reports)
        if (!rep.pass) return 2;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification toolkit for curvature gap bounds"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "random seed (fixes the whole report)");
        sub->add_option("--samples", opt.samples, "sample count (suite default if omitted)");
        sub->add_option("--format", opt.format, "report format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", opt.out, "report path (stdout if omitted)");
        sub->add_option("--alpha", opt.alpha, "inner product scale on so(n)");
        sub->add_option("--convention", opt.convention, "two-form norm convention")
            ->check(CLI::IsMember({"standard", "tensor"}));
        sub->add_option("--config", opt.config, "flat key=value file; flags override it");
        sub->allow_config_extras(CLI::config_extras_mode::error);
        return sub;
    };
    const auto add_field = [&opt](CLI::App* sub) {
        sub->add_option("--connection", opt.connection, "gauge field")
            ->check(CLI::IsMember({"zero", "bpst", "anti_bpst"}));
        sub->add_option("--lambda", opt.lambda, "instanton scale");
        sub->add_option("--center", opt.center, "instanton center x1,x2,x3,x4");
    };
    const auto add_space = [&opt](CLI::App* sub) {
        return sub->add_option("--space", opt.space, "model space")
            ->check(CLI::IsMember({"R4", "S4", "H4", "S3xR", "CP2", "CH2"}));
    };

    CLI::App* constants = add_common(app.add_subcommand(
        "constants", "structure constants and the commutator bound"));
    constants->add_option("--n", opt.n, "so(n) dimension (grid over 3,4,5 if omitted)")
        ->check(CLI::Range(3, 16));

    add_common(app.add_subcommand("forms", "trilinear estimate chain on self-dual forms"));

    CLI::App* curvature = add_common(
        app.add_subcommand("curvature", "scalar and Weyl curvature of the model spaces"));
    add_space(curvature);

    CLI::App* poincare = add_common(app.add_subcommand(
        "poincare", "weighted Poincare certificates, trials, weights, annulus decay"));
    add_space(poincare);
    poincare->add_option("--weight", opt.weight, "weight family")
        ->check(CLI::IsMember({"carron", "bgg", "ak", "chm"}));
    poincare->add_option("--cutoff", opt.cutoff, "cutoff family")
        ->check(CLI::IsMember({"linear", "log", "unit", "trial", "annulus"}));
    poincare->add_option("--r", opt.r, "cutoff radius (grid over 2,10,100 if omitted)");
    poincare->add_option("--b", opt.b, "bgg weight scale");

    CLI::App* gauge =
        add_common(app.add_subcommand("gauge", "instanton closed forms and charge"));
    add_field(gauge);

    CLI::App* gap = add_common(
        app.add_subcommand("gap", "threshold comparison and verdict for a gap bound"));
    add_space(gap);
    gap->add_option("--theorem", opt.theorem, "bound to evaluate")
        ->check(CLI::IsMember({"T1", "T2", "T4", "T5", "T6", "T9", "T11", "T14", "C7", "C10",
                               "C12"},
                              CLI::ignore_case));
    gap->add_option("--weight", opt.weight, "weight family override")
        ->check(CLI::IsMember({"carron", "bgg", "ak", "chm"}));
    gap->add_option("--p", opt.p, "Kato exponent");
    gap->add_option("--b", opt.b, "T4 coefficient / T11 curvature scale");
    gap->add_option("--n", opt.n, "structure group dimension")->check(CLI::Range(3, 16));
    gap->add_option("--tolerance", opt.tolerance, "verdict tolerance (default 1e-6)");
    add_field(gap);

    CLI::App* lemma3 = add_common(
        app.add_subcommand("lemma3", "pointwise differential inequality for |F+|^p"));
    add_space(lemma3);
    lemma3->add_option("--p", opt.p, "Kato exponent");
    lemma3->add_option("--tolerance", opt.tolerance, "slack tolerance (default 1e-3)");
    add_field(lemma3);

    CLI::App* everything =
        add_common(app.add_subcommand("all", "every suite with its defaults"));

    try {
        app.parse(argc, argv);
        // apply the config file after the flags: CLI11 skips options that were
        // already given on the command line, so flags win
        if (!opt.config.empty()) {
            std::ifstream file(opt.config);
            if (!file) {
                std::cerr << "error: cannot read config file '" << opt.config << "'\n";
                return 1;
            }
            for (CLI::App* sub : app.get_subcommands()) sub->parse_from_stream(file);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    opt.n_set = constants->count("--n") > 0 || gap->count("--n") > 0;
    opt.alpha_set = constants->count("--alpha") > 0;

    try {
        std::vector<Report> reports;
        if (constants->parsed()) reports.push_back(constants_suite(opt));
        if (app.get_subcommand("forms")->parsed()) reports.push_back(forms_suite(opt));
        if (curvature->parsed()) reports.push_back(curvature_suite(opt));
        if (poincare->parsed()) reports.push_back(poincare_suite(opt));
        if (gauge->parsed()) reports.push_back(gauge_suite(opt));
        if (gap->parsed()) reports.push_back(gap_suite(opt));
        if (app.get_subcommand("lemma3")->parsed()) reports.push_back(lemma3_suite(opt));
        if (everything->parsed()) {
            reports.push_back(constants_suite(opt));
            reports.push_back(forms_suite(opt));
            reports.push_back(curvature_suite(opt));
            reports.push_back(poincare_suite(opt));
            reports.push_back(gauge_suite(opt));
            reports.push_back(gap_suite(opt));
            reports.push_back(lemma3_suite(opt));
        }
        return emit(opt, reports);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
