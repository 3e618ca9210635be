// Python bindings: the main operations of the core library, with strings for
// the enumerated choices and dicts for the structured results.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "gapcheck/algebra.hpp"
#include "gapcheck/curvature.hpp"
#include "gapcheck/gap.hpp"
#include "gapcheck/gauge_field.hpp"
#include "gapcheck/model_space.hpp"
#include "gapcheck/two_form.hpp"
#include "gapcheck/weights.hpp"

namespace py = pybind11;
using namespace gapcheck;

namespace {

AlgebraMetric make_metric(double alpha, const std::string& convention) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (convention != "standard" && convention != "tensor")
        throw std::invalid_argument("convention must be 'standard' or 'tensor'");
    return {alpha, convention == "tensor" ? Convention::tensor : Convention::standard};
}

GaugeField make_field(const std::string& connection, double lambda,
                      const std::optional<std::array<double, 4>>& center, double alpha,
                      const std::string& convention) {
    GaugeField field;
    field.kind = connection_kind(connection);
    field.lambda = lambda;
    if (center) field.center = Vec4((*center)[0], (*center)[1], (*center)[2], (*center)[3]);
    field.metric = make_metric(alpha, convention);
    return field;
}

RadialWeight make_weight(const std::string& name, double b, int m) {
    if (name == "carron") return carron_weight();
    if (name == "bgg") return bgg_weight(b);
    if (name == "chm") return chm_weight(m);
    if (name == "ak") return ak_weight(flat_laplacian());
    throw std::invalid_argument("unknown weight '" + name + "'");
}

Cutoff make_cutoff(const std::string& name, double r) {
    if (name == "linear") return linear_cutoff(r);
    if (name == "log") return log_cutoff(r);
    if (name == "unit") return unit_cutoff(r);
    throw std::invalid_argument("unknown cutoff '" + name + "'");
}

GapBoundSpec make_spec(const std::string& theorem, const std::string& space, double p,
                       double b, const std::optional<std::string>& weight, double alpha,
                       const std::string& convention, int n) {
    GapBoundSpec spec;
    spec.theorem = theorem_from_string(theorem);
    spec.space = model_space(space).id;
    spec.p = p;
    spec.b = b;
    spec.metric = make_metric(alpha, convention);
    spec.n = n;
    if (weight) spec.weight = make_weight(*weight, b, 2);
    return spec;
}

}  // namespace

PYBIND11_MODULE(_gapcheck, m) {
    m.doc() = "numerical verification toolkit for curvature gap bounds";

    m.def(
        "gap_constant",
        [](int n, double alpha, const std::string& convention) {
            return gap_constant(n, make_metric(alpha, convention));
        },
        py::arg("n"), py::arg("alpha") = 0.5, py::arg("convention") = "standard",
        "sharp constant a_G in the cubic trilinear bound for so(n)");

    m.def(
        "commutator_constant",
        [](int n, double alpha, const std::string& convention) {
            return commutator_constant(n, make_metric(alpha, convention));
        },
        py::arg("n"), py::arg("alpha") = 0.5, py::arg("convention") = "standard",
        "sharp constant c in |[M, N]| <= c |M| |N| on so(n)");

    m.def(
        "equality_ratio",
        [](double alpha, const std::string& convention) {
            const AlgebraMetric metric = make_metric(alpha, convention);
            const AlgebraTwoForm f = equality_configuration();
            const double nf = norm(f, metric);
            return std::abs(trilinear(f, metric)) / (gap_constant(4, metric) * nf * nf * nf);
        },
        py::arg("alpha") = 0.5, py::arg("convention") = "standard",
        "|trilinear| / (a_G |F|^3) for the distinguished saturating configuration");

    m.def(
        "sharpness_search",
        [](int starts, int iterations, std::uint64_t seed, double alpha,
           const std::string& convention) {
            std::mt19937_64 rng(seed);
            return sharpness_search(make_metric(alpha, convention), starts, iterations, rng);
        },
        py::arg("starts") = 6, py::arg("iterations") = 2000, py::arg("seed") = 2024,
        py::arg("alpha") = 0.5, py::arg("convention") = "standard",
        "supremum of |trilinear| / (a_G |F|^3) over random starts with local refinement");

    m.def(
        "curvature",
        [](const std::string& space_name, double rho) {
            const ModelSpace& space = model_space(space_name);
            const CurvatureData cd = curvature_at(space, space.point_at_rho(rho));
            py::dict out;
            out["space"] = space.name;
            out["scalar"] = cd.scalar;
            out["weyl_plus_spectrum"] =
                std::array<double, 3>{cd.weyl_plus_spectrum[0], cd.weyl_plus_spectrum[1],
                                      cd.weyl_plus_spectrum[2]};
            out["weyl_minus_spectrum"] =
                std::array<double, 3>{cd.weyl_minus_spectrum[0], cd.weyl_minus_spectrum[1],
                                      cd.weyl_minus_spectrum[2]};
            out["max_residual"] =
                std::max({cd.residuals.antisymmetry, cd.residuals.pair_symmetry,
                          cd.residuals.first_bianchi, cd.residuals.weyl_trace});
            return out;
        },
        py::arg("space"), py::arg("rho") = 0.7,
        "scalar curvature and Weyl spectra of a model space at radius rho");

    m.def(
        "weight_value",
        [](const std::string& name, double rho, double b, int m) {
            return make_weight(name, b, m).q(rho);
        },
        py::arg("name"), py::arg("rho"), py::arg("b") = 1.0, py::arg("m") = 2,
        "radial weight q(rho) for a named weight family");

    m.def(
        "poincare_ratio",
        [](const std::string& space_name, const std::string& weight,
           const std::string& cutoff, double r, double b, int m) {
            const PoincareResult res = verify_poincare(
                model_space(space_name), make_weight(weight, b, m), make_cutoff(cutoff, r));
            py::dict out;
            out["numerator"] = res.numerator;
            out["denominator"] = res.denominator;
            out["ratio"] = res.ratio;
            return out;
        },
        py::arg("space"), py::arg("weight") = "carron", py::arg("cutoff") = "linear",
        py::arg("r") = 10.0, py::arg("b") = 1.0, py::arg("m") = 2,
        "gradient-to-weight quadrature ratio certifying the weighted inequality");

    m.def(
        "annulus_log_bound",
        [](const std::string& space_name, double k, double r) {
            return annulus_log_bound(model_space(space_name), k, r);
        },
        py::arg("space"), py::arg("k"), py::arg("r"),
        "integral of rho^-k over the annulus B(r^2) minus B(r), divided by log r");

    m.def(
        "instanton_norm",
        [](const std::array<double, 4>& x, double lambda,
           const std::optional<std::array<double, 4>>& center, const std::string& connection,
           double alpha, const std::string& convention) {
            const GaugeField field = make_field(connection, lambda, center, alpha, convention);
            return field.norm_flat(Vec4(x[0], x[1], x[2], x[3]));
        },
        py::arg("x"), py::arg("lambda") = 1.0, py::arg("center") = std::nullopt,
        py::arg("connection") = "bpst", py::arg("alpha") = 0.5,
        py::arg("convention") = "standard", "curvature norm |F|(x) on the flat chart");

    m.def(
        "kato_ratio",
        [](const std::array<double, 4>& x, double lambda,
           const std::optional<std::array<double, 4>>& center) {
            const GaugeField field = make_field("bpst", lambda, center, 0.5, "standard");
            return field.kato_ratio(Vec4(x[0], x[1], x[2], x[3]));
        },
        py::arg("x"), py::arg("lambda") = 1.0, py::arg("center") = std::nullopt,
        "|dF|^2 / |d|F||^2 at a non-critical point");

    m.def(
        "charge",
        [](const std::string& connection, double lambda,
           const std::optional<std::array<double, 4>>& center, double alpha,
           const std::string& convention) {
            return charge_radial(make_field(connection, lambda, center, alpha, convention));
        },
        py::arg("connection") = "bpst", py::arg("lambda") = 1.0,
        py::arg("center") = std::nullopt, py::arg("alpha") = 0.5,
        py::arg("convention") = "standard",
        "topological charge from the exact radial profile integral");

    m.def(
        "threshold",
        [](const std::string& theorem, const std::string& space, double rho, double p,
           double b, const std::optional<std::string>& weight, double alpha,
           const std::string& convention, int n) {
            return gap_threshold(make_spec(theorem, space, p, b, weight, alpha, convention, n))
                .value(rho);
        },
        py::arg("theorem"), py::arg("space"), py::arg("rho"), py::arg("p") = 0.5,
        py::arg("b") = 1.0, py::arg("weight") = std::nullopt, py::arg("alpha") = 0.5,
        py::arg("convention") = "standard", py::arg("n") = 4,
        "gap threshold at radius rho for a stated bound on a model space");

    m.def(
        "gap_verdict",
        [](const std::string& theorem, const std::string& space,
           const std::string& connection, double lambda,
           const std::optional<std::array<double, 4>>& center, double p, double b,
           const std::optional<std::string>& weight, double alpha,
           const std::string& convention, int n, std::uint64_t seed, int samples,
           double tolerance) {
            const GapBoundSpec spec =
                make_spec(theorem, space, p, b, weight, alpha, convention, n);
            const ModelSpace& ms = model_space(spec.space);
            const GapThreshold thr = gap_threshold(spec);
            const GaugeField field = make_field(connection, lambda, center, alpha, convention);
            const auto norm_fn = field_norm_on_space(field, ms, thr.side);
            const GapReport report =
                evaluate_gap(norm_fn, spec, gap_sample_points(ms, seed, samples), tolerance);
            const auto sample_dict = [](const GapSample& s) {
                py::dict d;
                d["rho"] = s.rho;
                d["f_plus_norm"] = s.f_plus_norm;
                d["threshold"] = s.threshold;
                d["margin"] = s.margin;
                return d;
            };
            py::dict out;
            out["verdict"] = std::string(verdict_name(report.verdict));
            out["side"] = thr.side;
            out["a_g"] = thr.a_g;
            out["coeff_q"] = thr.coeff_q;
            out["tolerance"] = report.tolerance;
            py::list rows;
            for (const GapSample& s : report.samples) rows.append(sample_dict(s));
            out["samples"] = rows;
            out["strictness_witness"] = report.strictness_witness
                                            ? py::object(sample_dict(*report.strictness_witness))
                                            : py::object(py::none());
            out["violation_witness"] = report.violation_witness
                                           ? py::object(sample_dict(*report.violation_witness))
                                           : py::object(py::none());
            return out;
        },
        py::arg("theorem"), py::arg("space"), py::arg("connection") = "bpst",
        py::arg("lambda") = 1.0, py::arg("center") = std::nullopt, py::arg("p") = 0.5,
        py::arg("b") = 1.0, py::arg("weight") = std::nullopt, py::arg("alpha") = 0.5,
        py::arg("convention") = "standard", py::arg("n") = 4, py::arg("seed") = 2024,
        py::arg("samples") = 40, py::arg("tolerance") = 1e-6,
        "verdict and per-sample margins for a gap bound against a gauge field");

    m.def(
        "pointwise_inequality",
        [](const std::string& space_name, double rho, double p,
           const std::string& connection, double lambda,
           const std::optional<std::array<double, 4>>& center) {
            const ModelSpace& space = model_space(space_name);
            const GaugeField field = make_field(connection, lambda, center, 0.5, "standard");
            const Lemma3Report res = lemma3_check(field, space, p, space.point_at_rho(rho));
            py::dict out;
            out["lhs"] = res.lhs;
            out["rhs"] = res.rhs;
            out["slack"] = res.slack;
            out["fd_error"] = res.fd_error;
            out["skipped"] = res.skipped;
            return out;
        },
        py::arg("space"), py::arg("rho"), py::arg("p") = 0.5, py::arg("connection") = "bpst",
        py::arg("lambda") = 1.0, py::arg("center") = std::nullopt,
        "both sides of the pointwise differential inequality for |F+|^p at radius rho");

    m.attr("spaces") = std::array<const char*, 6>{"R4", "S4", "H4", "S3xR", "CP2", "CH2"};
    m.attr("theorems") = std::array<const char*, 11>{"T1", "T2", "T4", "T5", "T6", "T9",
                                                     "T11", "T14", "C7", "C10", "C12"};
}
