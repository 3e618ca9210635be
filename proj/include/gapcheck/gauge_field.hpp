#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>

#include "gapcheck/algebra.hpp"
#include "gapcheck/two_form.hpp"

namespace gapcheck {

enum class ConnectionKind { bpst, anti_bpst, zero };

ConnectionKind connection_kind(const std::string& name);
std::string connection_name(ConnectionKind kind);

// The one-instanton connection in regular gauge on R^4, concentrated at
// `center` with scale `lambda`: A_mu = -(eta^a_{mu nu} z_nu / (lambda^2 +
// |z|^2)) E_a over the (anti-)self-dual generator triple. Its curvature is
// F_{mu nu} = (2 lambda^2/(lambda^2 + |z|^2)^2) eta^a_{mu nu} E_a, entirely
// (anti-)self-dual, with |F| = sqrt(96 alpha) lambda^2/(lambda^2 + |z|^2)^2.
struct GaugeField {
    ConnectionKind kind = ConnectionKind::bpst;
    double lambda = 1.0;
    Eigen::Vector4d center = Eigen::Vector4d::Zero();
    AlgebraMetric metric;

    std::array<SkewMatrix, 4> connection(const Eigen::Vector4d& x) const;
    AlgebraTwoForm curvature(const Eigen::Vector4d& x) const;
    // F = dA + [A, A] assembled from central differences of the connection;
    // cross-checks the closed form.
    AlgebraTwoForm curvature_fd(const Eigen::Vector4d& x, double h = 1e-4) const;

    double norm_flat(const Eigen::Vector4d& x) const;
    double norm_selfdual(const Eigen::Vector4d& x) const;
    double norm_antiselfdual(const Eigen::Vector4d& x) const;
    // Pointwise norm after pulling the field back to the round sphere of
    // scalar curvature 12 through the conformal chart g = (2/(1+|x|^2))^2 d:
    // two-form norms scale by the inverse square of the conformal factor.
    double norm_sphere(const Eigen::Vector4d& x) const;

    // max_nu |sum_mu D_mu F_{mu nu}| — the Yang-Mills equations' defect.
    double ym_residual(const Eigen::Vector4d& x, double h = 1e-4) const;
    // max over index triples of |D_{[mu} F_{nu rho]}|.
    double bianchi_residual(const Eigen::Vector4d& x, double h = 1e-4) const;
    // |DF|^2 / |d|F||^2, defined away from critical points of |F|; the
    // refined Kato inequality for Yang-Mills fields bounds it below by 3/2.
    double kato_ratio(const Eigen::Vector4d& x, double h = 1e-4) const;
};

// (1/8 pi^2) int (|F+|^2 - |F-|^2) dvol in standard-convention norms, via the
// radial profile: +-1 for the unit (anti-)instanton at alpha = 1/2.
double charge_radial(const GaugeField& field);

// Same integral by uniform Monte-Carlo over the ball of radius 6 lambda
// around the center (which holds all but ~2.3e-3 of the charge).
double charge_monte_carlo(const GaugeField& field, std::uint64_t seed,
                          int samples = 1000000);

}  // namespace gapcheck
