#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gapcheck/jet.hpp"

namespace gapcheck {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using JetMat4 = std::array<std::array<Jet4, 4>, 4>;

enum class Space { R4, S4, H4, S3xR, CP2, CH2 };

enum class VolumeGrowth { finite, polynomial, exponential };

// A model geometry in a fixed chart: metric components (plain and jet-valued
// for exact derivatives), the distance-to-base-point profile, the volume
// density J with vol(B(r)) = int_0^r J, and the radial Laplacian profile.
struct ModelSpace {
    Space id;
    std::string name;
    double diameter;  // infinity when noncompact
    VolumeGrowth growth;
    double sectional_min, sectional_max;
    std::function<Mat4(const Vec4&)> metric;
    std::function<JetMat4(const Vec4&)> metric_jet;
    std::function<bool(const Vec4&)> in_chart;
    std::function<Vec4(std::mt19937_64&)> sample;
    std::function<double(const Vec4&)> rho;
    std::function<Vec4(double)> point_at_rho;  // a chart point at given distance
    std::function<double(double)> volume_density;
    std::function<double(double)> log_volume_density;
    std::function<double(double)> laplacian_rho;
};

const ModelSpace& model_space(Space id);
const ModelSpace& model_space(const std::string& name);
const std::vector<Space>& all_spaces();

double ball_volume(const ModelSpace& space, double r, double tol = 1e-10);

// int_{B(r^2) \ B(r)} rho^{-k} J drho / log(r), the annulus decay functional.
double annulus_log_bound(const ModelSpace& space, double k, double r, double tol = 1e-10);

// Radial profile identities for the complex-hyperbolic family CH^m (m >= 1),
// where lap = 2(m-1) coth(rho) + 2 coth(2 rho):
//   lap^2 = 4 m^2 + 4 m(m-1)/sinh^2(rho) + 4/sinh^2(2 rho)
//   <grad rho, grad lap> = d(lap)/d(rho) = -2(m-1)/sinh^2(rho) - 4/sinh^2(2 rho)
// The residuals compare two independent evaluation routes (expanded closed
// form vs. coth algebra / forward-mode differentiation) and sit at rounding
// level.
double chm_laplacian(int m, double rho);
double chm_laplacian_derivative(int m, double rho);
double chm_laplacian_sq_identity_residual(int m, double rho);
double chm_laplacian_derivative_identity_residual(int m, double rho);

double log_sinh(double x);

}  // namespace gapcheck
