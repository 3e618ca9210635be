#pragma once

#include <Eigen/Dense>
#include <array>

#include "gapcheck/model_space.hpp"

namespace gapcheck {

using Tensor4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

// Max-abs violations of the identities a Levi-Civita curvature tensor must
// satisfy; all should sit at rounding level for the catalog metrics.
struct CurvatureResiduals {
    double antisymmetry = 0.0;   // R_ijkl + R_jikl, R_ijkl + R_ijlk
    double pair_symmetry = 0.0;  // R_ijkl - R_klij
    double first_bianchi = 0.0;  // R_ijkl + R_iklj + R_iljk
    double weyl_trace = 0.0;     // sum_b W_abcb
};

// Curvature of a model space at a chart point, expressed in an orthonormal
// frame. Sign convention: the unit round sphere has R_ijkl =
// delta_ik delta_jl - delta_il delta_jk and scalar curvature +12.
struct CurvatureData {
    Vec4 point;
    Mat4 metric;  // chart components at the point
    Mat4 frame;   // columns = orthonormal frame vectors in chart coordinates
    Tensor4 riemann{};
    Mat4 ricci;
    double scalar = 0.0;
    // Weyl halves as 3x3 symmetric operators on the oriented orthonormal
    // bases (e01 +- e23, e02 -+ e13, e03 +- e12)/sqrt(2) of Lambda^2_{+-}.
    Eigen::Matrix3d weyl_plus;
    Eigen::Matrix3d weyl_minus;
    Eigen::Vector3d weyl_plus_spectrum;   // ascending
    Eigen::Vector3d weyl_minus_spectrum;  // ascending
    CurvatureResiduals residuals;
};

// Exact metric derivatives through second-order jets.
CurvatureData curvature_at(const ModelSpace& space, const Vec4& x);

// Same pipeline with central-difference metric derivatives (Richardson on the
// second derivatives); slower and less accurate, kept as a cross-check.
CurvatureData curvature_at_fd(const ModelSpace& space, const Vec4& x, double h = 1e-3);

// Eigenvalues of a symmetric 3x3 matrix in ascending order, by the
// trigonometric closed form.
Eigen::Vector3d symmetric_eigenvalues(const Eigen::Matrix3d& m);

double lambda_max(const Eigen::Matrix3d& m);

}  // namespace gapcheck
