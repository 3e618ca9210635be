#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>

namespace gapcheck {

using SkewMatrix = Eigen::MatrixXd;

// Which norm normalization a report uses for curvature two-forms: "standard"
// sums each unordered index pair once, "tensor" sums over ordered pairs and is
// larger by sqrt(2). The Lie algebra inner product below is the same in both.
enum class Convention { standard, tensor };

// Inner product on so(n): <M,N> = alpha * sum_{a,b} M_ab N_ab. alpha = 1/2
// makes the standard basis (one +1/-1 pair per matrix) orthonormal.
struct AlgebraMetric {
    double alpha = 0.5;
    Convention convention = Convention::standard;
};

double inner(const SkewMatrix& m, const SkewMatrix& n, const AlgebraMetric& metric);
double norm(const SkewMatrix& m, const AlgebraMetric& metric);
SkewMatrix bracket(const SkewMatrix& m, const SkewMatrix& n);

// Sharp constant c with |[M,N]| <= c |M| |N| on so(n): 1/sqrt(2 alpha) for
// n = 3, 1/sqrt(alpha) for n >= 4. Attained on so(3) by orthogonal rotation
// generators.
double commutator_constant(int n, const AlgebraMetric& metric);

// Structure constant of the cubic curvature bound. Standard convention:
// 2/sqrt(3 alpha) for n = 3, 2 sqrt(2)/sqrt(3 alpha) for n >= 4; the tensor
// convention values are smaller by sqrt(2).
double gap_constant(int n, const AlgebraMetric& metric);

// Rotation generators of so(3) with [L1,L2] = L3 cyclically; unit norm at
// alpha = 1/2.
std::array<SkewMatrix, 3> so3_generators();

// Self-dual generator triple in so(4) (component pattern M12 = M34,
// M13 = -M24, M14 = M23), satisfying [E_a, E_b] = -2 eps_abc E_c.
std::array<SkewMatrix, 3> selfdual_generators();
std::array<SkewMatrix, 3> antiselfdual_generators();

// su(2) basis T_a = -E_a/2 inside so(4): [T_a,T_b] = +eps_abc T_c, matching
// the so(3) basis bracket.
std::array<SkewMatrix, 3> su2_generators();

SkewMatrix random_skew(int n, std::mt19937_64& rng, double scale = 1.0);

// Deterministic uniforms/normals on top of mt19937_64, so reports are
// byte-identical across standard library implementations.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);
double gaussian(std::mt19937_64& rng);

}  // namespace gapcheck
