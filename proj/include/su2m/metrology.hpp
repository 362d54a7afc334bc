#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "su2m/numerics.hpp"
#include "su2m/spinrep.hpp"

namespace su2m {

struct ConditionReport {
  Vec3 first_moments = Vec3::Zero();
  Eigen::Matrix3d cross_moments = Eigen::Matrix3d::Zero();  // symmetrized, zero diagonal
  Vec3 variances = Vec3::Zero();                            // <J_i^2>
  double target_variance = 0.0;                             // J(J+1)/3
  double max_residual = 0.0;
  double weak_commutativity = 0.0;                          // max |Im <J_i J_l>|
};

ConditionReport conditions_from_moments(const MomentTable& moments, double casimir);
ConditionReport check_conditions(const SpinRep& rep, const ProbeState& state);
ConditionReport check_conditions(const ProbeState& state);

// <J_x>, <J_y>, <J_z>, sqrt2 * cross (xy, xz, yz), <J_i^2> - target: squared sum is R(c).
Eigen::Matrix<double, 9, 1> condition_residual_vector(const MomentTable& moments, double casimir);

double sinc(double x);

struct AMatrixSet {
  Vec3 theta = Vec3::Zero();
  std::array<Vec3, 3> a_vectors;  // A^(j) = a_vectors[j] . J
};

AMatrixSet a_matrices(const Vec3& theta);

struct Qfim {
  RVector theta;
  RMatrix matrix;
};

// F_jk = 4 A^(j) . Cov(J) . A^(k), Cov from the initial state.
Qfim qfim(const SpinRep& rep, const ProbeState& state, const Vec3& theta);
Qfim qfim(const ProbeState& state, const Vec3& theta);

// 4 Re[<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>]
RMatrix pure_state_qfim(const CVector& psi, const std::vector<CVector>& dpsi);

// tr F^{-1}; throws SingularQfim when the smallest eigenvalue is below threshold.
double trace_inverse(const RMatrix& f, double threshold = 1e-10);

double optimal_crb_floor(int n);                 // 9 / (N(N+2))
double optimal_scalar_curve(double t, int n);    // (3 + 6/sinc^2(t/2)) / (N(N+2))

struct CrbPoint {
  double t = 0.0;
  double trace_inv = 0.0;  // NaN when singular
  double min_eig = 0.0;
  bool singular = false;
};

std::vector<CrbPoint> scalar_crb_curve(const ProbeState& state, const Vec3& direction,
                                       const std::vector<double>& t_grid);

std::vector<double> linear_grid(double t0, double t1, int points);
std::vector<double> log_grid(double t0, double t1, int points);

// psi_xi(theta) = exp(-i (theta - xi) . J) psi and its exact theta-derivatives.
struct ShiftedProbe {
  CVector psi;
  std::array<CVector, 3> dpsi;
};

ShiftedProbe shifted_probe(const SpinRep& rep, const ProbeState& state, const Vec3& xi, const Vec3& theta);
Qfim shifted_qfim(const SpinRep& rep, const ProbeState& state, const Vec3& xi, const Vec3& theta);
Qfim shifted_qfim(const ProbeState& state, const Vec3& xi, const Vec3& theta);

// Max entry deviation of qfim(V psi, theta) from qfim(psi, theta) over random V and 5 random theta.
double su2_invariance_check(const ProbeState& state, int trials, std::uint64_t seed = 7);

// Evolved state and its gradient -i U(theta) A^(j)(theta) psi.
struct EvolvedState {
  CVector psi;
  std::array<CVector, 3> dpsi;
};

EvolvedState evolve_with_gradient(const SpinRep& rep, const ProbeState& state, const Vec3& theta);

}  // namespace su2m
