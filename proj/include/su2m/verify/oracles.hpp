#pragma once

#include <random>
#include <vector>

#include "su2m/measurement.hpp"
#include "su2m/numerics.hpp"
#include "su2m/spinrep.hpp"

// Reference computations that take a different route from the library code they check.
namespace su2m::verify {

using Rng = std::mt19937_64;

CVector random_vector(int dim, Rng& rng);  // unit norm, Gaussian entries
CMatrix random_hermitian(int dim, Rng& rng);
ProbeState random_state(int two_j, Rng& rng, bool tensor = false);

// Dicke embedding of a symmetric state into (C^2)^{(x) N}; qubit 0 is the most significant bit.
CVector dicke_embedding(const ProbeState& state);

// rho^(1), rho^(2) by partial trace of the embedded state.
QubitMarginals brute_force_marginals(const ProbeState& state);

// 2 x Hessian of 1 - |<psi(theta)|psi(theta + d)>|^2 by central differences.
RMatrix fidelity_qfim(const ProbeState& state, const Vec3& theta, double step = 1e-4);

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// A^(j) coefficients from quadrature of int_0^1 e^{i a theta.J} J_j e^{-i a theta.J} da in the spin-J rep.
std::array<Vec3, 3> quadrature_a_vectors(const Vec3& theta, int two_j = 4, int points = 40);

// Central finite differences of outcome probabilities, then sum dp dp^T / p.
RMatrix finite_difference_cfi(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta,
                              double step = 1e-5);

// The six coherent-state prism superposition built from explicit group-action phases.
CVector prism_six_term(const SpinRep& rep, double xi);

// SO(3) rotation by |theta| about theta/|theta| (Rodrigues).
Eigen::Matrix3d rodrigues(const Vec3& theta);

// Polar and azimuthal angles of a unit vector, and back.
Vec3 unit_vector(double theta, double phi);
void angles(const Vec3& n, double& theta, double& phi);

// |<a|b>| up to global phase, as max entry difference after phase alignment.
double phase_aligned_distance(const CVector& a, const CVector& b);

}  // namespace su2m::verify
