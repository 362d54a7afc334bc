#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace su2m {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;

// Defaults; callers may pass their own.
struct Tolerances {
  double physics = 1e-10;
  double linalg = 1e-12;
};

struct HermitianEig {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // columns
};

// Largest entry of |A - A^dagger|.
double hermiticity_defect(const CMatrix& a);

// Throws NotHermitian when the defect exceeds tol * max(1, max|A_ij|).
HermitianEig herm_eig(const CMatrix& a, double tol = 1e-12);

// exp(-i t H) = V exp(-i t lambda) V^dagger
CMatrix unitary_exp(const CMatrix& h, double t);
CMatrix unitary_exp(const HermitianEig& eig, double t);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

// Trace out every subsystem not listed in keep. keep must be sorted and unique.
CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims, const std::vector<int>& keep);

double max_abs(const CMatrix& a);
double max_abs(const RMatrix& a);

// Unitary defect max|U^dagger U - I|.
double unitarity_defect(const CMatrix& u);

struct SmallInverse {
  RMatrix inverse;
  RVector eigenvalues;  // of the (symmetrized) input, ascending
  double min_eig = 0.0;
  double condition = 0.0;  // max|eig| / min|eig|, inf if singular
  bool singular = false;
};

// Inverse of a small real symmetric matrix; singular when min eigenvalue < threshold.
SmallInverse invert_symmetric(const RMatrix& m, double singular_threshold = 1e-10);

// Smallest eigenvalue of a real symmetric matrix.
double min_eigenvalue(const RMatrix& m);

}  // namespace su2m
