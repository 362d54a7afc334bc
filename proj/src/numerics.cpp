#include "su2m/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "su2m/error.hpp"

namespace su2m {

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double max_abs(const RMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

HermitianEig herm_eig(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "herm_eig needs a square matrix");
  }
  if (a.size() == 0) return {};
  const double scale = std::max(1.0, max_abs(a));
  const double defect = hermiticity_defect(a);
  if (!(defect <= tol * scale)) {
    throw Error(ErrorCode::NotHermitian, "max |A - A^dagger| = " + std::to_string(defect));
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix unitary_exp(const HermitianEig& eig, double t) {
  const auto n = eig.eigenvalues.size();
  CVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, -t * eig.eigenvalues(k));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix unitary_exp(const CMatrix& h, double t) { return unitary_exp(herm_eig(h), t); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw Error(ErrorCode::DimensionMismatch, "subsystem dimensions must be positive");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total) {
    throw Error(ErrorCode::DimensionMismatch, "rho dimension does not match product of dims");
  }
  const int n_sub = static_cast<int>(dims.size());
  std::vector<bool> kept(n_sub, false);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= n_sub || kept[keep[k]] || (k > 0 && keep[k] < keep[k - 1])) {
      throw Error(ErrorCode::DimensionMismatch, "keep must be sorted, unique and in range");
    }
    kept[keep[k]] = true;
  }

  // Split each full index into a kept index and a traced index (row-major, first subsystem slowest).
  std::vector<long> kidx(total), tidx(total);
  long dk = 1;
  for (int s = 0; s < n_sub; ++s) if (kept[s]) dk *= dims[s];
  for (long i = 0; i < total; ++i) {
    long rem = i, k = 0, t = 0, kstride = 1, tstride = 1;
    for (int s = n_sub - 1; s >= 0; --s) {
      const long digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        k += digit * kstride;
        kstride *= dims[s];
      } else {
        t += digit * tstride;
        tstride *= dims[s];
      }
    }
    kidx[i] = k;
    tidx[i] = t;
  }

  CMatrix out = CMatrix::Zero(dk, dk);
  for (long i = 0; i < total; ++i) {
    for (long j = 0; j < total; ++j) {
      if (tidx[i] == tidx[j]) out(kidx[i], kidx[j]) += rho(i, j);
    }
  }
  return out;
}

double unitarity_defect(const CMatrix& u) {
  return max_abs(CMatrix(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())));
}

double min_eigenvalue(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

namespace {

template <int N>
RMatrix fixed_inverse(const RMatrix& m) {
  Eigen::Matrix<double, N, N> f = m;
  return f.inverse();
}

}  // namespace

SmallInverse invert_symmetric(const RMatrix& m, double singular_threshold) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "invert_symmetric needs a non-empty square matrix");
  }
  SmallInverse out;
  const RMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(sym);
  out.eigenvalues = solver.eigenvalues();
  out.min_eig = out.eigenvalues(0);
  const double max_mag = out.eigenvalues.cwiseAbs().maxCoeff();
  const double min_mag = out.eigenvalues.cwiseAbs().minCoeff();
  out.condition = min_mag > 0 ? max_mag / min_mag : std::numeric_limits<double>::infinity();
  out.singular = out.min_eig < singular_threshold;
  if (out.singular) {
    out.inverse = RMatrix::Constant(m.rows(), m.cols(), std::numeric_limits<double>::quiet_NaN());
    return out;
  }
  // Sizes 2-4 go through Eigen's cofactor formulas.
  switch (m.rows()) {
    case 1: out.inverse = RMatrix::Constant(1, 1, 1.0 / sym(0, 0)); break;
    case 2: out.inverse = fixed_inverse<2>(sym); break;
    case 3: out.inverse = fixed_inverse<3>(sym); break;
    case 4: out.inverse = fixed_inverse<4>(sym); break;
    default:
      out.inverse = solver.eigenvectors() * out.eigenvalues.cwiseInverse().asDiagonal() *
                    solver.eigenvectors().transpose();
  }
  return out;
}

}  // namespace su2m
