#include "su2m/spinrep.hpp"

#include <cmath>

#include "su2m/error.hpp"

namespace su2m {

const CMatrix& SpinRep::generator(int axis) const {
  switch (axis) {
    case 0: return jx;
    case 1: return jy;
    case 2: return jz;
  }
  throw Error(ErrorCode::InvalidArgument, "axis must be 0, 1 or 2");
}

SpinRep build_spin_rep(int two_j) {
  if (two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  CMatrix jp = CMatrix::Zero(d, d);
  CMatrix jz = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = j - k;
    jz(k, k) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1.
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const CMatrix jm = jp.adjoint();
  SpinRep rep;
  rep.two_j = two_j;
  rep.jx = 0.5 * (jp + jm);
  rep.jy = cplx(0.0, -0.5) * (jp - jm);
  rep.jz = jz;
  return rep;
}

int basis_index(int two_j, int two_m) {
  if (std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "magnetic number out of range");
  }
  return (two_j - two_m) / 2;
}

CMatrix rotation(const SpinRep& rep, const Vec3& theta) {
  const CMatrix h = theta(0) * rep.jx + theta(1) * rep.jy + theta(2) * rep.jz;
  return unitary_exp(h, 1.0);
}

CMatrix axis_rotation(const SpinRep& rep, Axis axis, double angle) {
  return unitary_exp(rep.generator(axis), angle);
}

void validate_state(const ProbeState& state, double tol) {
  if (state.two_j < 0) throw Error(ErrorCode::InvalidArgument, "two_j must be non-negative");
  if (state.amps.size() != state.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count " + std::to_string(state.amps.size()) +
                                                  " does not match dimension " + std::to_string(state.dim()));
  }
  if (!state.amps.allFinite()) throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
  const double n = state.amps.norm();
  if (std::abs(n - 1.0) > tol) {
    throw Error(ErrorCode::ZeroNorm, "state norm " + std::to_string(n) + " is not 1");
  }
}

ProbeState make_state(int two_j, const CVector& amps, bool tensor) {
  ProbeState s{two_j, tensor, amps};
  const double n = amps.norm();
  if (n < 1e-10) throw Error(ErrorCode::ZeroNorm, "cannot normalize a vanishing vector");
  s.amps /= n;
  validate_state(s);
  return s;
}

std::array<CMatrix, 3> probe_generators(const SpinRep& rep, bool tensor) {
  if (!tensor) return {rep.jx, rep.jy, rep.jz};
  const CMatrix id = CMatrix::Identity(rep.dim(), rep.dim());
  return {kron(rep.jx, id), kron(rep.jy, id), kron(rep.jz, id)};
}

ProbeState coherent_state(const SpinRep& rep, SpherePoint point) {
  const int n = rep.two_j;
  CVector amps = CVector::Zero(rep.dim());
  if (point.is_infinity()) {
    amps(n) = 1.0;
    return {n, false, amps};
  }
  const cplx zeta = point.zeta();
  cplx power = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    amps(k) = power * std::exp(0.5 * log_binom);
    power *= zeta;
  }
  amps /= amps.norm();
  return {n, false, amps};
}

ProbeState coherent_state(const SpinRep& rep, cplx zeta) { return coherent_state(rep, SpherePoint::finite(zeta)); }

MomentTable collective_moments(const SpinRep& rep, const ProbeState& state) {
  if (rep.two_j != state.two_j) throw Error(ErrorCode::DimensionMismatch, "state and rep spins differ");
  validate_state(state, 1e-10);
  const auto gens = probe_generators(rep, state.tensor);
  std::array<CVector, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = gens[i] * state.amps;
  MomentTable t;
  for (int i = 0; i < 3; ++i) {
    t.first(i) = state.amps.dot(v[i]).real();
    for (int l = 0; l < 3; ++l) t.second(i, l) = v[i].dot(v[l]);
  }
  t.jordan = t.second.real();
  t.jordan = 0.5 * (t.jordan + t.jordan.transpose()).eval();
  return t;
}

MomentTable collective_moments(const ProbeState& state) {
  return collective_moments(build_spin_rep(state.two_j), state);
}

const std::array<Eigen::Matrix2cd, 3>& pauli() {
  static const std::array<Eigen::Matrix2cd, 3> p = [] {
    std::array<Eigen::Matrix2cd, 3> s;
    const cplx i(0.0, 1.0);
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -i, i, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return p;
}

QubitMarginals reduced_qubit_states(const ProbeState& state) {
  if (state.tensor || state.two_j < 2) {
    throw Error(ErrorCode::NotSymmetricContext, "needs a single-rep state with N = 2J >= 2");
  }
  const double n = state.two_j;
  const MomentTable t = collective_moments(state);
  const auto& s = pauli();
  const CMatrix id2 = CMatrix::Identity(2, 2);
  std::array<CMatrix, 3> sig{s[0], s[1], s[2]};

  QubitMarginals out;
  out.rho1 = 0.5 * id2;
  out.rho2 = 0.25 * Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    const double r = 2.0 * t.first(i) / n;
    out.rho1 += 0.5 * r * sig[i];
    out.rho2 += 0.25 * r * (kron(sig[i], id2) + kron(id2, sig[i]));
    for (int l = 0; l < 3; ++l) {
      const double corr = (4.0 * t.jordan(i, l) - (i == l ? n : 0.0)) / (n * (n - 1.0));
      out.rho2 += 0.25 * corr * kron(sig[i], sig[l]);
    }
  }
  return out;
}

}  // namespace su2m
