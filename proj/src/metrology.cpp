#include "su2m/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "su2m/error.hpp"

namespace su2m {

ConditionReport conditions_from_moments(const MomentTable& m, double casimir) {
  ConditionReport r;
  r.first_moments = m.first;
  r.target_variance = casimir / 3.0;
  double worst = r.first_moments.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    r.variances(i) = m.jordan(i, i);
    worst = std::max(worst, std::abs(r.variances(i) - r.target_variance));
    for (int l = 0; l < 3; ++l) {
      if (i == l) continue;
      r.cross_moments(i, l) = m.jordan(i, l);
      worst = std::max(worst, std::abs(m.jordan(i, l)));
      r.weak_commutativity = std::max(r.weak_commutativity, std::abs(m.second(i, l).imag()));
    }
  }
  r.max_residual = worst;
  return r;
}

ConditionReport check_conditions(const SpinRep& rep, const ProbeState& state) {
  return conditions_from_moments(collective_moments(rep, state), rep.casimir());
}

ConditionReport check_conditions(const ProbeState& state) {
  return check_conditions(build_spin_rep(state.two_j), state);
}

Eigen::Matrix<double, 9, 1> condition_residual_vector(const MomentTable& m, double casimir) {
  Eigen::Matrix<double, 9, 1> r;
  const double s2 = std::sqrt(2.0);
  r << m.first(0), m.first(1), m.first(2), s2 * m.jordan(0, 1), s2 * m.jordan(0, 2), s2 * m.jordan(1, 2),
      m.jordan(0, 0) - casimir / 3.0, m.jordan(1, 1) - casimir / 3.0, m.jordan(2, 2) - casimir / 3.0;
  return r;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

AMatrixSet a_matrices(const Vec3& theta) {
  AMatrixSet out;
  out.theta = theta;
  const double t = theta.norm();
  const double s = sinc(t);
  // (1 - sinc t)/t^2 and 2 sin^2(t/2)/t^2, both with their small-t limits.
  double proj, cross;
  if (t < 1e-4) {
    const double t2 = t * t;
    proj = 1.0 / 6.0 - t2 / 120.0;
    cross = 0.5 - t2 / 24.0;
  } else {
    proj = (1.0 - s) / (t * t);
    const double h = std::sin(0.5 * t);
    cross = 2.0 * h * h / (t * t);
  }
  for (int j = 0; j < 3; ++j) {
    const Vec3 e = Vec3::Unit(j);
    out.a_vectors[j] = s * e + proj * theta(j) * theta + cross * e.cross(theta);
  }
  return out;
}

namespace {

Eigen::Matrix3d covariance(const MomentTable& m) { return m.jordan - m.first * m.first.transpose(); }

}  // namespace

Qfim qfim(const SpinRep& rep, const ProbeState& state, const Vec3& theta) {
  const Eigen::Matrix3d cov = covariance(collective_moments(rep, state));
  const AMatrixSet a = a_matrices(theta);
  Eigen::Matrix3d amat;
  for (int j = 0; j < 3; ++j) amat.col(j) = a.a_vectors[j];
  RMatrix f = 4.0 * amat.transpose() * cov * amat;
  f = 0.5 * (f + f.transpose()).eval();
  return {theta, f};
}

Qfim qfim(const ProbeState& state, const Vec3& theta) { return qfim(build_spin_rep(state.two_j), state, theta); }

RMatrix pure_state_qfim(const CVector& psi, const std::vector<CVector>& dpsi) {
  const auto d = static_cast<Eigen::Index>(dpsi.size());
  RMatrix f(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const cplx v = dpsi[i].dot(dpsi[j]) - dpsi[i].dot(psi) * psi.dot(dpsi[j]);
      f(i, j) = 4.0 * v.real();
    }
  }
  return 0.5 * (f + f.transpose());
}

double trace_inverse(const RMatrix& f, double threshold) {
  const SmallInverse inv = invert_symmetric(f, threshold);
  if (inv.singular) {
    throw Error(ErrorCode::SingularQfim, "min eigenvalue " + std::to_string(inv.min_eig));
  }
  return inv.inverse.trace();
}

double optimal_crb_floor(int n) { return 9.0 / (static_cast<double>(n) * (n + 2.0)); }

double optimal_scalar_curve(double t, int n) {
  const double s = sinc(0.5 * t);
  return (3.0 + 6.0 / (s * s)) / (static_cast<double>(n) * (n + 2.0));
}

std::vector<CrbPoint> scalar_crb_curve(const ProbeState& state, const Vec3& direction,
                                       const std::vector<double>& t_grid) {
  const double dn = direction.norm();
  if (dn == 0.0) throw Error(ErrorCode::InvalidArgument, "direction must be non-zero");
  const Vec3 u = direction / dn;
  const SpinRep rep = build_spin_rep(state.two_j);
  std::vector<CrbPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const Qfim f = qfim(rep, state, t * u);
    const SmallInverse inv = invert_symmetric(f.matrix);
    CrbPoint p;
    p.t = t;
    p.min_eig = inv.min_eig;
    p.singular = inv.singular;
    p.trace_inv = inv.singular ? std::numeric_limits<double>::quiet_NaN() : inv.inverse.trace();
    out.push_back(p);
  }
  return out;
}

std::vector<double> linear_grid(double t0, double t1, int points) {
  if (points < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one point");
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k) g[k] = points == 1 ? t0 : t0 + (t1 - t0) * k / (points - 1.0);
  return g;
}

std::vector<double> log_grid(double t0, double t1, int points) {
  if (points < 1 || t0 <= 0.0 || t1 <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "log grid needs positive endpoints and points >= 1");
  }
  std::vector<double> g(points);
  const double a = std::log(t0), b = std::log(t1);
  for (int k = 0; k < points; ++k) g[k] = points == 1 ? t0 : std::exp(a + (b - a) * k / (points - 1.0));
  return g;
}

ShiftedProbe shifted_probe(const SpinRep& rep, const ProbeState& state, const Vec3& xi, const Vec3& theta) {
  const auto gens = probe_generators(rep, state.tensor);
  const Vec3 eff = theta - xi;
  const CMatrix h = eff(0) * gens[0] + eff(1) * gens[1] + eff(2) * gens[2];
  const HermitianEig eig = herm_eig(h);
  const auto n = eig.eigenvalues.size();

  // Divided differences of f(x) = exp(-i x): (f(a) - f(b))/(a - b) = -i exp(-i(a+b)/2) sinc((a-b)/2).
  CMatrix dd(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double la = eig.eigenvalues(a), lb = eig.eigenvalues(b);
      dd(a, b) = cplx(0.0, -1.0) * std::polar(1.0, -0.5 * (la + lb)) * sinc(0.5 * (la - lb));
    }
  }
  const CMatrix& v = eig.eigenvectors;
  const CVector psi_eig = v.adjoint() * state.amps;

  ShiftedProbe out;
  CVector phases(n);
  for (Eigen::Index a = 0; a < n; ++a) phases(a) = std::polar(1.0, -eig.eigenvalues(a));
  out.psi = v * phases.cwiseProduct(psi_eig);
  for (int j = 0; j < 3; ++j) {
    const CMatrix gj = v.adjoint() * gens[j] * v;
    const CMatrix du = dd.cwiseProduct(gj);
    out.dpsi[j] = v * (du * psi_eig);
  }
  return out;
}

Qfim shifted_qfim(const SpinRep& rep, const ProbeState& state, const Vec3& xi, const Vec3& theta) {
  const ShiftedProbe p = shifted_probe(rep, state, xi, theta);
  return {theta, pure_state_qfim(p.psi, {p.dpsi[0], p.dpsi[1], p.dpsi[2]})};
}

Qfim shifted_qfim(const ProbeState& state, const Vec3& xi, const Vec3& theta) {
  return shifted_qfim(build_spin_rep(state.two_j), state, xi, theta);
}

double su2_invariance_check(const ProbeState& state, int trials, std::uint64_t seed) {
  const SpinRep rep = build_spin_rep(state.two_j);
  const auto gens = probe_generators(rep, state.tensor);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  std::vector<Vec3> thetas(5);
  for (auto& t : thetas) t = Vec3(angle(rng), angle(rng), angle(rng));
  std::vector<RMatrix> reference;
  for (const auto& t : thetas) reference.push_back(qfim(rep, state, t).matrix);

  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    // Haar-random SU(2) element from a uniform unit quaternion, as exp(-i phi n.J).
    Eigen::Vector4d q(normal(rng), normal(rng), normal(rng), normal(rng));
    q.normalize();
    const double phi = 2.0 * std::acos(std::clamp(q(0), -1.0, 1.0));
    Vec3 axis = q.tail<3>();
    const double an = axis.norm();
    axis = an > 0 ? Vec3(axis / an) : Vec3::UnitZ();
    const CMatrix h = axis(0) * gens[0] + axis(1) * gens[1] + axis(2) * gens[2];
    ProbeState moved = state;
    moved.amps = unitary_exp(h, phi) * state.amps;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      worst = std::max(worst, max_abs(RMatrix(qfim(rep, moved, thetas[i]).matrix - reference[i])));
    }
  }
  return worst;
}

EvolvedState evolve_with_gradient(const SpinRep& rep, const ProbeState& state, const Vec3& theta) {
  const auto gens = probe_generators(rep, state.tensor);
  const CMatrix h = theta(0) * gens[0] + theta(1) * gens[1] + theta(2) * gens[2];
  const CMatrix u = unitary_exp(h, 1.0);
  const AMatrixSet a = a_matrices(theta);
  EvolvedState out;
  out.psi = u * state.amps;
  for (int j = 0; j < 3; ++j) {
    const Vec3& c = a.a_vectors[j];
    const CVector ap = c(0) * (gens[0] * state.amps) + c(1) * (gens[1] * state.amps) + c(2) * (gens[2] * state.amps);
    out.dpsi[j] = cplx(0.0, -1.0) * (u * ap);
  }
  return out;
}

}  // namespace su2m
