#include "su2m/probes.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "su2m/error.hpp"
#include "su2m/metrology.hpp"

namespace su2m {

ProbeState ghz_state(const SpinRep& rep, Axis axis) {
  CVector amps = CVector::Zero(rep.dim());
  amps(0) += 1.0 / std::sqrt(2.0);
  amps(rep.two_j) += 1.0 / std::sqrt(2.0);
  switch (axis) {
    case Axis::Z: break;
    case Axis::X: amps = axis_rotation(rep, Axis::Y, kPi / 2.0) * amps; break;
    case Axis::Y: amps = axis_rotation(rep, Axis::X, -kPi / 2.0) * amps; break;
  }
  return {rep.two_j, false, amps};
}

ProbeState compass_state(const SpinRep& rep, const Vec3& deltas) {
  CVector sum = CVector::Zero(rep.dim());
  for (int l = 0; l < 3; ++l) sum += std::polar(1.0, deltas(l)) * ghz_state(rep, static_cast<Axis>(l)).amps;
  const double n = sum.norm();
  if (n < 1e-10) throw Error(ErrorCode::ZeroNorm, "compass superposition cancels");
  return {rep.two_j, false, sum / n};
}

std::vector<CompassOverlap> compass_trivial_overlap_scan(const std::vector<int>& ns) {
  std::vector<CompassOverlap> out;
  for (int n : ns) {
    if (n < 0 || n % 2 != 0) throw Error(ErrorCode::NotIntegerSpin, "compass scan needs even N");
    const SpinRep rep = build_spin_rep(n);
    const TrivialIrrepData t = trivial_irrep(build_group(GroupKind::A4Tetrahedral, rep));
    const ProbeState c = compass_state(rep, Vec3::Zero());
    out.push_back({n, (t.projector * c.amps).squaredNorm(), Vec3::Zero()});
  }
  return out;
}

CompassOverlap compass_overlap_optimized(int n) {
  if (n < 0 || n % 2 != 0) throw Error(ErrorCode::NotIntegerSpin, "compass scan needs even N");
  const SpinRep rep = build_spin_rep(n);
  const TrivialIrrepData t = trivial_irrep(build_group(GroupKind::A4Tetrahedral, rep));
  CMatrix g(rep.dim(), 3);
  for (int l = 0; l < 3; ++l) g.col(l) = ghz_state(rep, static_cast<Axis>(l)).amps;
  const Eigen::Matrix3cd gram = g.adjoint() * g;
  const Eigen::Matrix3cd proj = g.adjoint() * t.projector * g;

  auto overlap = [&](const Vec3& d) {
    Eigen::Vector3cd v;
    for (int l = 0; l < 3; ++l) v(l) = std::polar(1.0, d(l));
    const double norm2 = v.dot(gram * v).real();
    if (norm2 < 1e-20) return 0.0;
    return v.dot(proj * v).real() / norm2;
  };

  CompassOverlap best{n, -1.0, Vec3::Zero()};
  const int grid = 16;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      for (int c = 0; c < grid; ++c) {
        const Vec3 d = 2.0 * kPi / grid * Vec3(a, b, c);
        const double o = overlap(d);
        if (o > best.overlap) best = {n, o, d};
      }
    }
  }
  // Compass pattern search from the best grid point.
  double step = 2.0 * kPi / grid / 2.0;
  while (step > 1e-10) {
    bool improved = false;
    for (int l = 0; l < 3 && !improved; ++l) {
      for (double sgn : {1.0, -1.0}) {
        Vec3 d = best.deltas;
        d(l) += sgn * step;
        const double o = overlap(d);
        if (o > best.overlap + 1e-15) {
          best = {n, o, d};
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  for (int l = 0; l < 3; ++l) best.deltas(l) = std::remainder(best.deltas(l), 2.0 * kPi);
  return best;
}

ProbeState tetrahedral_state(const SpinRep& rep, const std::optional<CVector>& coefficients) {
  const TrivialIrrepData t = trivial_irrep(build_group(GroupKind::A4Tetrahedral, rep));
  if (t.multiplicity == 0) {
    throw Error(ErrorCode::NoTrivialIrrep, "A4 has no invariant state at 2J = " + std::to_string(rep.two_j));
  }
  if (!coefficients) return {rep.two_j, false, t.basis.front()};
  if (coefficients->size() != t.multiplicity) {
    throw Error(ErrorCode::DimensionMismatch, "need one coefficient per invariant basis state");
  }
  CVector sum = CVector::Zero(rep.dim());
  for (int k = 0; k < t.multiplicity; ++k) sum += (*coefficients)(k) * t.basis[k];
  return make_state(rep.two_j, sum);
}

ProbeState s3_prism_state(const SpinRep& rep, double xi) {
  const double c = std::cos(0.5 * xi);
  const ProbeState seed = std::abs(c) < 1e-15 ? coherent_state(rep, SpherePoint::infinity())
                                               : coherent_state(rep, cplx(std::tan(0.5 * xi), 0.0));
  return twirl(build_group(GroupKind::S3Prism, rep), seed);
}

namespace {

// Residual functor for Eigen's Levenberg-Marquardt; x packs Re c then Im c.
struct ConditionFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const SpinRep* rep;
  const CMatrix* basis;
  int n_in;
  int n_out;

  int inputs() const { return n_in; }
  int values() const { return n_out; }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    const int m = n_in / 2;
    CVector c(m);
    for (int k = 0; k < m; ++k) c(k) = cplx(x(k), x(m + k));
    fvec = Eigen::VectorXd::Zero(n_out);
    const double n = c.norm();
    if (n < 1e-12) {
      fvec.head<9>().setConstant(1e3);
      return 0;
    }
    const ProbeState s{rep->two_j, false, (*basis) * (c / n)};
    fvec.head<9>() = condition_residual_vector(collective_moments(*rep, s), rep->casimir());
    return 0;
  }
};

}  // namespace

FineTuneResult fine_tune_invariant(const FiniteGroupRep& group, const SpinRep& rep, const FineTuneOptions& options) {
  if (group.dim() != rep.dim()) throw Error(ErrorCode::DimensionMismatch, "group and rep dims differ");
  const TrivialIrrepData t = trivial_irrep(group);
  if (t.multiplicity == 0) {
    throw Error(ErrorCode::NoTrivialIrrep, group.name + " has no invariant state at 2J = " + std::to_string(rep.two_j));
  }
  const int m = t.multiplicity;
  CMatrix basis(rep.dim(), m);
  for (int k = 0; k < m; ++k) basis.col(k) = t.basis[k];

  auto finish = [&](const CVector& c) {
    FineTuneResult r;
    // Phase fixed on the state; coefficients follow.
    const CVector psi = fix_global_phase(basis * (c / c.norm()));
    r.state = {rep.two_j, false, psi};
    r.coefficients = basis.adjoint() * psi;
    r.residual = check_conditions(rep, r.state).max_residual;
    r.above_tolerance = r.residual > options.threshold;
    return r;
  };

  if (m == 1) {
    FineTuneResult r = finish(CVector::Ones(1));
    r.restart_residuals.push_back(r.residual);
    return r;
  }

  ConditionFunctor f{&rep, &basis, 2 * m, std::max(9, 2 * m)};
  Eigen::NumericalDiff<ConditionFunctor, Eigen::Central> nd(f);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::optional<FineTuneResult> best;
  std::vector<double> restart_residuals;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Eigen::VectorXd x(2 * m);
    for (int k = 0; k < 2 * m; ++k) x(k) = normal(rng);
    x /= x.norm();
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ConditionFunctor, Eigen::Central>, double> lm(nd);
    lm.parameters.ftol = 1e-16;
    lm.parameters.xtol = 1e-16;
    lm.parameters.maxfev = 4000;
    lm.minimize(x);
    CVector c(m);
    for (int k = 0; k < m; ++k) c(k) = cplx(x(k), x(m + k));
    if (c.norm() < 1e-12) continue;
    FineTuneResult candidate = finish(c);
    restart_residuals.push_back(candidate.residual);
    if (!best || candidate.residual < best->residual) best = std::move(candidate);
  }
  if (!best) throw Error(ErrorCode::NoConvergence, "every restart collapsed to the zero vector");
  best->restart_residuals = std::move(restart_residuals);
  return *best;
}

ProbeState maximally_entangled_probe(const SpinRep& rep) {
  const int d = rep.dim();
  CVector amps = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) amps(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  return {rep.two_j, true, amps};
}

}  // namespace su2m
