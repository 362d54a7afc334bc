#include "su2m/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "su2m/error.hpp"
#include "su2m/metrology.hpp"

namespace su2m {

namespace {

CMatrix range_isometry(const CMatrix& projector) {
  const HermitianEig eig = herm_eig(0.5 * (projector + projector.adjoint()), 1e-8);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues(k) > 0.5) cols.push_back(k);
  }
  CMatrix v(projector.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(cols[c]);
  return v;
}

}  // namespace

double SchemeDefects::max() const { return std::max({idempotence, hermiticity, orthogonality, completeness}); }

SchemeDefects scheme_defects(const MeasurementScheme& scheme) {
  SchemeDefects d;
  if (scheme.projectors.empty()) return d;
  const auto n = scheme.projectors.front().rows();
  CMatrix sum = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < scheme.projectors.size(); ++a) {
    const CMatrix& p = scheme.projectors[a];
    sum += p;
    d.idempotence = std::max(d.idempotence, max_abs(CMatrix(p * p - p)));
    d.hermiticity = std::max(d.hermiticity, hermiticity_defect(p));
    for (std::size_t b = a + 1; b < scheme.projectors.size(); ++b) {
      d.orthogonality = std::max(d.orthogonality, max_abs(CMatrix(p * scheme.projectors[b])));
    }
  }
  d.completeness = max_abs(CMatrix(sum - CMatrix::Identity(n, n)));
  return d;
}

MeasurementScheme kl_scheme(const ProbeState& state, double tol) {
  const SpinRep rep = build_spin_rep(state.two_j);
  const ConditionReport report = check_conditions(rep, state);
  if (!(report.max_residual < tol)) {
    throw Error(ErrorCode::NotOptimalProbe, "condition residual " + std::to_string(report.max_residual));
  }
  const auto gens = probe_generators(rep, state.tensor);
  const auto n = state.amps.size();
  MeasurementScheme s;
  s.projectors.push_back(state.amps * state.amps.adjoint());
  s.isometries.push_back(state.amps);
  s.labels.push_back("psi");
  CMatrix q = CMatrix::Identity(n, n) - s.projectors.front();
  for (int i = 0; i < 3; ++i) {
    CVector v = gens[i] * state.amps;
    v /= v.norm();
    s.projectors.push_back(v * v.adjoint());
    s.isometries.push_back(v);
    s.labels.push_back("P" + std::to_string(i + 1));
    q -= s.projectors.back();
  }
  q = 0.5 * (q + q.adjoint()).eval();
  s.isometries.push_back(range_isometry(q));
  s.projectors.push_back(q);
  s.labels.push_back("Q");
  return s;
}

OutcomeTable outcome_table(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta) {
  const SpinRep rep = build_spin_rep(state.two_j);
  const EvolvedState e = evolve_with_gradient(rep, state, theta);
  const auto k = static_cast<Eigen::Index>(scheme.isometries.size());
  OutcomeTable t{RVector(k), RMatrix(k, 3)};
  for (Eigen::Index a = 0; a < k; ++a) {
    const CMatrix& v = scheme.isometries[a];
    if (v.rows() != e.psi.size()) throw Error(ErrorCode::DimensionMismatch, "scheme and state dims differ");
    // Amplitudes in the outcome's range keep tiny probabilities accurate.
    const CVector c = v.adjoint() * e.psi;
    t.p(a) = c.squaredNorm();
    for (int j = 0; j < 3; ++j) t.dp(a, j) = 2.0 * c.dot(v.adjoint() * e.dpsi[j]).real();
  }
  return t;
}

RVector outcome_probabilities(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta) {
  return outcome_table(scheme, state, theta).p;
}

RMatrix fisher_from_table(const RVector& p, const RMatrix& dp, double p_floor, double grad_tol) {
  RMatrix f = RMatrix::Zero(dp.cols(), dp.cols());
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    const RVector g = dp.row(a).transpose();
    if (p(a) < p_floor) {
      if (g.cwiseAbs().maxCoeff() > grad_tol) {
        throw Error(ErrorCode::SingularOutcome,
                    "outcome " + std::to_string(a) + " has p = " + std::to_string(p(a)) + " but non-zero gradient");
      }
      continue;
    }
    f += g * g.transpose() / p(a);
  }
  return 0.5 * (f + f.transpose());
}

RMatrix classical_fim(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta) {
  const OutcomeTable t = outcome_table(scheme, state, theta);
  return fisher_from_table(t.p, t.dp);
}

ObservableList make_observable_list(std::vector<CMatrix> observables, std::vector<std::string> labels,
                                    double merge_tol) {
  if (labels.size() != observables.size()) labels.resize(observables.size());
  ObservableList list;
  for (std::size_t s = 0; s < observables.size(); ++s) {
    const CMatrix& o = observables[s];
    const HermitianEig eig = herm_eig(o, 1e-10);
    Spectrum sp;
    std::vector<double> values;
    std::vector<std::vector<Eigen::Index>> groups;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      const double lam = eig.eigenvalues(k);
      if (!values.empty() && std::abs(lam - values.back()) < merge_tol) {
        groups.back().push_back(k);
      } else {
        values.push_back(lam);
        groups.push_back({k});
      }
    }
    sp.values = Eigen::Map<RVector>(values.data(), static_cast<Eigen::Index>(values.size()));
    for (const auto& g : groups) {
      CMatrix v(o.rows(), static_cast<Eigen::Index>(g.size()));
      for (std::size_t c = 0; c < g.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(g[c]);
      sp.projectors.push_back(v * v.adjoint());
      sp.isometries.push_back(v);
    }
    list.spectra.push_back(std::move(sp));
  }
  list.observables = std::move(observables);
  list.labels = std::move(labels);
  return list;
}

ObservableList parity_observables(const SpinRep& rep, bool tensor) {
  const int d = rep.dim();
  const CMatrix half_n = 0.5 * rep.two_j * CMatrix::Identity(d, d);
  std::vector<CMatrix> obs;
  std::vector<std::string> labels{"Ox", "Oy", "Oz"};
  for (int i = 0; i < 3; ++i) {
    CMatrix o = unitary_exp(CMatrix(half_n - rep.generator(i)), -kPi);
    o = 0.5 * (o + o.adjoint()).eval();
    if (tensor) o = kron(o, CMatrix::Identity(d, d));
    obs.push_back(std::move(o));
  }
  return make_observable_list(std::move(obs), std::move(labels));
}

ObservableList observables_from_scheme(const MeasurementScheme& scheme) {
  return make_observable_list(scheme.projectors, scheme.labels);
}

JointDensity joint_density(const ObservableList& obs, const ProbeState& state, const Vec3& theta) {
  const SpinRep rep = build_spin_rep(state.two_j);
  const EvolvedState e = evolve_with_gradient(rep, state, theta);
  const int k = static_cast<int>(obs.spectra.size());
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "observable list is empty");

  JointDensity jd;
  long total = 1;
  for (const auto& sp : obs.spectra) {
    jd.shape.push_back(static_cast<int>(sp.projectors.size()));
    total *= jd.shape.back();
  }
  jd.p = RVector::Zero(total);
  jd.dp = RMatrix::Zero(total, 3);

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<int> idx(k);
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    for (int s = k - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % jd.shape[s]);
      rem /= jd.shape[s];
    }
    // S_l psi, averaged over orderings; the rightmost factor acts first.
    CVector acc = CVector::Zero(e.psi.size());
    for (const auto& perm : perms) {
      CVector w = e.psi;
      for (int pos = k - 1; pos >= 0; --pos) {
        const int s = perm[pos];
        w = obs.spectra[s].projectors[idx[s]] * w;
      }
      acc += w;
    }
    acc /= static_cast<double>(perms.size());
    const cplx val = e.psi.dot(acc);
    jd.p(flat) = val.real();
    jd.imaginary_defect = std::max(jd.imaginary_defect, std::abs(val.imag()));
    for (int j = 0; j < 3; ++j) jd.dp(flat, j) = 2.0 * e.dpsi[j].dot(acc).real();
  }

  // Marginals against tr[E rho].
  for (int s = 0; s < k; ++s) {
    RVector marginal = RVector::Zero(jd.shape[s]);
    for (long flat = 0; flat < total; ++flat) {
      long rem = flat;
      int digit = 0;
      for (int t = k - 1; t >= s; --t) {
        digit = static_cast<int>(rem % jd.shape[t]);
        rem /= jd.shape[t];
      }
      marginal(digit) += jd.p(flat);
    }
    for (int l = 0; l < jd.shape[s]; ++l) {
      const double direct = e.psi.dot(obs.spectra[s].projectors[l] * e.psi).real();
      jd.marginal_defect = std::max(jd.marginal_defect, std::abs(marginal(l) - direct));
    }
  }

  jd.min_probability = jd.p.minCoeff();
  jd.non_normalizable = jd.min_probability < -1e-9;
  if (jd.non_normalizable) {
    jd.cfi = RMatrix::Constant(3, 3, std::numeric_limits<double>::quiet_NaN());
  } else {
    jd.cfi = fisher_from_table(jd.p, jd.dp);
  }
  return jd;
}

RMatrix classical_fim(const ObservableList& obs, const ProbeState& state, const Vec3& theta) {
  return joint_density(obs, state, theta).cfi;
}

MomentsMatrix moments_matrix(const ObservableList& obs, const ProbeState& state, const Vec3& theta,
                             const MomentsOptions& options) {
  const SpinRep rep = build_spin_rep(state.two_j);
  const EvolvedState e = evolve_with_gradient(rep, state, theta);
  const auto k = static_cast<Eigen::Index>(obs.observables.size());
  std::vector<CVector> opsi(k);
  MomentsMatrix mm;
  mm.means = RVector(k);
  mm.mean_gradient = RMatrix(k, 3);
  mm.covariance = RMatrix(k, k);
  for (Eigen::Index s = 0; s < k; ++s) {
    if (obs.observables[s].rows() != e.psi.size()) {
      throw Error(ErrorCode::DimensionMismatch, "observable and state dims differ");
    }
    opsi[s] = obs.observables[s] * e.psi;
    mm.means(s) = e.psi.dot(opsi[s]).real();
    for (int j = 0; j < 3; ++j) mm.mean_gradient(s, j) = 2.0 * e.dpsi[j].dot(opsi[s]).real();
  }
  // Jordan-product covariance Re<O_s psi|O_t psi> - <O_s><O_t>.
  for (Eigen::Index s = 0; s < k; ++s) {
    for (Eigen::Index t = 0; t < k; ++t) mm.covariance(s, t) = opsi[s].dot(opsi[t]).real() - mm.means(s) * mm.means(t);
  }
  mm.covariance = 0.5 * (mm.covariance + mm.covariance.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<RMatrix> solver(mm.covariance);
  const RVector& lam = solver.eigenvalues();
  const RMatrix& vec = solver.eigenvectors();
  RMatrix inv = RMatrix::Zero(k, k);
  int kept = 0;
  for (Eigen::Index a = 0; a < k; ++a) {
    const RVector proj = vec.col(a).transpose() * mm.mean_gradient;
    if (lam(a) > options.covariance_cutoff) {
      inv += vec.col(a) * vec.col(a).transpose() / lam(a);
      ++kept;
    } else {
      ++mm.discarded_directions;
      mm.discarded_gradient = std::max(mm.discarded_gradient, proj.cwiseAbs().maxCoeff());
    }
  }
  if (kept == 0) throw Error(ErrorCode::SingularCovariance, "every covariance eigenvalue is below the cutoff");
  mm.matrix = mm.mean_gradient.transpose() * inv * mm.mean_gradient;
  mm.matrix = 0.5 * (mm.matrix + mm.matrix.transpose()).eval();
  if (options.joint_density) mm.joint = joint_density(obs, state, theta);
  return mm;
}

}  // namespace su2m
