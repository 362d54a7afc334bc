#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "su2m/error.hpp"
#include "su2m/groups.hpp"
#include "su2m/measurement.hpp"
#include "su2m/metrology.hpp"
#include "su2m/probes.hpp"
#include "su2m/verify/oracles.hpp"

using namespace su2m;

namespace {

ProbeState rotated(const SpinRep& r, const ProbeState& s, const Vec3& angle) {
  ProbeState out = s;
  CMatrix u = rotation(r, angle);
  if (s.tensor) u = kron(u, CMatrix(CMatrix::Identity(r.dim(), r.dim())));
  out.amps = u * s.amps;
  return out;
}

double min_eig_of(const RMatrix& m) { return min_eigenvalue(RMatrix(0.5 * (m + m.transpose()))); }

}  // namespace

TEST_CASE("KL scheme structure") {
  const SpinRep r3 = build_spin_rep(6);
  const ProbeState t3 = tetrahedral_state(r3);
  const MeasurementScheme s = kl_scheme(t3);
  REQUIRE(s.projectors.size() == 5);
  CHECK(scheme_defects(s).max() < 1e-10);
  CHECK(s.labels.front() == "psi");
  CHECK(s.labels.back() == "Q");
  for (int i = 0; i < 3; ++i) CHECK((r3.generator(i) * t3.amps).squaredNorm() == doctest::Approx(4.0));

  CHECK_THROWS_AS(kl_scheme(ghz_state(r3, Axis::Z)), Error);
  try {
    kl_scheme(ghz_state(r3, Axis::Z));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOptimalProbe);
  }

  const SpinRep r = build_spin_rep(3);
  CHECK(scheme_defects(kl_scheme(maximally_entangled_probe(r))).max() < 1e-10);
}

TEST_CASE("outcome probabilities") {
  const SpinRep r4 = build_spin_rep(8);
  const ProbeState t4 = tetrahedral_state(r4);
  const MeasurementScheme s = kl_scheme(t4);
  const RVector p0 = outcome_probabilities(s, t4, Vec3::Zero());
  CHECK(std::abs(p0(0) - 1.0) < 1e-12);
  CHECK(p0.tail(4).cwiseAbs().maxCoeff() < 1e-12);

  const RVector p = outcome_probabilities(s, t4, Vec3(0.01, 0, 0));
  CHECK(std::abs(p(1) - 1e-4 * 20.0 / 3.0) < 2e-6);

  verify::Rng rng(41);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const Vec3 th(g(rng), g(rng), g(rng));
    const RVector q = outcome_probabilities(s, t4, th);
    CHECK(std::abs(q.sum() - 1.0) < 1e-12);
    CHECK(q.minCoeff() > -1e-14);
  }

  // Small-angle expansion: p_0 and p_i to second order, the lumped outcome is quartic.
  const Vec3 dir(1.0, 2.0, -1.0);
  const RVector a = outcome_probabilities(s, t4, 1e-3 * dir);
  const RVector b = outcome_probabilities(s, t4, 5e-4 * dir);
  CHECK(std::abs(a(0) - (1.0 - 6e-6 * 20.0 / 3.0)) < 1e-8);
  CHECK(std::abs(a(2) - 4e-6 * 20.0 / 3.0) < 1e-8);
  CHECK(a(4) / b(4) == doctest::Approx(16.0).epsilon(1e-3));
}

TEST_CASE("classical Fisher information matches finite differences") {
  std::vector<std::pair<SpinRep, ProbeState>> probes;
  for (int j : {3, 4, 6}) {
    const SpinRep r = build_spin_rep(2 * j);
    probes.emplace_back(r, tetrahedral_state(r));
  }
  const SpinRep r4 = build_spin_rep(8);
  probes.emplace_back(r4, fine_tune_invariant(build_group(GroupKind::S3Prism, r4), r4).state);
  verify::Rng rng(42);
  std::normal_distribution<double> g(0.0, 0.6);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto& [r, base] = probes[k % probes.size()];
    const ProbeState s = rotated(r, base, Vec3(g(rng), g(rng), g(rng)));
    const MeasurementScheme scheme = kl_scheme(s);
    const Vec3 th(g(rng), g(rng), g(rng));
    const RMatrix cfi = classical_fim(scheme, s, th);
    const RMatrix fd = verify::finite_difference_cfi(scheme, s, th);
    worst = std::max(worst, max_abs(RMatrix(cfi - fd)) / max_abs(cfi));
    CHECK(min_eig_of(qfim(r, s, th).matrix - cfi) > -1e-8);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("CFI near the origin") {
  for (int j : {3, 4}) {
    const SpinRep r = build_spin_rep(2 * j);
    const ProbeState t = tetrahedral_state(r);
    const RMatrix cfi = classical_fim(kl_scheme(t), t, Vec3::Ones() * 1e-3 / std::sqrt(3.0));
    const double target = 4.0 * r.casimir() / 3.0;
    for (int i = 0; i < 3; ++i) CHECK(std::abs(cfi(i, i) / target - 1.0) < 1e-3);
    CHECK(std::abs(cfi(0, 1)) < 1e-4 * target);
    CHECK(std::abs(cfi(0, 2)) < 1e-4 * target);
  }
}

TEST_CASE("fisher_from_table pruning") {
  RVector p(3);
  p << 0.5, 0.5, 0.0;
  RMatrix dp = RMatrix::Zero(3, 1);
  dp(0, 0) = 1.0;
  dp(1, 0) = -1.0;
  CHECK(fisher_from_table(p, dp)(0, 0) == doctest::Approx(4.0));
  dp(2, 0) = 1e-3;
  CHECK_THROWS_AS(fisher_from_table(p, dp), Error);
}

TEST_CASE("parity observables") {
  const SpinRep half = build_spin_rep(1);
  const ObservableList h = parity_observables(half);
  for (const Spectrum& sp : h.spectra) {
    REQUIRE(sp.values.size() == 2);
    CHECK(sp.values(0) == doctest::Approx(-1.0));
    CHECK(sp.values(1) == doctest::Approx(1.0));
  }
  for (int tj = 1; tj <= 12; ++tj) {
    const SpinRep r = build_spin_rep(tj);
    const ObservableList o = parity_observables(r);
    for (const CMatrix& x : o.observables) {
      CHECK(max_abs(CMatrix(x * x - CMatrix::Identity(r.dim(), r.dim()))) < 1e-11);
      CHECK(max_abs(CMatrix(x - x.adjoint())) < 1e-12);
    }
    for (const Spectrum& sp : o.spectra) {
      CMatrix sum = CMatrix::Zero(r.dim(), r.dim());
      for (const CMatrix& p : sp.projectors) sum += p;
      CHECK(max_abs(CMatrix(sum - CMatrix::Identity(r.dim(), r.dim()))) < 1e-10);
      for (int i = 0; i < sp.values.size(); ++i) CHECK(std::abs(std::abs(sp.values(i)) - 1.0) < 1e-10);
    }
    // pi rotations about orthogonal axes: O_x O_z = (-1)^{2J} O_z O_x.
    const CMatrix xz = o.observables[0] * o.observables[2], zx = o.observables[2] * o.observables[0];
    if (tj % 2 == 0) {
      CHECK(max_abs(CMatrix(xz - zx)) < 1e-11);
    } else {
      CHECK(max_abs(CMatrix(xz + zx)) < 1e-11);
      CHECK(CMatrix(xz - zx).norm() > 0.1);
    }
  }
}

TEST_CASE("moments matrix ordering") {
  const SpinRep r3 = build_spin_rep(6);
  const ProbeState t3 = tetrahedral_state(r3);
  const Vec3 th(0.2, 0.1, 0.15);
  const MomentsMatrix m = moments_matrix(parity_observables(r3), t3, th);
  const RMatrix f = qfim(r3, t3, th).matrix;
  CHECK(min_eig_of(f - m.matrix) > -1e-9);
  CHECK(min_eig_of(m.matrix) > -1e-9);
  CHECK(min_eig_of(m.covariance) > -1e-9);
  REQUIRE(m.joint.has_value());
  CHECK(m.joint->marginal_defect < 1e-10);
  CHECK(m.joint->imaginary_defect < 1e-10);
  CHECK(std::abs(m.joint->p.sum() - 1.0) < 1e-10);

  const ObservableList kl = observables_from_scheme(kl_scheme(t3));
  const MomentsMatrix mk = moments_matrix(kl, t3, th);
  CHECK(min_eig_of(f - mk.matrix) > -1e-9);
  CHECK(min_eig_of(f - classical_fim(kl, t3, th)) > -1e-8);
}

TEST_CASE("KL moments and CFI approach tr F(0)") {
  for (int j : {3, 4}) {
    const SpinRep r = build_spin_rep(2 * j);
    const ProbeState t = tetrahedral_state(r);
    const Vec3 th = Vec3::Ones() * 1e-3 / std::sqrt(3.0);
    const double target = 4.0 * r.casimir();
    const RMatrix cfi = classical_fim(kl_scheme(t), t, th);
    const MomentsMatrix m = moments_matrix(observables_from_scheme(kl_scheme(t)), t, th);
    CHECK(std::abs(cfi.trace() / target - 1.0) < 1e-3);
    CHECK(std::abs(m.matrix.trace() / target - 1.0) < 1e-3);
  }
}

TEST_CASE("joint density is symmetric in its multi-index") {
  const SpinRep r = build_spin_rep(6);
  const ProbeState t = tetrahedral_state(r);
  const Vec3 th(0.3, -0.2, 0.25);
  const ObservableList base = parity_observables(r);
  const JointDensity jd = joint_density(base, t, th);
  REQUIRE(jd.shape.size() == 3);

  // Reorder the list as (z, x, y); entry (a, b, c) must move to (c, a, b).
  const ObservableList perm = make_observable_list({base.observables[2], base.observables[0], base.observables[1]},
                                                   {"z", "x", "y"});
  const JointDensity jp = joint_density(perm, t, th);
  const int na = jd.shape[0], nb = jd.shape[1], nc = jd.shape[2];
  double worst = 0.0;
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < nc; ++c) {
        const int i = (a * nb + b) * nc + c;
        const int k = (c * na + a) * nb + b;
        worst = std::max(worst, std::abs(jd.p(i) - jp.p(k)));
      }
  CHECK(worst < 1e-12);
}

TEST_CASE("non-normalizable joint density is flagged") {
  // Non-commuting parities on a random state can give negative symmetrized weights.
  verify::Rng rng(43);
  int flagged = 0;
  for (int k = 0; k < 40; ++k) {
    const SpinRep r = build_spin_rep(2 + k % 5);
    const JointDensity jd = joint_density(parity_observables(r), verify::random_state(r.two_j, rng), Vec3(0.4, 0.1, -0.3));
    CHECK(jd.marginal_defect < 1e-10);
    if (jd.non_normalizable) {
      ++flagged;
      CHECK(jd.min_probability < -1e-9);
      CHECK(std::isnan(jd.cfi(0, 0)));
      CHECK(r.two_j % 2 == 1);
    } else {
      CHECK(jd.min_probability >= -1e-9);
    }
  }
  MESSAGE("flagged " << flagged << " of 40");
}
