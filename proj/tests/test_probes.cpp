#include <doctest.h>

#include <cmath>

#include "su2m/error.hpp"
#include "su2m/groups.hpp"
#include "su2m/metrology.hpp"
#include "su2m/probes.hpp"
#include "su2m/verify/oracles.hpp"

using namespace su2m;

TEST_CASE("GHZ states") {
  const SpinRep r = build_spin_rep(6);
  const ProbeState z = ghz_state(r, Axis::Z);
  CHECK(std::abs(z.amps(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(z.amps(6) - 1.0 / std::sqrt(2.0)) < 1e-15);
  const MomentTable m = collective_moments(r, z);
  CHECK(m.jordan(2, 2) == doctest::Approx(9.0));

  const SpinRep half = build_spin_rep(1);
  const ProbeState x = ghz_state(half, Axis::X);
  CHECK(collective_moments(half, x).jordan(0, 0) == doctest::Approx(0.25));

  for (int tj = 1; tj <= 10; ++tj) {
    const SpinRep rr = build_spin_rep(tj);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      const ProbeState g = ghz_state(rr, a);
      CHECK(std::abs(g.amps.norm() - 1.0) < 1e-12);
      const MomentTable t = collective_moments(rr, g);
      CHECK(t.jordan(int(a), int(a)) == doctest::Approx(rr.j() * rr.j()));
    }
  }
}

TEST_CASE("compass states") {
  const SpinRep r = build_spin_rep(8);
  const ProbeState c = compass_state(r, Vec3::Zero());
  CVector expected = CVector::Zero(9);
  expected(0) = expected(8) = std::sqrt(5.0 / 24.0);
  expected(4) = std::sqrt(7.0 / 12.0);
  CHECK(verify::phase_aligned_distance(c.amps, expected) < 1e-12);

  verify::Rng rng(21);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int k = 0; k < 20; ++k) {
    const ProbeState s = compass_state(build_spin_rep(2 + k % 9), Vec3(u(rng), u(rng), u(rng)));
    CHECK(std::abs(s.amps.norm() - 1.0) < 1e-12);
  }
  CHECK(check_conditions(compass_state(build_spin_rep(6), Vec3::Zero())).max_residual > 0.1);
}

TEST_CASE("compass overlap scan") {
  const auto scan = compass_trivial_overlap_scan({4, 6, 8, 10, 12, 14, 16, 24});
  for (const CompassOverlap& o : scan) {
    if (o.n % 8 == 0)
      CHECK(std::abs(o.overlap - 1.0) < 1e-10);
    else
      CHECK(o.overlap < 1.0 - 1e-6);
  }
  CHECK(compass_overlap_optimized(8).overlap == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tetrahedral states") {
  const SpinRep r3 = build_spin_rep(6);
  const ProbeState t3 = tetrahedral_state(r3);
  CVector minus = CVector::Zero(7);
  minus(1) = 1.0 / std::sqrt(2.0);
  minus(5) = -1.0 / std::sqrt(2.0);
  CHECK(verify::phase_aligned_distance(t3.amps, minus) < 1e-12);

  const ProbeState t4 = tetrahedral_state(build_spin_rep(8));
  CHECK(verify::phase_aligned_distance(t4.amps, compass_state(build_spin_rep(8), Vec3::Zero()).amps) < 1e-12);

  for (int j : {1, 2, 5}) CHECK_THROWS_AS(tetrahedral_state(build_spin_rep(2 * j)), Error);

  for (int j = 0; j <= 20; ++j) {
    if (j == 1 || j == 2 || j == 5) continue;
    const SpinRep r = build_spin_rep(2 * j);
    const ProbeState s = tetrahedral_state(r);
    CHECK(std::abs(s.amps.norm() - 1.0) < 1e-12);
    if (j > 0) CHECK(check_conditions(r, s).max_residual < 1e-10);
  }
}

TEST_CASE("tetrahedral state with coefficients") {
  // J = 6 has a two-dimensional invariant subspace; any combination stays optimal.
  const SpinRep r = build_spin_rep(12);
  const TrivialIrrepData t = trivial_irrep(build_group(GroupKind::A4Tetrahedral, r));
  REQUIRE(t.multiplicity == 2);
  CVector c(2);
  c << cplx(0.6, 0.0), cplx(0.0, 0.8);
  const ProbeState s = tetrahedral_state(r, c);
  CHECK(std::abs(s.amps.norm() - 1.0) < 1e-12);
  CHECK(check_conditions(r, s).max_residual < 1e-10);
}

TEST_CASE("S3 prism states") {
  const double xi = std::acos(1.0 / std::sqrt(3.0));
  const SpinRep r10 = build_spin_rep(20);
  const ProbeState s = s3_prism_state(r10, xi);
  const MomentTable m = collective_moments(r10, s);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(m.jordan(i, i) / (110.0 / 3.0) - 1.0) < 0.02);

  const FiniteGroupRep g = build_group(GroupKind::S3Prism, r10);
  for (const CMatrix& e : g.elements) CHECK((e * s.amps - s.amps).cwiseAbs().maxCoeff() < 1e-10);

  // Pole input: twirl of |J, J>, nonzero only when 3 divides J.
  const SpinRep r6 = build_spin_rep(12);
  CVector top = CVector::Zero(13);
  top(0) = 1.0;
  const CVector tw = twirl(build_group(GroupKind::S3Prism, r6), top);
  CHECK(verify::phase_aligned_distance(s3_prism_state(r6, 0.0).amps, tw) < 1e-12);
  CHECK_THROWS_AS(s3_prism_state(build_spin_rep(8), 0.0), Error);
}

TEST_CASE("fine tuning") {
  const SpinRep r4 = build_spin_rep(8);
  const FiniteGroupRep s3 = build_group(GroupKind::S3Prism, r4);
  const FineTuneResult res = fine_tune_invariant(s3, r4);
  CHECK(res.residual < 1e-8);
  CHECK_FALSE(res.above_tolerance);
  CHECK(std::abs(std::norm(res.state.amps(basis_index(8, 6))) - 10.0 / 27.0) < 1e-8);
  CHECK(std::abs(std::norm(res.state.amps(basis_index(8, -6))) - 10.0 / 27.0) < 1e-8);
  CHECK(std::abs(std::norm(res.state.amps(basis_index(8, 0))) - 7.0 / 27.0) < 1e-8);

  // Restarts from independent seeds agree on the residual.
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    FineTuneOptions o;
    o.seed = seed;
    CHECK(std::abs(fine_tune_invariant(s3, r4, o).residual - res.residual) < 1e-9);
  }
  int good = 0;
  for (double x : res.restart_residuals) good += (x < 1e-9);
  CHECK(good >= 1);

  // Global phase leaves the residual unchanged.
  ProbeState rotated = res.state;
  rotated.amps *= std::polar(1.0, 0.77);
  CHECK(std::abs(check_conditions(r4, rotated).max_residual - res.residual) < 1e-12);

  const SpinRep r3 = build_spin_rep(6);
  const FineTuneResult j3 = fine_tune_invariant(build_group(GroupKind::S3Prism, r3), r3);
  CHECK(j3.above_tolerance);
  CHECK(j3.residual > 1e-3);

  const SpinRep r6 = build_spin_rep(12);
  CHECK(fine_tune_invariant(build_group(GroupKind::A4Tetrahedral, r6), r6).residual < 1e-10);
}

TEST_CASE("maximally entangled probes") {
  const ProbeState bell = maximally_entangled_probe(build_spin_rep(1));
  CHECK(bell.tensor);
  CHECK(std::abs(bell.amps(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(bell.amps(3) - 1.0 / std::sqrt(2.0)) < 1e-15);

  for (int tj = 1; tj <= 40; ++tj) {
    const SpinRep r = build_spin_rep(tj);
    const ProbeState s = maximally_entangled_probe(r);
    CHECK(std::abs(s.amps.norm() - 1.0) < 1e-12);
    CHECK(check_conditions(r, s).max_residual < 1e-12);
  }

  const SpinRep r = build_spin_rep(5);
  const ProbeState s = maximally_entangled_probe(r);
  verify::Rng rng(22);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = verify::random_hermitian(6, rng);
    const CMatrix ai = kron(a, CMatrix(CMatrix::Identity(6, 6)));
    CHECK(std::abs(s.amps.dot(ai * s.amps) - a.trace() / 6.0) < 1e-12);
  }
}
