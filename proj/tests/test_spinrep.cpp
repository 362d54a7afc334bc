#include <doctest.h>

#include <cmath>

#include "su2m/error.hpp"
#include "su2m/spinrep.hpp"
#include "su2m/verify/oracles.hpp"

using namespace su2m;

TEST_CASE("spin-1/2 generators are Pauli halves") {
  const SpinRep r = build_spin_rep(1);
  for (int i = 0; i < 3; ++i) CHECK(max_abs(CMatrix(r.generator(i) - 0.5 * CMatrix(pauli()[i]))) < 1e-15);
}

TEST_CASE("commutators and Casimir for 2J <= 60") {
  const cplx i(0.0, 1.0);
  for (int tj = 0; tj <= 60; ++tj) {
    const SpinRep r = build_spin_rep(tj);
    const double tol = 1e-12 * std::max(1.0, r.casimir());
    CHECK(max_abs(CMatrix(r.jx * r.jy - r.jy * r.jx - i * r.jz)) < tol);
    CHECK(max_abs(CMatrix(r.jy * r.jz - r.jz * r.jy - i * r.jx)) < tol);
    CHECK(max_abs(CMatrix(r.jz * r.jx - r.jx * r.jz - i * r.jy)) < tol);
    const CMatrix c = r.jx * r.jx + r.jy * r.jy + r.jz * r.jz;
    CHECK(max_abs(CMatrix(c - r.casimir() * CMatrix::Identity(r.dim(), r.dim()))) < tol);
    for (int k = 0; k < r.dim(); ++k) CHECK(r.jz(k, k).real() == doctest::Approx(r.j() - k));
  }
  const SpinRep r6 = build_spin_rep(6);
  const CMatrix c = r6.jx * r6.jx + r6.jy * r6.jy + r6.jz * r6.jz;
  CHECK(max_abs(CMatrix(c - 12.0 * CMatrix::Identity(7, 7))) < 1e-12);
}

TEST_CASE("ladder coefficients at J = 4") {
  const SpinRep r = build_spin_rep(8);
  const double j = 4.0;
  for (int k = 1; k < r.dim(); ++k) {
    const double m = j - k;  // <m+1|Jx|m>
    CHECK(std::abs(r.jx(k - 1, k) - 0.5 * std::sqrt(j * (j + 1) - m * (m + 1))) < 1e-14);
  }
}

TEST_CASE("rotations") {
  const SpinRep half = build_spin_rep(1);
  CHECK(max_abs(CMatrix(rotation(half, Vec3::Zero()) - CMatrix::Identity(2, 2))) < 1e-15);
  const CMatrix u = rotation(half, Vec3(0, 0, 0.7));
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.35)) < 1e-14);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, 0.35)) < 1e-14);

  verify::Rng rng(4);
  for (int tj : {2, 4, 6, 8}) {
    const SpinRep r = build_spin_rep(tj);
    const Vec3 n = Vec3(0.3, -0.5, 0.8).normalized();
    CHECK(max_abs(CMatrix(rotation(r, 2.0 * kPi * n) - CMatrix::Identity(r.dim(), r.dim()))) < 1e-11);
    const Vec3 th(0.4, 0.2, -1.1);
    CHECK(max_abs(CMatrix(rotation(r, th).adjoint() - rotation(r, -th))) < 1e-12);
    CHECK(max_abs(CMatrix(rotation(r, Vec3(0, 0, 0.9)) - axis_rotation(r, Axis::Z, 0.9))) < 1e-12);
  }
}

TEST_CASE("coherent states") {
  const SpinRep r = build_spin_rep(20);
  const ProbeState north = coherent_state(r, cplx(0.0));
  CHECK(std::abs(north.amps(0) - 1.0) < 1e-15);
  const ProbeState south = coherent_state(r, SpherePoint::infinity());
  CHECK(std::abs(south.amps(20) - 1.0) < 1e-15);

  const double xi = std::acos(1.0 / std::sqrt(3.0));
  const MomentTable m = collective_moments(r, coherent_state(r, std::tan(xi / 2)));
  CHECK(std::abs(m.first(2) - 10.0 / std::sqrt(3.0)) < 1e-10);

  const SpinRep r5 = build_spin_rep(5);
  const double n = 5.0;
  verify::Rng rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const cplx z1(g(rng), g(rng)), z2(g(rng), g(rng));
    const double lhs = std::norm(coherent_state(r5, z1).amps.dot(coherent_state(r5, z2).amps));
    const double rhs = std::pow(((1.0 + std::conj(z1) * z2) * (1.0 + z1 * std::conj(z2))).real() /
                                    ((1.0 + std::norm(z1)) * (1.0 + std::norm(z2))),
                                n);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("collective moments") {
  const SpinRep r = build_spin_rep(6);
  CVector top = CVector::Zero(7);
  top(0) = 1.0;
  const MomentTable m = collective_moments(r, {6, false, top});
  CHECK(m.first(2) == doctest::Approx(3.0));
  CHECK(m.jordan(2, 2) == doctest::Approx(9.0));
  CHECK(m.jordan(0, 0) == doctest::Approx(1.5));
  CHECK(m.jordan(1, 1) == doctest::Approx(1.5));

  verify::Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const MomentTable t = collective_moments(r, verify::random_state(6, rng));
    CHECK(t.jordan.trace() == doctest::Approx(12.0));
  }
}

TEST_CASE("reduced qubit states match the Dicke embedding") {
  verify::Rng rng(7);
  double worst = 0.0;
  for (int tj = 2; tj <= 6; ++tj) {
    for (int k = 0; k < 50; ++k) {
      const ProbeState s = verify::random_state(tj, rng);
      const QubitMarginals lib = reduced_qubit_states(s);
      const QubitMarginals brute = verify::brute_force_marginals(s);
      worst = std::max({worst, (lib.rho1 - brute.rho1).cwiseAbs().maxCoeff(), (lib.rho2 - brute.rho2).cwiseAbs().maxCoeff()});
      CHECK(std::abs(lib.rho2.trace() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> e(lib.rho2);
      CHECK(e.eigenvalues().minCoeff() > -1e-10);
    }
  }
  CHECK(worst < 1e-10);

  CVector top = CVector::Zero(5);
  top(0) = 1.0;
  const QubitMarginals m = reduced_qubit_states({4, false, top});
  CHECK(std::abs(m.rho1(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(m.rho2(0, 0) - 1.0) < 1e-12);
  CHECK_THROWS_AS(reduced_qubit_states({1, false, CVector::Unit(2, 0)}), Error);
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(validate_state({2, false, CVector::Ones(3)}), Error);
  CHECK_THROWS_AS(validate_state({2, false, CVector::Unit(4, 0)}), Error);
  CHECK_NOTHROW(validate_state({2, true, CVector::Unit(9, 0)}));
  CHECK(basis_index(6, 4) == 1);
  CHECK(basis_index(6, -6) == 6);
}
