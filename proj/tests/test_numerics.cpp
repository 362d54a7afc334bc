#include <doctest.h>

#include "su2m/error.hpp"
#include "su2m/numerics.hpp"
#include "su2m/verify/oracles.hpp"

using namespace su2m;

TEST_CASE("herm_eig on the zero matrix and sigma_z") {
  const HermitianEig z = herm_eig(CMatrix::Zero(2, 2));
  CHECK(z.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs(CMatrix(z.eigenvectors - CMatrix::Identity(2, 2))) == 0.0);

  CMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  const HermitianEig e = herm_eig(sz);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CMatrix a(2, 2);
  a << 0, 1, 0, 0;
  try {
    herm_eig(a);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  CHECK_THROWS_AS(herm_eig(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("herm_eig reconstruction and unitary_exp over a random corpus") {
  verify::Rng rng(1);
  std::uniform_int_distribution<int> dim(2, 40);
  double worst_rec = 0.0, worst_orth = 0.0, worst_unit = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int d = dim(rng);
    const CMatrix a = verify::random_hermitian(d, rng);
    const HermitianEig e = herm_eig(a);
    const CMatrix rec = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() * e.eigenvectors.adjoint();
    worst_rec = std::max(worst_rec, max_abs(CMatrix(rec - a)) / a.norm());
    worst_orth = std::max(worst_orth, unitarity_defect(e.eigenvectors));
    for (int i = 1; i < d; ++i) CHECK(e.eigenvalues(i) >= e.eigenvalues(i - 1));
    worst_unit = std::max(worst_unit, unitarity_defect(unitary_exp(e, 0.37 * k)));
  }
  CHECK(worst_rec < 1e-12);
  CHECK(worst_orth < 1e-12);
  CHECK(worst_unit < 1e-12);
}

TEST_CASE("unitary_exp identities") {
  CMatrix h(2, 2);
  h << 0.5, 0, 0, -0.5;
  CHECK(max_abs(CMatrix(unitary_exp(h, 0.0) - CMatrix::Identity(2, 2))) < 1e-15);
  const CMatrix u = unitary_exp(h, kPi);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -kPi / 2)) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, kPi / 2)) < 1e-15);

  verify::Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = verify::random_hermitian(6, rng);
    const CMatrix lhs = unitary_exp(a, 0.3) * unitary_exp(a, 1.1);
    CHECK(max_abs(CMatrix(lhs - unitary_exp(a, 1.4))) < 1e-11);
  }
}

TEST_CASE("kron and partial_trace") {
  const CMatrix id2 = CMatrix::Identity(2, 2);
  CHECK(max_abs(CMatrix(kron(id2, id2) - CMatrix::Identity(4, 4))) == 0.0);

  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const CMatrix r = partial_trace(bell * bell.adjoint(), {2, 2}, {0});
  CHECK(max_abs(CMatrix(r - 0.5 * CMatrix::Identity(2, 2))) < 1e-15);

  verify::Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const CMatrix a = verify::random_hermitian(3, rng), b = verify::random_hermitian(4, rng);
    const CMatrix ab = kron(a, b);
    CHECK(max_abs(CMatrix(partial_trace(ab, {3, 4}, {0}) - b.trace() * a)) < 1e-12);
    CHECK(max_abs(CMatrix(partial_trace(ab, {3, 4}, {1}) - a.trace() * b)) < 1e-12);
    CHECK(std::abs(partial_trace(ab, {3, 4}, {}).trace() - ab.trace()) < 1e-12);
  }

  // Middle subsystem of three.
  const CMatrix a = verify::random_hermitian(2, rng), b = verify::random_hermitian(3, rng),
                c = verify::random_hermitian(2, rng);
  const CMatrix abc = kron(kron(a, b), c);
  CHECK(max_abs(CMatrix(partial_trace(abc, {2, 3, 2}, {1}) - a.trace() * c.trace() * b)) < 1e-12);
  CHECK(max_abs(CMatrix(partial_trace(abc, {2, 3, 2}, {0, 2}) - b.trace() * kron(a, c))) < 1e-12);
}

TEST_CASE("partial_trace dimension errors") {
  CHECK_THROWS_AS(partial_trace(CMatrix::Identity(4, 4), {2, 3}, {0}), Error);
  CHECK_THROWS_AS(partial_trace(CMatrix::Identity(4, 4), {2, 2}, {1, 0}), Error);
  CHECK_THROWS_AS(partial_trace(CMatrix::Identity(4, 4), {2, 2}, {2}), Error);
}

TEST_CASE("invert_symmetric reports conditioning") {
  RMatrix m(3, 3);
  m << 4, 1, 0, 1, 3, 0, 0, 0, 2;
  const SmallInverse inv = invert_symmetric(m);
  CHECK_FALSE(inv.singular);
  CHECK(max_abs(RMatrix(inv.inverse * m - RMatrix::Identity(3, 3))) < 1e-14);
  CHECK(inv.condition > 1.0);

  RMatrix s = RMatrix::Identity(4, 4);
  s(3, 3) = 1e-12;
  CHECK(invert_symmetric(s).singular);
}
