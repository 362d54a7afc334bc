#include "su2m/verify/oracles.hpp"

#include <bit>
#include <cmath>

#include "su2m/error.hpp"
#include "su2m/metrology.hpp"

namespace su2m::verify {

CVector random_vector(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int k = 0; k < dim; ++k) v(k) = cplx(normal(rng), normal(rng));
  return v / v.norm();
}

CMatrix random_hermitian(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(normal(rng), normal(rng));
  }
  return 0.5 * (a + a.adjoint());
}

ProbeState random_state(int two_j, Rng& rng, bool tensor) {
  const int d = tensor ? (two_j + 1) * (two_j + 1) : two_j + 1;
  return {two_j, tensor, random_vector(d, rng)};
}

CVector dicke_embedding(const ProbeState& state) {
  if (state.tensor) throw Error(ErrorCode::NotSymmetricContext, "embedding needs a single-rep state");
  const int n = state.two_j;
  const long dim = 1L << n;
  CVector out = CVector::Zero(dim);
  for (long b = 0; b < dim; ++b) {
    const int k = std::popcount(static_cast<unsigned long>(b));
    const double binom = std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
    out(b) = state.amps(k) / std::sqrt(binom);
  }
  return out;
}

QubitMarginals brute_force_marginals(const ProbeState& state) {
  const CVector psi = dicke_embedding(state);
  const CMatrix rho = psi * psi.adjoint();
  const std::vector<int> dims(state.two_j, 2);
  QubitMarginals m;
  m.rho1 = partial_trace(rho, dims, {0});
  m.rho2 = partial_trace(rho, dims, {0, 1});
  return m;
}

RMatrix fidelity_qfim(const ProbeState& state, const Vec3& theta, double step) {
  const SpinRep rep = build_spin_rep(state.two_j);
  const auto gens = probe_generators(rep, state.tensor);
  auto evolve = [&](const Vec3& t) {
    const CMatrix h = t(0) * gens[0] + t(1) * gens[1] + t(2) * gens[2];
    return CVector(unitary_exp(h, 1.0) * state.amps);
  };
  const CVector base = evolve(theta);
  auto g = [&](const Vec3& d) { return 1.0 - std::norm(base.dot(evolve(theta + d))); };
  RMatrix hess(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 ei = step * Vec3::Unit(i), ej = step * Vec3::Unit(j);
      hess(i, j) = (g(ei + ej) - g(ei - ej) - g(-ei + ej) + g(-ei - ej)) / (4.0 * step * step);
    }
  }
  return 2.0 * hess;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm1 = std::legendre(n - 1, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double p = std::legendre(n, x), pm1 = std::legendre(n - 1, x);
    dp = n * (x * p - pm1) / (x * x - 1.0);
    nodes[i] = 0.5 * (x + 1.0);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled to [0, 1]
  }
}

std::array<Vec3, 3> quadrature_a_vectors(const Vec3& theta, int two_j, int points) {
  const SpinRep rep = build_spin_rep(two_j);
  std::vector<double> x, w;
  gauss_legendre(points, x, w);
  const CMatrix h = theta(0) * rep.jx + theta(1) * rep.jy + theta(2) * rep.jz;
  const HermitianEig eig = herm_eig(h);
  std::array<Vec3, 3> out;
  const double norm = rep.casimir() * rep.dim() / 3.0;  // tr(J_i^2)
  for (int j = 0; j < 3; ++j) {
    CMatrix acc = CMatrix::Zero(rep.dim(), rep.dim());
    for (int k = 0; k < points; ++k) {
      const CMatrix u = unitary_exp(eig, x[k]);  // e^{-i a H}
      acc += w[k] * (u.adjoint() * rep.generator(j) * u);
    }
    for (int i = 0; i < 3; ++i) out[j](i) = (acc * rep.generator(i)).trace().real() / norm;
  }
  return out;
}

RMatrix finite_difference_cfi(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta,
                              double step) {
  const RVector p = outcome_probabilities(scheme, state, theta);
  RMatrix dp(p.size(), 3);
  for (int j = 0; j < 3; ++j) {
    const Vec3 e = step * Vec3::Unit(j);
    dp.col(j) = (outcome_probabilities(scheme, state, theta + e) - outcome_probabilities(scheme, state, theta - e)) /
                (2.0 * step);
  }
  RMatrix f = RMatrix::Zero(3, 3);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) < 1e-14) continue;
    f += dp.row(k).transpose() * dp.row(k) / p(k);
  }
  return f;
}

CVector prism_six_term(const SpinRep& rep, double xi) {
  const double n = rep.two_j;
  const double t = std::tan(0.5 * xi);
  const double ct = 1.0 / t;
  auto coh = [&](cplx z) { return coherent_state(rep, z).amps; };
  const cplx w1 = std::polar(1.0, -2.0 * kPi / 3.0), w2 = std::polar(1.0, -4.0 * kPi / 3.0);
  CVector sum = coh(t) + std::polar(1.0, kPi * n / 3.0) * coh(t * w1) + std::polar(1.0, 2.0 * kPi * n / 3.0) * coh(t * w2) +
                std::polar(1.0, kPi * n / 2.0) * coh(ct) + std::polar(1.0, kPi * n / 6.0) * coh(ct * std::conj(w1)) +
                std::polar(1.0, -kPi * n / 6.0) * coh(ct * std::conj(w2));
  return sum / sum.norm();
}

Eigen::Matrix3d rodrigues(const Vec3& theta) {
  const double a = theta.norm();
  if (a == 0.0) return Eigen::Matrix3d::Identity();
  const Vec3 k = theta / a;
  Eigen::Matrix3d kx;
  kx << 0, -k(2), k(1), k(2), 0, -k(0), -k(1), k(0), 0;
  return Eigen::Matrix3d::Identity() + std::sin(a) * kx + (1.0 - std::cos(a)) * kx * kx;
}

Vec3 unit_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

void angles(const Vec3& n, double& theta, double& phi) {
  theta = std::acos(std::clamp(n(2) / n.norm(), -1.0, 1.0));
  phi = std::atan2(n(1), n(0));
}

double phase_aligned_distance(const CVector& a, const CVector& b) {
  const cplx ov = b.dot(a);
  const cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace su2m::verify
