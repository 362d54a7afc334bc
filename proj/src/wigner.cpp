#include "su2m/wigner.hpp"

#include <algorithm>
#include <cmath>

#include "su2m/error.hpp"

namespace su2m {

namespace {

long double log_fact(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
  if (two_j1 < 0 || two_j2 < 0 || two_J < 0) return 0.0;
  if (two_m1 + two_m2 != two_M) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_M) > two_J) return 0.0;
  if ((two_j1 + two_m1) % 2 || (two_j2 + two_m2) % 2 || (two_J + two_M) % 2) return 0.0;
  if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2 || (two_j1 + two_j2 + two_J) % 2) return 0.0;

  // Integer combinations appearing in the Racah formula.
  const int a = (two_j1 + two_j2 - two_J) / 2;
  const int b = (two_j1 - two_m1) / 2;
  const int c = (two_j2 + two_m2) / 2;
  const int d = (two_J - two_j2 + two_m1) / 2;
  const int e = (two_J - two_j1 - two_m2) / 2;

  const long double log_pref =
      0.5L * (std::log(static_cast<long double>(two_J + 1)) + log_fact((two_J + two_j1 - two_j2) / 2) +
              log_fact((two_J - two_j1 + two_j2) / 2) + log_fact(a) - log_fact((two_j1 + two_j2 + two_J) / 2 + 1) +
              log_fact((two_J + two_M) / 2) + log_fact((two_J - two_M) / 2) + log_fact(b) +
              log_fact((two_j1 + two_m1) / 2) + log_fact((two_j2 - two_m2) / 2) + log_fact(c));

  const int k_min = std::max({0, -d, -e});
  const int k_max = std::min({a, b, c});
  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const long double log_term = log_pref - (log_fact(k) + log_fact(a - k) + log_fact(b - k) + log_fact(c - k) +
                                             log_fact(d + k) + log_fact(e + k));
    sum += (k % 2 ? -1.0L : 1.0L) * std::exp(log_term);
  }
  return static_cast<double>(sum);
}

CMatrix spherical_tensor(int two_j, int k, int q) {
  if (k < 0 || k > two_j || std::abs(q) > k) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= 2J and |q| <= k");
  const int d = two_j + 1;
  const double scale = std::sqrt((2.0 * k + 1.0) / (two_j + 1.0));
  CMatrix t = CMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const int two_m = two_j - 2 * col;
    const int two_mp = two_m + 2 * q;
    if (std::abs(two_mp) > two_j) continue;
    const int row = (two_j - two_mp) / 2;
    t(row, col) = scale * clebsch_gordan(two_j, two_m, 2 * k, 2 * q, two_j, two_mp);
  }
  return t;
}

cplx spherical_harmonic(int k, int q, double theta, double phi) {
  const int aq = std::abs(q);
  const cplx pos = std::sph_legendre(k, aq, theta) * std::polar(1.0, aq * phi);
  if (q >= 0) return pos;
  return (aq % 2 ? -1.0 : 1.0) * std::conj(pos);
}

WignerExpansion wigner_expansion(const CMatrix& rho, int two_j) {
  if (rho.rows() != two_j + 1 || rho.cols() != two_j + 1) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix does not match 2J + 1");
  }
  WignerExpansion w;
  w.two_j = two_j;
  w.coeffs.resize(two_j + 1);
  for (int k = 0; k <= two_j; ++k) {
    w.coeffs[k].resize(2 * k + 1);
    for (int q = -k; q <= k; ++q) {
      // tr(rho T^dagger) = sum_ab rho_ab conj(T_ab)
      w.coeffs[k][q + k] = (rho.array() * spherical_tensor(two_j, k, q).array().conjugate()).sum();
    }
  }
  return w;
}

WignerExpansion wigner_expansion(const ProbeState& state) {
  if (state.tensor) throw Error(ErrorCode::DimensionMismatch, "Wigner functions need a single-rep state");
  return wigner_expansion(CMatrix(state.amps * state.amps.adjoint()), state.two_j);
}

cplx wigner_value_complex(const WignerExpansion& w, double theta, double phi) {
  cplx sum = 0.0;
  for (int k = 0; k <= w.two_j; ++k) {
    for (int q = -k; q <= k; ++q) sum += w.coeffs[k][q + k] * spherical_harmonic(k, q, theta, phi);
  }
  return std::sqrt(4.0 * kPi / (w.two_j + 1.0)) * sum;
}

double wigner_value(const WignerExpansion& w, double theta, double phi) { return wigner_value_complex(w, theta, phi).real(); }

WignerGrid spin_wigner(const ProbeState& state, int n_theta, int n_phi) {
  if (state.two_j > 40) throw Error(ErrorCode::InvalidArgument, "Wigner grids are limited to 2J <= 40");
  if (n_theta < 2 || n_phi < 1) throw Error(ErrorCode::InvalidArgument, "need n_theta >= 2 and n_phi >= 1");
  const WignerExpansion w = wigner_expansion(state);
  const int tj = state.two_j;
  WignerGrid g;
  g.two_j = tj;
  g.thetas.resize(n_theta);
  g.phis.resize(n_phi);
  for (int i = 0; i < n_theta; ++i) g.thetas(i) = kPi * i / (n_theta - 1.0);
  for (int j = 0; j < n_phi; ++j) g.phis(j) = 2.0 * kPi * j / n_phi;
  g.values.resize(n_theta, n_phi);

  const double pref = std::sqrt(4.0 * kPi / (tj + 1.0));
  std::vector<cplx> fourier(2 * tj + 1);
  for (int i = 0; i < n_theta; ++i) {
    // Collect the theta-dependent part per azimuthal order q, then sum the Fourier series.
    std::fill(fourier.begin(), fourier.end(), cplx(0.0));
    for (int k = 0; k <= tj; ++k) {
      for (int q = -k; q <= k; ++q) {
        fourier[q + tj] += w.coeffs[k][q + k] * spherical_harmonic(k, q, g.thetas(i), 0.0);
      }
    }
    for (int j = 0; j < n_phi; ++j) {
      cplx sum = 0.0;
      for (int q = -tj; q <= tj; ++q) sum += fourier[q + tj] * std::polar(1.0, q * g.phis(j));
      sum *= pref;
      g.values(i, j) = sum.real();
      g.max_imag = std::max(g.max_imag, std::abs(sum.imag()));
    }
  }
  return g;
}

RVector clenshaw_curtis_weights(int n_theta) {
  const int n = n_theta - 1;
  RVector w(n_theta);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      const double b = (2 * j == n) ? 1.0 : 2.0;
      s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * kPi / n);
    }
    const double c = (k == 0 || k == n) ? 1.0 : 2.0;
    w(k) = c / n * (1.0 - s);
  }
  return w;
}

double grid_overlap(const WignerGrid& a, const WignerGrid& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols() || a.two_j != b.two_j) {
    throw Error(ErrorCode::DimensionMismatch, "Wigner grids differ in shape or spin");
  }
  const RVector wt = clenshaw_curtis_weights(static_cast<int>(a.values.rows()));
  const double dphi = 2.0 * kPi / a.values.cols();
  double total = 0.0;
  for (Eigen::Index i = 0; i < a.values.rows(); ++i) {
    total += wt(i) * (a.values.row(i).array() * b.values.row(i).array()).sum() * dphi;
  }
  return (a.two_j + 1.0) / (4.0 * kPi) * total;
}

double grid_normalization(const WignerGrid& a) {
  const RVector wt = clenshaw_curtis_weights(static_cast<int>(a.values.rows()));
  const double dphi = 2.0 * kPi / a.values.cols();
  double total = 0.0;
  for (Eigen::Index i = 0; i < a.values.rows(); ++i) total += wt(i) * a.values.row(i).sum() * dphi;
  return (a.two_j + 1.0) / (4.0 * kPi) * total;
}

}  // namespace su2m
