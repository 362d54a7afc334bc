#pragma once

#include <vector>

#include "su2m/numerics.hpp"
#include "su2m/spinrep.hpp"

namespace su2m {

// <j1 m1; j2 m2 | J M> with every argument doubled. Returns 0 when a selection rule fails.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

// Orthonormal spherical tensor T_kq on spin J: <J m'|T_kq|J m> = sqrt((2k+1)/(2J+1)) <J m; k q|J m'>.
CMatrix spherical_tensor(int two_j, int k, int q);

// Y_kq with the Condon-Shortley phase.
cplx spherical_harmonic(int k, int q, double theta, double phi);

struct WignerExpansion {
  int two_j = 0;
  std::vector<std::vector<cplx>> coeffs;  // coeffs[k][q + k] = tr(rho T_kq^dagger)
};

WignerExpansion wigner_expansion(const CMatrix& rho, int two_j);
WignerExpansion wigner_expansion(const ProbeState& state);

// sqrt(4pi/(2J+1)) sum_kq tr(rho T_kq^dagger) Y_kq; imaginary part is rounding only.
cplx wigner_value_complex(const WignerExpansion& w, double theta, double phi);
double wigner_value(const WignerExpansion& w, double theta, double phi);

struct WignerGrid {
  int two_j = 0;
  RVector thetas;  // j pi / (n_theta - 1)
  RVector phis;    // 2 pi k / n_phi
  RMatrix values;  // n_theta x n_phi
  double max_imag = 0.0;
};

WignerGrid spin_wigner(const ProbeState& state, int n_theta, int n_phi);

// Clenshaw-Curtis weights for int_0^pi f sin(theta) dtheta on the grid's polar nodes.
RVector clenshaw_curtis_weights(int n_theta);

// (2J+1)/(4pi) int f g dOmega over the grid.
double grid_overlap(const WignerGrid& a, const WignerGrid& b);
double grid_normalization(const WignerGrid& a);

}  // namespace su2m
