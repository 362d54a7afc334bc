#pragma once

#include <array>
#include <string>

#include "su2m/numerics.hpp"

namespace su2m {

enum class Axis { X = 0, Y = 1, Z = 2 };

// Spin-J irrep in the |J, m> basis, m = J, J-1, ..., -J.
struct SpinRep {
  int two_j = 0;
  CMatrix jx, jy, jz;

  int dim() const { return two_j + 1; }
  double j() const { return 0.5 * two_j; }
  double casimir() const { return j() * (j() + 1.0); }
  const CMatrix& generator(int axis) const;
  const CMatrix& generator(Axis axis) const { return generator(static_cast<int>(axis)); }
};

SpinRep build_spin_rep(int two_j);

// Index of |J, m> in the basis for doubled magnetic number two_m.
int basis_index(int two_j, int two_m);

// exp(-i theta . J)
CMatrix rotation(const SpinRep& rep, const Vec3& theta);
CMatrix axis_rotation(const SpinRep& rep, Axis axis, double angle);

// Pure state on one spin-J rep, or on two copies (tensor = true, first factor probed).
struct ProbeState {
  int two_j = 0;
  bool tensor = false;
  CVector amps;

  int rep_dim() const { return two_j + 1; }
  int dim() const { return tensor ? rep_dim() * rep_dim() : rep_dim(); }
};

// Throws DimensionMismatch or ZeroNorm when amps do not fit the declared shape or norm.
void validate_state(const ProbeState& state, double tol = 1e-12);

ProbeState make_state(int two_j, const CVector& amps, bool tensor = false);

// Generators acting on the state's space: J_i, or J_i (x) I for two-copy probes.
std::array<CMatrix, 3> probe_generators(const SpinRep& rep, bool tensor);

// Stereographic coordinate; the south pole is an explicit case.
class SpherePoint {
 public:
  static SpherePoint finite(cplx zeta) { return SpherePoint(zeta, false); }
  static SpherePoint infinity() { return SpherePoint(0.0, true); }
  bool is_infinity() const { return infinity_; }
  cplx zeta() const { return zeta_; }

 private:
  SpherePoint(cplx z, bool inf) : zeta_(z), infinity_(inf) {}
  cplx zeta_;
  bool infinity_;
};

ProbeState coherent_state(const SpinRep& rep, SpherePoint point);
ProbeState coherent_state(const SpinRep& rep, cplx zeta);

struct MomentTable {
  Vec3 first = Vec3::Zero();                  // <J_i>
  Eigen::Matrix3cd second = Eigen::Matrix3cd::Zero();  // <J_i J_l>
  Eigen::Matrix3d jordan = Eigen::Matrix3d::Zero();    // <J_i J_l + J_l J_i> / 2
};

MomentTable collective_moments(const SpinRep& rep, const ProbeState& state);
MomentTable collective_moments(const ProbeState& state);

struct QubitMarginals {
  Eigen::Matrix2cd rho1;
  Eigen::Matrix4cd rho2;  // basis |00>, |01>, |10>, |11>, |0> = spin up
};

QubitMarginals reduced_qubit_states(const ProbeState& state);

// Pauli matrices sigma_x, sigma_y, sigma_z.
const std::array<Eigen::Matrix2cd, 3>& pauli();

}  // namespace su2m
