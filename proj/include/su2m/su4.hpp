#pragma once

#include <array>
#include <string>

#include "su2m/groups.hpp"
#include "su2m/numerics.hpp"

namespace su2m {

// Defining-rep data: X0..X3 = X12, X24, X34, X13 and the symmetries W, Z.
struct Su4Problem {
  std::array<CMatrix, 4> generators;
  CMatrix w;
  CMatrix z;
  FiniteGroupRep group;
};

// E_ij with 0-based i, j.
CMatrix matrix_unit(int i, int j, int d = 4);

Su4Problem build_su4_problem();

enum class Su4RepKind { Defining, TensorSquare, SymmetricSquare, SymmetricFourth };

std::string su4_rep_name(Su4RepKind kind);

// A representation of u(4) with the problem's generators, symmetries and Casimir.
struct Su4Rep {
  Su4RepKind kind = Su4RepKind::Defining;
  int dim = 4;
  std::array<CMatrix, 4> generators;
  CMatrix w;
  CMatrix z;
  CMatrix casimir;           // c2 = 2 sum_ij E_ij E_ji
  double casimir_value = 0;  // c2 is this multiple of I
};

Su4Rep build_su4_rep(Su4RepKind kind);

struct Su4Relations {
  double w_cycle = 0.0;       // max |W^dag X_i W - X_{i+1}|
  double z_action = 0.0;      // max |Z^dag X_i Z -/+ X_i|
  double w4 = 0.0;            // |W^4 - I|
  double z4 = 0.0;            // |Z^4 - I|
  double zw4 = 0.0;           // |(ZW)^4 - I|
  double zw4_central = 0.0;   // |(ZW)^4 + I|
  double adjoint_zw4 = 0.0;   // |(ZW)^-4 X_i (ZW)^4 - X_i|
};

Su4Relations su4_relations(const Su4Rep& rep);

FiniteGroupRep su4_group(const Su4Rep& rep);

// F(0)_ij = 2 <[X_i - <X_i>, X_j - <X_j>]_+>
RMatrix su4_qfim(const std::array<CMatrix, 4>& generators, const CVector& psi);

struct Su4ConditionReport {
  Eigen::Vector4d first_moments = Eigen::Vector4d::Zero();
  Eigen::Vector4d squares = Eigen::Vector4d::Zero();   // <X_i^2>
  double a = 0.0;                                      // mean of <X_i^2>
  double spread = 0.0;                                 // max |<X_i^2> - a|
  Eigen::Vector4d adjacent = Eigen::Vector4d::Zero();  // sym <X_i X_{i+1}>
  Eigen::Vector2d opposite = Eigen::Vector2d::Zero();  // sym <X_i X_{i+2}>, i = 0, 1
  double max_residual = 0.0;
  double a_upper_bound = 0.0;                          // c2 / 4
};

Su4ConditionReport su4_conditions(const std::array<CMatrix, 4>& generators, const CVector& psi,
                                  double casimir_value);

struct CirculantFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double deviation = 0.0;  // max entry distance from the fitted circulant
};

CirculantFit circulant_fit(const RMatrix& f);

// f(a,b,c) = 2/(a-c) + 1/(a+2b+c) + 1/(a-2b+c), the trace of the circulant inverse.
double su4_f(double a, double b, double c);
Eigen::Vector3d su4_f_gradient(double a, double b, double c, double h = 1e-5);

// Two copies of the defining rep: (1/2) sum_k |k>|k>, generators X_i (x) I.
CVector su4_entangled_probe();
std::array<CMatrix, 4> su4_tensor_generators(const std::array<CMatrix, 4>& defining);

}  // namespace su2m
