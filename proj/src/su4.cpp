#include "su2m/su4.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "su2m/error.hpp"

namespace su2m {

CMatrix matrix_unit(int i, int j, int d) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

namespace {

CMatrix x_gen(int i, int j) { return matrix_unit(i, j) + matrix_unit(j, i); }

// Signs of Z^dag X_i Z = s_i X_i.
constexpr std::array<double, 4> kZSigns{-1.0, 1.0, 1.0, -1.0};

CMatrix defining_w() {
  CMatrix w = CMatrix::Zero(4, 4);
  w(0, 1) = 1.0;
  w(1, 3) = 1.0;
  w(2, 0) = 1.0;
  w(3, 2) = 1.0;
  return w;
}

CMatrix defining_z() {
  CMatrix h = matrix_unit(0, 0) - matrix_unit(1, 1) - matrix_unit(2, 2) - matrix_unit(3, 3);
  return unitary_exp(h, kPi / 2.0);
}

std::array<CMatrix, 4> defining_generators() { return {x_gen(0, 1), x_gen(1, 3), x_gen(2, 3), x_gen(0, 2)}; }

// Orthonormal basis of Sym^n(C^4) inside (C^4)^{(x) n}: one column per occupation pattern.
CMatrix symmetric_isometry(int n) {
  long total = 1;
  for (int k = 0; k < n; ++k) total *= 4;
  std::map<std::array<int, 4>, std::vector<long>> patterns;
  for (long flat = 0; flat < total; ++flat) {
    std::array<int, 4> occ{0, 0, 0, 0};
    long rem = flat;
    for (int k = 0; k < n; ++k) {
      ++occ[rem % 4];
      rem /= 4;
    }
    patterns[occ].push_back(flat);
  }
  CMatrix b = CMatrix::Zero(total, static_cast<Eigen::Index>(patterns.size()));
  Eigen::Index col = 0;
  // Reverse lexicographic order puts |n,0,0,0> first.
  for (auto it = patterns.rbegin(); it != patterns.rend(); ++it, ++col) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(it->second.size()));
    for (long flat : it->second) b(flat, col) = amp;
  }
  return b;
}

// n-fold tensor power action of a Lie algebra element: sum over slots.
CMatrix algebra_power(const CMatrix& x, int n) {
  const CMatrix id = CMatrix::Identity(4, 4);
  CMatrix total;
  for (int slot = 0; slot < n; ++slot) {
    CMatrix term = slot == 0 ? x : id;
    for (int k = 1; k < n; ++k) term = kron(term, k == slot ? x : id);
    total = slot == 0 ? term : CMatrix(total + term);
  }
  return total;
}

CMatrix group_power(const CMatrix& g, int n) {
  CMatrix out = g;
  for (int k = 1; k < n; ++k) out = kron(out, g);
  return out;
}

}  // namespace

std::string su4_rep_name(Su4RepKind kind) {
  switch (kind) {
    case Su4RepKind::Defining: return "defining";
    case Su4RepKind::TensorSquare: return "tensor_square";
    case Su4RepKind::SymmetricSquare: return "sym2";
    case Su4RepKind::SymmetricFourth: return "sym4";
  }
  return "defining";
}

Su4Problem build_su4_problem() {
  Su4Problem p;
  p.generators = defining_generators();
  p.w = defining_w();
  p.z = defining_z();
  p.group = build_custom_group("G_su4_defining", {p.w, p.z}, {"W", "Z"}, 64);
  return p;
}

Su4Rep build_su4_rep(Su4RepKind kind) {
  int power = 1;
  bool symmetric = false;
  switch (kind) {
    case Su4RepKind::Defining: power = 1; break;
    case Su4RepKind::TensorSquare: power = 2; break;
    case Su4RepKind::SymmetricSquare: power = 2; symmetric = true; break;
    case Su4RepKind::SymmetricFourth: power = 4; symmetric = true; break;
  }
  CMatrix b;
  if (symmetric) b = symmetric_isometry(power);
  auto restrict = [&](const CMatrix& m) -> CMatrix { return symmetric ? CMatrix(b.adjoint() * m * b) : m; };

  Su4Rep rep;
  rep.kind = kind;
  const auto defining = defining_generators();
  for (int i = 0; i < 4; ++i) rep.generators[i] = restrict(algebra_power(defining[i], power));
  rep.w = restrict(group_power(defining_w(), power));
  rep.z = restrict(group_power(defining_z(), power));
  rep.dim = static_cast<int>(rep.w.rows());

  rep.casimir = CMatrix::Zero(rep.dim, rep.dim);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const CMatrix eij = restrict(algebra_power(matrix_unit(i, j), power));
      const CMatrix eji = restrict(algebra_power(matrix_unit(j, i), power));
      rep.casimir += 2.0 * eij * eji;
    }
  }
  rep.casimir_value = rep.casimir(0, 0).real();
  return rep;
}

Su4Relations su4_relations(const Su4Rep& rep) {
  Su4Relations r;
  const auto n = rep.dim;
  const CMatrix id = CMatrix::Identity(n, n);
  for (int i = 0; i < 4; ++i) {
    const CMatrix& x = rep.generators[i];
    r.w_cycle = std::max(r.w_cycle, max_abs(CMatrix(rep.w.adjoint() * x * rep.w - rep.generators[(i + 1) % 4])));
    r.z_action = std::max(r.z_action, max_abs(CMatrix(rep.z.adjoint() * x * rep.z - kZSigns[i] * x)));
  }
  auto pow4 = [](const CMatrix& m) {
    const CMatrix m2 = m * m;
    return CMatrix(m2 * m2);
  };
  const CMatrix zw4 = pow4(rep.z * rep.w);
  r.w4 = max_abs(CMatrix(pow4(rep.w) - id));
  r.z4 = max_abs(CMatrix(pow4(rep.z) - id));
  r.zw4 = max_abs(CMatrix(zw4 - id));
  r.zw4_central = max_abs(CMatrix(zw4 + id));
  for (int i = 0; i < 4; ++i) {
    const CMatrix& x = rep.generators[i];
    r.adjoint_zw4 = std::max(r.adjoint_zw4, max_abs(CMatrix(zw4.adjoint() * x * zw4 - x)));
  }
  return r;
}

FiniteGroupRep su4_group(const Su4Rep& rep) {
  return build_custom_group("G_su4_" + su4_rep_name(rep.kind), {rep.w, rep.z}, {"W", "Z"}, 64);
}

RMatrix su4_qfim(const std::array<CMatrix, 4>& generators, const CVector& psi) {
  std::array<CVector, 4> v;
  Eigen::Vector4d mean;
  for (int i = 0; i < 4; ++i) {
    if (generators[i].cols() != psi.size()) throw Error(ErrorCode::DimensionMismatch, "generator and state dims differ");
    v[i] = generators[i] * psi;
    mean(i) = psi.dot(v[i]).real();
  }
  RMatrix f(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) f(i, j) = 4.0 * (v[i].dot(v[j]).real() - mean(i) * mean(j));
  }
  return 0.5 * (f + f.transpose());
}

Su4ConditionReport su4_conditions(const std::array<CMatrix, 4>& generators, const CVector& psi, double casimir_value) {
  std::array<CVector, 4> v;
  Su4ConditionReport r;
  for (int i = 0; i < 4; ++i) {
    if (generators[i].cols() != psi.size()) throw Error(ErrorCode::DimensionMismatch, "generator and state dims differ");
    v[i] = generators[i] * psi;
    r.first_moments(i) = psi.dot(v[i]).real();
    r.squares(i) = v[i].squaredNorm();
  }
  r.a = r.squares.mean();
  r.spread = (r.squares.array() - r.a).abs().maxCoeff();
  for (int i = 0; i < 4; ++i) r.adjacent(i) = v[i].dot(v[(i + 1) % 4]).real();
  for (int i = 0; i < 2; ++i) r.opposite(i) = v[i].dot(v[i + 2]).real();
  r.max_residual = std::max({r.first_moments.cwiseAbs().maxCoeff(), r.spread, r.adjacent.cwiseAbs().maxCoeff(),
                             r.opposite.cwiseAbs().maxCoeff()});
  r.a_upper_bound = casimir_value / 4.0;
  return r;
}

CirculantFit circulant_fit(const RMatrix& f) {
  if (f.rows() != 4 || f.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "circulant fit needs a 4x4 matrix");
  CirculantFit c;
  for (int i = 0; i < 4; ++i) {
    c.a += f(i, i) / 4.0;
    c.b += (f(i, (i + 1) % 4) + f((i + 1) % 4, i)) / 8.0;
    c.c += f(i, (i + 2) % 4) / 4.0;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int k = ((j - i) % 4 + 4) % 4;
      const double model = k == 0 ? c.a : (k == 2 ? c.c : c.b);
      c.deviation = std::max(c.deviation, std::abs(f(i, j) - model));
    }
  }
  return c;
}

double su4_f(double a, double b, double c) { return 2.0 / (a - c) + 1.0 / (a + 2.0 * b + c) + 1.0 / (a - 2.0 * b + c); }

Eigen::Vector3d su4_f_gradient(double a, double b, double c, double h) {
  return {(su4_f(a + h, b, c) - su4_f(a - h, b, c)) / (2.0 * h), (su4_f(a, b + h, c) - su4_f(a, b - h, c)) / (2.0 * h),
          (su4_f(a, b, c + h) - su4_f(a, b, c - h)) / (2.0 * h)};
}

CVector su4_entangled_probe() {
  CVector psi = CVector::Zero(16);
  for (int k = 0; k < 4; ++k) psi(5 * k) = 0.5;
  return psi;
}

std::array<CMatrix, 4> su4_tensor_generators(const std::array<CMatrix, 4>& defining) {
  const CMatrix id = CMatrix::Identity(4, 4);
  return {kron(defining[0], id), kron(defining[1], id), kron(defining[2], id), kron(defining[3], id)};
}

}  // namespace su2m
