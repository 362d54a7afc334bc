#include "su2m/groups.hpp"

#include <cmath>
#include <deque>

#include "su2m/error.hpp"

namespace su2m {

std::string group_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::A4Tetrahedral: return "A4_tetrahedral";
    case GroupKind::S3Prism: return "S3_prism";
    case GroupKind::Custom: return "custom";
  }
  return "custom";
}

namespace {

bool same_element(const CMatrix& a, const CMatrix& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

FiniteGroupRep close_group(GroupKind kind, std::string name, std::vector<CMatrix> generators,
                           std::vector<std::string> descriptions, std::size_t expected_order,
                           double dedup_tol) {
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "at least one generator is required");
  const auto d = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) throw Error(ErrorCode::DimensionMismatch, "generator sizes differ");
  }

  FiniteGroupRep group;
  group.kind = kind;
  group.name = std::move(name);
  group.generators = generators;
  group.generator_descriptions = std::move(descriptions);
  group.elements.push_back(CMatrix::Identity(d, d));

  const std::size_t cap = 4 * std::max<std::size_t>(expected_order, 1);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const CMatrix current = group.elements[frontier.front()];
    frontier.pop_front();
    for (const auto& g : generators) {
      CMatrix next = current * g;
      bool seen = false;
      for (const auto& e : group.elements) {
        if (same_element(e, next, dedup_tol)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      group.elements.push_back(std::move(next));
      if (group.elements.size() > cap) {
        throw Error(ErrorCode::ClosureOverflow, group.name + " exceeded " + std::to_string(cap) + " elements");
      }
      frontier.push_back(group.elements.size() - 1);
    }
  }
  return group;
}

FiniteGroupRep build_group(GroupKind kind, const SpinRep& rep) {
  if (rep.two_j % 2 != 0) throw Error(ErrorCode::NotIntegerSpin, "finite groups are built for integer J only");
  switch (kind) {
    case GroupKind::A4Tetrahedral: {
      const CMatrix diag = (rep.jx + rep.jy + rep.jz) / std::sqrt(3.0);
      CMatrix g1 = unitary_exp(diag, -2.0 * kPi / 3.0);
      CMatrix g2 = unitary_exp(rep.jz, kPi);
      return close_group(kind, group_name(kind), {g1, g2},
                         {"exp(i 2pi/3 (Jx+Jy+Jz)/sqrt3)", "exp(-i pi Jz)"}, 12);
    }
    case GroupKind::S3Prism: {
      CMatrix g1 = unitary_exp(rep.jz, -2.0 * kPi / 3.0);
      CMatrix g2 = unitary_exp(rep.jx, -kPi);
      return close_group(kind, group_name(kind), {g1, g2}, {"exp(i 2pi/3 Jz)", "exp(i pi Jx)"}, 6);
    }
    case GroupKind::Custom: break;
  }
  throw Error(ErrorCode::InvalidArgument, "custom groups need explicit generators");
}

FiniteGroupRep build_custom_group(std::string name, std::vector<CMatrix> generators,
                                  std::vector<std::string> descriptions, std::size_t expected_order) {
  return close_group(GroupKind::Custom, std::move(name), std::move(generators), std::move(descriptions),
                     expected_order);
}

CVector fix_global_phase(const CVector& v) {
  Eigen::Index best = 0;
  double mag = -1.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    // Ties resolved toward the lower index so output is deterministic.
    if (std::abs(v(k)) > mag + 1e-12) {
      mag = std::abs(v(k));
      best = k;
    }
  }
  if (mag <= 0.0) return v;
  return v * std::conj(v(best) / std::abs(v(best)));
}

TrivialIrrepData trivial_irrep(const FiniteGroupRep& group) {
  const int d = group.dim();
  TrivialIrrepData out;
  out.projector = CMatrix::Zero(d, d);
  for (const auto& g : group.elements) out.projector += g;
  out.projector /= static_cast<double>(group.order());

  const double trace = out.projector.trace().real();
  const double rounded = std::round(trace);
  if (std::abs(trace - rounded) > 1e-6) {
    throw Error(ErrorCode::NonIntegerTrace, "tr Pi = " + std::to_string(trace));
  }
  out.multiplicity = static_cast<int>(rounded);

  // Pi is Hermitian because the element list is closed under inverses.
  const HermitianEig eig = herm_eig(0.5 * (out.projector + out.projector.adjoint()), 1e-9);
  for (Eigen::Index k = eig.eigenvalues.size() - 1; k >= 0; --k) {
    if (eig.eigenvalues(k) < 0.5) break;
    out.basis.push_back(fix_global_phase(eig.eigenvectors.col(k)));
  }
  return out;
}

int s3_multiplicity_formula(int j) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "J must be non-negative");
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  const double value =
      (2.0 * j + 1.0 + 3.0 * sign + 2.0 * std::sin(kPi * (2.0 * j + 1.0) / 3.0) / std::sin(kPi / 3.0)) / 6.0;
  return static_cast<int>(std::lround(value));
}

CVector twirl(const FiniteGroupRep& group, const CVector& psi) {
  if (psi.size() != group.dim()) throw Error(ErrorCode::DimensionMismatch, "state and group dims differ");
  CVector acc = CVector::Zero(psi.size());
  for (const auto& g : group.elements) acc += g * psi;
  acc /= static_cast<double>(group.order());
  const double n = acc.norm();
  if (n < 1e-10) throw Error(ErrorCode::ZeroProjection, "state has no trivial-irrep component");
  return acc / n;
}

ProbeState twirl(const FiniteGroupRep& group, const ProbeState& state) {
  return {state.two_j, state.tensor, twirl(group, state.amps)};
}

}  // namespace su2m
