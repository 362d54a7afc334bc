#pragma once

#include <string>
#include <vector>

#include "su2m/numerics.hpp"
#include "su2m/spinrep.hpp"

namespace su2m {

enum class GroupKind { A4Tetrahedral, S3Prism, Custom };

std::string group_name(GroupKind kind);

struct FiniteGroupRep {
  GroupKind kind = GroupKind::Custom;
  std::string name;
  std::vector<CMatrix> elements;  // elements[0] is the identity
  std::vector<CMatrix> generators;
  std::vector<std::string> generator_descriptions;

  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements.front().rows()); }
  std::size_t order() const { return elements.size(); }
};

// Closure of the generators by breadth-first products; elements equal when max entry
// difference < dedup_tol. Throws ClosureOverflow past 4 * expected_order elements.
FiniteGroupRep close_group(GroupKind kind, std::string name, std::vector<CMatrix> generators,
                           std::vector<std::string> descriptions, std::size_t expected_order,
                           double dedup_tol = 1e-9);

// A4: G1 = exp(i 2pi/3 (Jx+Jy+Jz)/sqrt3), G2 = exp(-i pi Jz).
// S3: G1 = exp(i 2pi/3 Jz), G2 = exp(i pi Jx). Integer J only.
FiniteGroupRep build_group(GroupKind kind, const SpinRep& rep);

FiniteGroupRep build_custom_group(std::string name, std::vector<CMatrix> generators,
                                  std::vector<std::string> descriptions, std::size_t expected_order);

struct TrivialIrrepData {
  CMatrix projector;
  int multiplicity = 0;
  std::vector<CVector> basis;  // orthonormal, each fixed by every element
};

TrivialIrrepData trivial_irrep(const FiniteGroupRep& group);

// (1/6)[2J+1 + 3(-1)^J + 2 sin(pi(2J+1)/3)/sin(pi/3)]
int s3_multiplicity_formula(int j);

// Pi |psi> renormalized; ZeroProjection below 1e-10.
CVector twirl(const FiniteGroupRep& group, const CVector& psi);
ProbeState twirl(const FiniteGroupRep& group, const ProbeState& state);

// Multiply by a phase so the largest-magnitude entry is real positive.
CVector fix_global_phase(const CVector& v);

}  // namespace su2m
