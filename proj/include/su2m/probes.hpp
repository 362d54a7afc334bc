#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "su2m/groups.hpp"
#include "su2m/spinrep.hpp"

namespace su2m {

// (|m_axis = J> + |m_axis = -J>)/sqrt2; x and y obtained from z by exp(-i pi/2 Jy) and exp(i pi/2 Jx).
ProbeState ghz_state(const SpinRep& rep, Axis axis);

// Normalized sum_l exp(i delta_l) |GHZ_l>.
ProbeState compass_state(const SpinRep& rep, const Vec3& deltas);

struct CompassOverlap {
  int n = 0;
  double overlap = 0.0;
  Vec3 deltas = Vec3::Zero();
};

// ||Pi_A4 |compass(0)>||^2 for each even N.
std::vector<CompassOverlap> compass_trivial_overlap_scan(const std::vector<int>& ns);

// Best overlap over phases: 16^3 grid, then pattern-search refinement.
CompassOverlap compass_overlap_optimized(int n);

ProbeState tetrahedral_state(const SpinRep& rep, const std::optional<CVector>& coefficients = std::nullopt);

// S3 twirl of the coherent state at polar angle xi.
ProbeState s3_prism_state(const SpinRep& rep, double xi);

struct FineTuneOptions {
  int restarts = 10;
  std::uint64_t seed = 20240611;
  double threshold = 1e-8;
};

struct FineTuneResult {
  ProbeState state;
  CVector coefficients;  // over the trivial-irrep basis, phase fixed
  double residual = 0.0; // max condition violation, recomputed from the state
  bool above_tolerance = false;
  std::vector<double> restart_residuals;
};

FineTuneResult fine_tune_invariant(const FiniteGroupRep& group, const SpinRep& rep,
                                   const FineTuneOptions& options = {});

// (2J+1)^{-1/2} sum_m |m>|m>
ProbeState maximally_entangled_probe(const SpinRep& rep);

}  // namespace su2m
