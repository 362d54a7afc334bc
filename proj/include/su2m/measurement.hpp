#pragma once

#include <optional>
#include <string>
#include <vector>

#include "su2m/numerics.hpp"
#include "su2m/spinrep.hpp"

namespace su2m {

struct MeasurementScheme {
  std::vector<CMatrix> projectors;
  std::vector<CMatrix> isometries;  // orthonormal columns spanning each projector's range
  std::vector<std::string> labels;
};

// Completeness and orthogonality defects of a scheme.
struct SchemeDefects {
  double idempotence = 0.0;
  double hermiticity = 0.0;
  double orthogonality = 0.0;
  double completeness = 0.0;
  double max() const;
};

SchemeDefects scheme_defects(const MeasurementScheme& scheme);

// [|psi><psi|, P_1, P_2, P_3, Q]; NotOptimalProbe unless the condition residual is below tol.
MeasurementScheme kl_scheme(const ProbeState& state, double tol = 1e-8);

RVector outcome_probabilities(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta);

// Outcome probabilities and their analytic gradient (rows: outcomes, cols: parameters).
struct OutcomeTable {
  RVector p;
  RMatrix dp;
};

OutcomeTable outcome_table(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta);

// sum_k dp_k dp_k^T / p_k with outcomes below p_floor pruned; SingularOutcome if a pruned
// outcome still has gradient above grad_tol.
RMatrix fisher_from_table(const RVector& p, const RMatrix& dp, double p_floor = 1e-14, double grad_tol = 1e-10);

RMatrix classical_fim(const MeasurementScheme& scheme, const ProbeState& state, const Vec3& theta);

struct Spectrum {
  RVector values;
  std::vector<CMatrix> projectors;
  std::vector<CMatrix> isometries;
};

struct ObservableList {
  std::vector<CMatrix> observables;
  std::vector<Spectrum> spectra;
  std::vector<std::string> labels;
};

// Spectral decompositions with eigenvalues closer than merge_tol merged.
ObservableList make_observable_list(std::vector<CMatrix> observables, std::vector<std::string> labels,
                                    double merge_tol = 1e-8);

// O_i = exp(i pi (N/2 - J_i)), optionally as O_i (x) I.
ObservableList parity_observables(const SpinRep& rep, bool tensor = false);

ObservableList observables_from_scheme(const MeasurementScheme& scheme);

struct JointDensity {
  std::vector<int> shape;  // spectrum size per observable, first index slowest
  RVector p;
  RMatrix dp;
  double min_probability = 0.0;
  double marginal_defect = 0.0;  // max |marginal - tr[E rho]|
  double imaginary_defect = 0.0;
  bool non_normalizable = false;  // some p < -1e-9
  RMatrix cfi;                    // NaN-filled when non_normalizable
};

// Symmetrized joint density (1/K!) sum_sigma tr[E^(sigma1) ... E^(sigmaK) rho_theta].
JointDensity joint_density(const ObservableList& obs, const ProbeState& state, const Vec3& theta);

RMatrix classical_fim(const ObservableList& obs, const ProbeState& state, const Vec3& theta);

struct MomentsMatrix {
  RMatrix matrix;
  RMatrix covariance;
  RMatrix mean_gradient;  // K x 3
  RVector means;
  int discarded_directions = 0;  // covariance eigen-directions below the cutoff
  double discarded_gradient = 0.0;  // largest gradient component along a discarded direction
  std::optional<JointDensity> joint;
};

struct MomentsOptions {
  bool joint_density = true;
  double covariance_cutoff = 1e-10;
};

// M = G^T Cov^+ G over covariance directions with eigenvalue above the cutoff.
MomentsMatrix moments_matrix(const ObservableList& obs, const ProbeState& state, const Vec3& theta,
                             const MomentsOptions& options = {});

}  // namespace su2m
