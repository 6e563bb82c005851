#pragma once

#include "kuramoto/norms.hpp"
#include "kuramoto/simplex.hpp"

namespace kuramoto {

/// Result of the LP hull-membership query: nonnegative coefficients alpha
/// with sum(alpha_i v_i) = y and minimal sum(alpha); inside iff sum <= 1.
struct HullCertificate {
  bool inside = false;
  double objective = 0.0;
  std::vector<double> coefficients;
};

enum class StabilityVerdict { Stable, Unstable, Marginal };

/// Verdict of the kappa/tau stability criterion: a stationary configuration
/// is stable iff all kappa_j = sum_i cos(theta_j - theta_i) are positive and
/// tau = sum_j 1/kappa_j < 2.
struct StabilityReport {
  Vec kappas;
  double tau_sum = 0.0;
  StabilityVerdict verdict = StabilityVerdict::Marginal;
};

inline constexpr double stability_tol = 1e-9;

// Membership in the polytope: closed-form kinds via norm_for(spec, y) <= 1,
// hull-of-union via the LP over the concatenated vertex families.
bool in_polytope(const PolytopeSpec& spec, const FrequencyVector& y);

// Rado's inequalities: y lies in the permutahedron of v iff after sorting
// both descending every prefix sum of y is <= that of v (and totals agree).
bool rado_membership(const FrequencyVector& y, std::span<const double> v);

// Minimal-sum nonnegative representation of y over explicit vertices
// (row-major list of n-vectors). Valid as a membership test because every
// family here is negation-closed, so 0 is in the hull.
HullCertificate hull_membership(const std::vector<Vec>& vertices, const FrequencyVector& y);
HullCertificate hull_membership(const VertexFamily& family, const FrequencyVector& y);

// Vertices of the hull-of-union spec (concatenated member families).
std::vector<Vec> hull_vertices(const PolytopeSpec& spec);

// Mean-field order-parameter root test at coupling gamma: rescale
// w = omega/gamma, then probe g(r) = r - (1/N) sum sqrt(1 - (w_i/r)^2) at
// 20 equally spaced r in [max_i |w_i|, 1]; a nonpositive sample certifies a
// root and hence a stable phase-locked solution.
bool order_param_locking_test(const FrequencyVector& omega, double gamma);

StabilityReport stability_check(const PhaseConfiguration& theta);

// J_ij = cos(theta_j - theta_i) for i != j, J_ii = -sum_{k != i} of the same;
// symmetric with zero row sums (row-major n x n).
std::vector<double> jacobian(const PhaseConfiguration& theta);

// Eigenvalue verdict: stable iff the second-largest eigenvalue of J is below
// -tol (one zero mode from rotation invariance), tol = 1e-8 * n.
StabilityVerdict eig_stability_oracle(const std::vector<double>& jac, int n);

}  // namespace kuramoto
