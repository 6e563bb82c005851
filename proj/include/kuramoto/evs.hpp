#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "kuramoto/core.hpp"
#include "kuramoto/rng.hpp"

namespace kuramoto {

/// A frequency distribution given by its cdf and inverse cdf; samples are
/// drawn by inverse transform so a counter-based stream fully determines
/// the draw.
struct FrequencyDistribution {
  std::string name;
  std::function<double(double)> cdf;
  std::function<double(double)> inv_cdf;
  bool symmetric = false;

  double sample(CounterRng& rng) const {
    // open-interval uniform keeps inv_cdf away from the endpoints
    const double u = (static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return inv_cdf(u);
  }

  static FrequencyDistribution gaussian();
  static FrequencyDistribution exponential(double lambda);
  static FrequencyDistribution two_sided_exponential(double lambda);
  static FrequencyDistribution uniform01();
  static FrequencyDistribution pareto(double alpha);  // 1 - F = x^-alpha, x >= 1
};

/// Gumbel normalizing pair (a_N, b_N) together with the concentration scale
/// xi_N of the sample range M_N.
struct ScalingSequence {
  double a_n = 0.0;
  double b_n = 0.0;
  double xi_n = 0.0;
};

ScalingSequence scaling_gaussian(int n);
ScalingSequence scaling_exponential(int n, double lambda);
ScalingSequence scaling_two_sided_exponential(int n, double lambda);

// Generic Gumbel-class scaling: b_N = F^-1(1 - 1/N), a_N = q(b_N) with
// q(t) the mean-excess tail integral, evaluated by adaptive quadrature.
// Throws if the tail integral diverges or q(t)/t fails to decay
// ("not Gumbel-class").
ScalingSequence scaling_generic(const FrequencyDistribution& dist, int n);

// Dispatches to the closed-form scalings for the named distributions and to
// scaling_generic otherwise.
ScalingSequence scaling_for(const FrequencyDistribution& dist, int n, double lambda = 1.0);

/// Empirical min-max concentration check: P(|M_N/xi_N - 1| > eps).
struct MmcRow {
  int n = 0;
  double xi = 0.0;
  double p_out_01 = 0.0;  // eps = 0.1
  double p_out_02 = 0.0;  // eps = 0.2
};

struct MmcReport {
  std::vector<MmcRow> rows;
  bool degenerate = false;  // xi_N ~ 0 (deterministic-like distribution)
};

MmcReport mmc_check(const FrequencyDistribution& dist, const std::vector<int>& n_list,
                    int trials, std::uint64_t seed);

/// One point of the synchronization phase-transition curve.
struct TransitionRow {
  int n = 0;
  double kappa = 0.0;
  int trials = 0;
  double p_sync = 0.0;
  double std_error = 0.0;
  bool in_theory_gap = false;  // kappa in [1/2, 1]: no theoretical prediction
};

// For each (N, kappa): draw `trials` frequency vectors iid from dist,
// center to mean zero, and test the order-parameter criterion at coupling
// gamma = kappa * xi_N. Requires trials >= 30.
std::vector<TransitionRow> phase_transition_experiment(
    const FrequencyDistribution& dist, const std::vector<int>& n_list,
    const std::vector<double>& kappa_list, int trials, std::uint64_t seed);

// ---- small statistics helpers (used by the experiment suites) ----

double normal_cdf(double z);
double normal_inv_cdf(double p);

// One-sample Kolmogorov-Smirnov statistic against a cdf, and the asymptotic
// p-value of the statistic at sample size n.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_p_value(double d, std::size_t n);

// Two-sample KS statistic.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// CDF of the sample range of n iid U(0,1) draws: Beta(n-1, 2).
double uniform_range_cdf(int n, double x);

}  // namespace kuramoto
