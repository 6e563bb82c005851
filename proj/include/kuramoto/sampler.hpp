#pragma once

#include <cstdint>
#include <functional>

#include "kuramoto/core.hpp"
#include "kuramoto/rng.hpp"

namespace kuramoto {

/// Monte Carlo volume with its empirical standard error. The weight's tail
/// decays like K^-2, so the variance is theoretically borderline; std_error
/// is still reported from the sample variance (see weight_tail_check).
struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// One weighted sample of C_CS_N: the mean-zero projection of a uniform
/// hypercube point, with weight (2 tau_N)^N / (sqrt(N) (2 tau_N - spread)).
struct PokeSample {
  FrequencyVector omega;
  double weight;
};

// Indicator on the mean-zero subspace. Contract: must depend on the
// projection only, and the region it selects must lie inside C_CS_N.
using Indicator = std::function<bool(const FrequencyVector&)>;

// One uniform draw from [-half_width, half_width]^n.
Vec sample_hypercube(int n, double half_width, CounterRng& rng);

// Draws the k-th Poke sample of the (seed) stream.
PokeSample poke_sample(int n, std::uint64_t seed, std::uint64_t index);

// Weighted Monte Carlo estimate of the (N-1)-volume of the indicator's
// region. Deterministic in (n, m_samp, seed) regardless of thread count:
// samples are keyed by index and partial sums are combined in fixed chunk
// order. Requires m_samp >= 1000. half_width sets the sampling cube's half
// side (0 means the default tau_N, whose projection covers C_CS_N); pass a
// larger value for regions that stick out of C_CS_N, e.g. the C_DB ball.
VolumeEstimate poke_estimate(int n, const Indicator& indicator, std::int64_t m_samp,
                             std::uint64_t seed, int threads = 1, double half_width = 0.0);

// Volume of the true phase-locked region via the order-parameter test at
// coupling gamma = n.
VolumeEstimate estimate_true_volume(int n, std::int64_t m_samp, std::uint64_t seed,
                                    int threads = 1);

/// Log-log tail fit of the unnormalized weight 1/(2 tau_N - spread).
struct TailReport {
  double slope = 0.0;       // expected near -2
  double cutoff = 0.0;      // smallest K used in the fit (above the median)
  std::int64_t samples = 0;
};

TailReport weight_tail_check(int n, std::int64_t m_samp, std::uint64_t seed);

}  // namespace kuramoto
