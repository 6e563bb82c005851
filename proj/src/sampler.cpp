#include "kuramoto/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "kuramoto/membership.hpp"
#include "kuramoto/points.hpp"

namespace kuramoto {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

// Fixed chunking keeps the reduction order independent of the thread count.
constexpr std::int64_t kChunk = 4096;

}  // namespace

void CounterRng::refill() {
  std::array<std::uint32_t, 4> x = ctr_;
  std::array<std::uint32_t, 2> k = key_;
  for (int round = 0; round < 10; ++round) {
    philox_round(x, k);
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  buf_[0] = (static_cast<std::uint64_t>(x[0]) << 32) | x[1];
  buf_[1] = (static_cast<std::uint64_t>(x[2]) << 32) | x[3];
  have_ = 2;
  if (++ctr_[0] == 0) ++ctr_[1];  // 64-bit draw counter within the stream
}

Vec sample_hypercube(int n, double half_width, CounterRng& rng) {
  if (n < 2) throw std::invalid_argument("sample_hypercube: need n >= 2");
  Vec x(n);
  for (double& v : x) v = rng.next_symmetric(half_width);
  return x;
}

PokeSample poke_sample(int n, std::uint64_t seed, std::uint64_t index) {
  const double t = tau(n);
  CounterRng rng(seed, index);
  Vec x = sample_hypercube(n, t, rng);
  FrequencyVector omega = project_mean_zero(x);
  const double s = spread(omega.span());  // spread is projection-invariant
  const double weight =
      std::pow(2.0 * t, n) / (std::sqrt(static_cast<double>(n)) * (2.0 * t - s));
  return {std::move(omega), weight};
}

namespace {

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

VolumeEstimate reduce_chunks(const std::vector<ChunkSums>& chunks, std::int64_t m_samp,
                             std::uint64_t seed) {
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& c : chunks) {  // fixed order
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  VolumeEstimate est;
  est.samples = m_samp;
  est.seed = seed;
  est.value = sum / static_cast<double>(m_samp);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(m_samp) - est.value * est.value);
  est.std_error = std::sqrt(var / static_cast<double>(m_samp));
  return est;
}

}  // namespace

VolumeEstimate poke_estimate(int n, const Indicator& indicator, std::int64_t m_samp,
                             std::uint64_t seed, int threads, double half_width) {
  if (m_samp < 1000) throw std::invalid_argument("poke_estimate: need m_samp >= 1000");
  if (threads < 1) threads = 1;
  if (half_width < 0.0) throw std::invalid_argument("poke_estimate: need half_width >= 0");
  const double t = half_width > 0.0 ? half_width : tau(n);
  const double two_tau = 2.0 * t;
  const double prefactor = std::pow(two_tau, n) / std::sqrt(static_cast<double>(n));

  const std::int64_t n_chunks = (m_samp + kChunk - 1) / kChunk;
  std::vector<ChunkSums> chunks(n_chunks);

  const auto run_chunk = [&](std::int64_t ci) {
    const std::int64_t begin = ci * kChunk;
    const std::int64_t end = std::min(m_samp, begin + kChunk);
    ChunkSums acc;
    Vec x(n);
    for (std::int64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i));
      for (double& v : x) v = rng.next_symmetric(t);
      FrequencyVector omega = project_mean_zero(x);
      const double s = spread(omega.span());
      if (s >= two_tau) continue;
      if (!indicator(omega)) continue;
      const double w = prefactor / (two_tau - s);
      acc.sum += w;
      acc.sum_sq += w * w;
    }
    chunks[ci] = acc;
  };

  if (threads == 1 || n_chunks == 1) {
    for (std::int64_t ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int tix = 0; tix < threads; ++tix) {
      pool.emplace_back([&] {
        for (;;) {
          const std::int64_t ci = next.fetch_add(1);
          if (ci >= n_chunks) return;
          run_chunk(ci);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return reduce_chunks(chunks, m_samp, seed);
}

VolumeEstimate estimate_true_volume(int n, std::int64_t m_samp, std::uint64_t seed,
                                    int threads) {
  if (n < 3) throw std::invalid_argument("estimate_true_volume: need n >= 3");
  const double gamma = static_cast<double>(n);
  return poke_estimate(
      n, [gamma](const FrequencyVector& w) { return order_param_locking_test(w, gamma); },
      m_samp, seed, threads);
}

TailReport weight_tail_check(int n, std::int64_t m_samp, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("weight_tail_check: need n >= 3");
  const double t = tau(n);
  Vec weights;
  weights.reserve(m_samp);
  Vec x(n);
  for (std::int64_t i = 0; i < m_samp; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    for (double& v : x) v = rng.next_symmetric(t);
    const double s = spread(x);  // equals the spread of the projection
    weights.push_back(1.0 / (2.0 * t - s));
  }
  std::sort(weights.begin(), weights.end());

  // Tail-only fit: log P(W > K) vs log K for K between the 50th and 99.9th
  // percentile of the observed weights.
  TailReport rep;
  rep.samples = m_samp;
  rep.cutoff = weights[m_samp / 2];
  const double k_hi = weights[static_cast<std::size_t>(0.999 * (m_samp - 1))];
  constexpr int n_pts = 24;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int p = 0; p < n_pts; ++p) {
    const double k = rep.cutoff * std::pow(k_hi / rep.cutoff, (p + 0.5) / n_pts);
    const auto it = std::upper_bound(weights.begin(), weights.end(), k);
    const std::int64_t above = weights.end() - it;
    if (above < 10) break;
    const double lx = std::log(k);
    const double ly = std::log(static_cast<double>(above) / static_cast<double>(m_samp));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++used;
  }
  if (used < 2) throw std::runtime_error("weight_tail_check: too few tail points");
  rep.slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  return rep;
}

}  // namespace kuramoto
