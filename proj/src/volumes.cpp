#include "kuramoto/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace kuramoto {

namespace {

double factorial(int n) { return std::exp(std::lgamma(n + 1.0)); }

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// Descent-set counts for all subsets of {1..n-1}, indexed by bitmask
// (bit i-1 set <=> descent at position i). Computed once per n.
const std::vector<std::uint64_t>& descent_table(int n) {
  static std::map<int, std::vector<std::uint64_t>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::uint64_t> table(std::size_t{1} << (n - 1), 0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::uint32_t mask = 0;
    for (int i = 0; i + 1 < n; ++i)
      if (perm[i] > perm[i + 1]) mask |= 1u << i;
    ++table[mask];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cache.emplace(n, std::move(table)).first->second;
}

}  // namespace

double exact_volume(const PolytopeSpec& spec) {
  const int n = spec.n;
  if (n < 3) throw std::invalid_argument("exact_volume: need n >= 3");
  const double N = n;
  switch (spec.kind) {
    case PolyKind::I_DB:
      return std::pow(N, N - 0.5);
    case PolyKind::C_DB:
      return std::pow(2.0, N - 1.0) * std::pow(N, N - 1.5);
    case PolyKind::C_CS:
      return std::pow(N, N - 0.5) * std::pow(2.0 * tau(n) / N, N - 1.0);
    case PolyKind::I_CS: {
      double combinatorial;
      if (n <= 20) {
        combinatorial =
            static_cast<double>(binomial_u64(2 * (n - 1), n - 1)) / factorial(n - 1);
      } else {
        combinatorial =
            std::exp(std::lgamma(2.0 * N - 1.0) - 3.0 * std::lgamma(N));
      }
      return std::sqrt(N) * combinatorial * std::pow(tau(n), N - 1.0);
    }
    default:
      throw std::invalid_argument("exact_volume: no closed form for " + spec.str());
  }
}

std::uint64_t descent_count(int n, const std::set<int>& descents) {
  if (n < 1 || n > 9) throw std::invalid_argument("descent_count: need 1 <= n <= 9");
  std::uint32_t mask = 0;
  for (int i : descents) {
    if (i < 1 || i >= n) throw std::invalid_argument("descent_count: position out of range");
    mask |= 1u << (i - 1);
  }
  return descent_table(n)[mask];
}

namespace {

double postnikov_sum(std::span<const double> x, const std::vector<std::uint64_t>& dn) {
  const int n = static_cast<int>(x.size());
  std::vector<int> comp(n, 0);
  double total = 0.0;

  // Recursive lexicographic enumeration of compositions of n-1 into n parts.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n - 1) {
      comp[pos] = remaining;
      // epsilon sequence: c_i ones then a -1 each, final -1 deleted.
      // I = { i in 1..n-1 : sum of the first 2i-1 epsilons < 0 }.
      std::uint32_t mask = 0;
      int bits = 0;
      {
        int idx = 0, sum = 0, next_probe = 1;  // probe positions 1,3,5,...
        for (int i = 0; i < n; ++i) {
          for (int c = 0; c < comp[i]; ++c) {
            ++idx;
            ++sum;
            if (idx == next_probe) {
              if (sum < 0) { mask |= 1u << ((next_probe - 1) / 2); ++bits; }
              next_probe += 2;
            }
          }
          if (i + 1 < n) {  // trailing -1, except after the last part
            ++idx;
            --sum;
            if (idx == next_probe) {
              if (sum < 0) { mask |= 1u << ((next_probe - 1) / 2); ++bits; }
              next_probe += 2;
            }
          }
        }
      }
      double term = static_cast<double>(dn[mask]);
      for (int i = 0; i < n; ++i) {
        if (comp[i] == 0) continue;
        term *= std::pow(x[i], comp[i]) / factorial(comp[i]);
      }
      total += (bits % 2 ? -1.0 : 1.0) * term;
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      comp[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, n - 1);
  return total;
}

}  // namespace

double postnikov_volume(std::span<const double> x, bool euclidean) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || n > 8) throw std::invalid_argument("postnikov_volume: need 2 <= n <= 8");
  const double v = postnikov_sum(x, descent_table(n));
  return euclidean ? v * std::sqrt(static_cast<double>(n)) : v;
}

double unit_cs_volume_closed_form(int n) {
  if (n < 2) throw std::invalid_argument("unit_cs_volume_closed_form: need n >= 2");
  double combinatorial;
  if (n <= 20) {
    combinatorial =
        static_cast<double>(binomial_u64(2 * (n - 1), n - 1)) / factorial(n - 1);
  } else {
    combinatorial = std::exp(std::lgamma(2.0 * n - 1.0) - 3.0 * std::lgamma(static_cast<double>(n)));
  }
  return std::sqrt(static_cast<double>(n)) * combinatorial;
}

}  // namespace kuramoto
