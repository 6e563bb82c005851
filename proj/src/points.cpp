#include "kuramoto/points.hpp"

#include <cmath>

namespace kuramoto {

namespace {

// Advances idx (a strictly increasing k-subset of {0..n-1}) to the next
// combination in lexicographic order; returns false when exhausted.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int l = i + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace

double tau(int n) {
  if (n < 3) throw std::invalid_argument("tau: need n >= 3");
  return tau_general(n, 1);
}

double tau_general(int n, int j) {
  if (j < 1 || 2 * j > n) throw std::invalid_argument("tau_general: need 1 <= j, 2j <= n");
  const double N = n, J = j;
  const double s = std::sqrt(36.0 * J * J - 4.0 * J * N + N * N);
  const double inner = -2.0 * s + N * (s - N) / J + 12.0 * J + 4.0 * N;
  return (s - 6.0 * J + 3.0 * N) * std::sqrt(inner) / (16.0 * std::sqrt(2.0 * J));
}

double tau_maximizer(int n, int j) {
  if (j < 1 || 2 * j > n) throw std::invalid_argument("tau_maximizer: need 1 <= j, 2j <= n");
  // Critical point of (n-2j) sin(phi) + j sin(2 phi):
  //   4j cos^2(phi) + (n-2j) cos(phi) - 2j = 0.
  const double a = static_cast<double>(n - 2 * j);
  const double c = (-a + std::sqrt(a * a + 32.0 * j * j)) / (8.0 * j);
  return std::acos(c);
}

VertexFamily VertexFamily::db(int n) {
  if (n < 2) throw std::invalid_argument("db_points: need n >= 2");
  return VertexFamily(FamilyKind::DB, n, 0);
}

VertexFamily VertexFamily::cs(int n, int j) {
  if (j < 1 || 2 * j > n) throw std::invalid_argument("cs_points: need 1 <= j, 2j <= n");
  return VertexFamily(FamilyKind::CS, n, j);
}

std::uint64_t VertexFamily::count() const {
  if (kind_ == FamilyKind::DB) {
    if (n_ >= 64) throw std::overflow_error("db count overflows");
    return (std::uint64_t{1} << n_) - 2;
  }
  return binomial(n_, j_) * binomial(n_ - j_, j_);
}

void VertexFamily::for_each(const std::function<void(std::span<const double>)>& fn) const {
  Vec v(n_);
  if (kind_ == FamilyKind::DB) {
    for (int k = 1; k < n_; ++k) {
      std::vector<int> pos(k);
      for (int i = 0; i < k; ++i) pos[i] = i;
      do {
        for (int i = 0; i < n_; ++i) v[i] = -static_cast<double>(k);
        for (int p : pos) v[p] = static_cast<double>(n_ - k);
        fn(v);
      } while (next_combination(pos, n_));
    }
    return;
  }
  const double t = tau_general(n_, j_);
  std::vector<int> plus(j_);
  for (int i = 0; i < j_; ++i) plus[i] = i;
  do {
    std::vector<int> rest;
    rest.reserve(n_ - j_);
    {
      std::size_t pi = 0;
      for (int i = 0; i < n_; ++i) {
        if (pi < plus.size() && plus[pi] == i) {
          ++pi;
        } else {
          rest.push_back(i);
        }
      }
    }
    std::vector<int> minus_sel(j_);
    for (int i = 0; i < j_; ++i) minus_sel[i] = i;
    do {
      std::fill(v.begin(), v.end(), 0.0);
      for (int p : plus) v[p] = t;
      for (int m : minus_sel) v[rest[m]] = -t;
      fn(v);
    } while (next_combination(minus_sel, n_ - j_));
  } while (next_combination(plus, n_));
}

std::vector<Vec> VertexFamily::materialize() const {
  if (n_ > 16) throw std::invalid_argument("materialize: refuse n > 16 (use for_each)");
  std::vector<Vec> out;
  out.reserve(count());
  for_each([&](std::span<const double> v) { out.emplace_back(v.begin(), v.end()); });
  return out;
}

FrequencyVector frequency_from_configuration(const PhaseConfiguration& theta) {
  const int n = theta.n();
  Vec omega(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::sin(theta[j] - theta[i]);
    omega[i] = -s;
  }
  // sin antisymmetry makes the sum cancel exactly in pairs
  return FrequencyVector::projected(std::move(omega));
}

}  // namespace kuramoto
