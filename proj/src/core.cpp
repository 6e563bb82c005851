#include "kuramoto/core.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace kuramoto {

double vec_sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double vec_dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double vec_norm2(std::span<const double> x) { return std::sqrt(vec_dot(x, x)); }

double vec_norm1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

double vec_norm_inf(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::fabs(v));
  return s;
}

bool vec_all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

double spread(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double lo = x[0], hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

FrequencyVector FrequencyVector::from_mean_zero(Vec entries) {
  const auto n = entries.size();
  if (n < 2) throw std::invalid_argument("FrequencyVector: need n >= 2");
  if (!vec_all_finite(entries))
    throw std::invalid_argument("FrequencyVector: non-finite entry");
  const double s = vec_sum(entries);
  if (std::fabs(s) > mean_zero_tol_per_entry * static_cast<double>(n))
    throw std::invalid_argument("FrequencyVector: entries do not sum to zero");
  return FrequencyVector(std::move(entries));
}

FrequencyVector FrequencyVector::projected(Vec entries) {
  const auto n = entries.size();
  if (n < 2) throw std::invalid_argument("FrequencyVector: need n >= 2");
  if (!vec_all_finite(entries))
    throw std::invalid_argument("FrequencyVector: non-finite entry");
  const double mean = vec_sum(entries) / static_cast<double>(n);
  for (double& v : entries) v -= mean;
  return FrequencyVector(std::move(entries));
}

PhaseConfiguration::PhaseConfiguration(Vec angles) : a_(std::move(angles)) {
  if (a_.size() < 2) throw std::invalid_argument("PhaseConfiguration: need n >= 2");
  if (!vec_all_finite(a_))
    throw std::invalid_argument("PhaseConfiguration: non-finite angle");
}

FrequencyVector project_mean_zero(std::span<const double> x) {
  return FrequencyVector::projected(Vec(x.begin(), x.end()));
}

MeanZeroBasis::MeanZeroBasis(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("MeanZeroBasis: need n >= 2");
  u_.reserve(n - 1);
  for (int k = 1; k < n; ++k) {
    // w_{N,k} = (1^(k), -k, 0^(N-k-1)); |w|^2 = k + k^2
    Vec w(n, 0.0);
    for (int i = 0; i < k; ++i) w[i] = 1.0;
    w[k] = -static_cast<double>(k);
    const double inv_len = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (double& v : w) v *= inv_len;
    u_.push_back(std::move(w));
  }
}

Vec MeanZeroBasis::ambient_to_coords(const FrequencyVector& y) const {
  if (y.n() != n_) throw std::invalid_argument("ambient_to_coords: dimension mismatch");
  Vec c(n_ - 1);
  for (int k = 0; k + 1 < n_; ++k) c[k] = vec_dot(y.span(), u_[k]);
  return c;
}

FrequencyVector MeanZeroBasis::coords_to_ambient(std::span<const double> coords) const {
  if (static_cast<int>(coords.size()) != n_ - 1)
    throw std::invalid_argument("coords_to_ambient: dimension mismatch");
  Vec y(n_, 0.0);
  for (int k = 0; k + 1 < n_; ++k)
    for (int i = 0; i < n_; ++i) y[i] += coords[k] * u_[k][i];
  return FrequencyVector::projected(std::move(y));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv(std::span<const double> x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += format_double(x[i]);
  }
  return out;
}

Vec parse_csv_doubles(const std::string& line) {
  Vec out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str()) throw std::invalid_argument("bad number: " + tok);
    out.push_back(v);
  }
  return out;
}

}  // namespace kuramoto
