#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuramoto {

using Vec = std::vector<double>;

// Absolute tolerance per entry for the mean-zero check; the effective
// tolerance on the sum is mean_zero_tol_per_entry * n.
inline constexpr double mean_zero_tol_per_entry = 1e-9;

double vec_sum(std::span<const double> x);
double vec_dot(std::span<const double> a, std::span<const double> b);
double vec_norm2(std::span<const double> x);
double vec_norm1(std::span<const double> x);
double vec_norm_inf(std::span<const double> x);
bool vec_all_finite(std::span<const double> x);

// max entry minus min entry (the sample range).
double spread(std::span<const double> x);

/// A mean-zero real N-vector of natural frequencies.
class FrequencyVector {
public:
  // Asserts the mean-zero invariant (tolerance 1e-9 * n).
  static FrequencyVector from_mean_zero(Vec entries);
  // Projects onto the mean-zero subspace first, then constructs.
  static FrequencyVector projected(Vec entries);

  int n() const { return static_cast<int>(v_.size()); }
  const Vec& entries() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> span() const { return v_; }

private:
  explicit FrequencyVector(Vec v) : v_(std::move(v)) {}
  Vec v_;
};

/// N oscillator angles, in radians. No normalization to [0, 2pi) is
/// imposed; all downstream formulas use differences only.
class PhaseConfiguration {
public:
  explicit PhaseConfiguration(Vec angles);

  int n() const { return static_cast<int>(a_.size()); }
  const Vec& angles() const { return a_; }
  double operator[](std::size_t i) const { return a_[i]; }

private:
  Vec a_;
};

// Orthogonal projection of x onto the mean-zero subspace: x - mean(x)*1.
FrequencyVector project_mean_zero(std::span<const double> x);

/// Orthonormal basis of the mean-zero subspace built from the vectors
/// w_{N,k} = (1,...,1, -k, 0,...,0) (k ones), normalized. Fixed so that
/// coordinate output is reproducible bit-for-bit.
class MeanZeroBasis {
public:
  explicit MeanZeroBasis(int n);

  int n() const { return n_; }
  const std::vector<Vec>& vectors() const { return u_; }

  // Coordinates of a mean-zero vector in this basis (an isometry).
  Vec ambient_to_coords(const FrequencyVector& y) const;
  FrequencyVector coords_to_ambient(std::span<const double> coords) const;

private:
  int n_;
  std::vector<Vec> u_;
};

// Round-trip exact decimal formatting (17 significant digits).
std::string format_double(double x);
std::string to_csv(std::span<const double> x);
Vec parse_csv_doubles(const std::string& line);

}  // namespace kuramoto
