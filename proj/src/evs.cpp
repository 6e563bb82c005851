#include "kuramoto/evs.hpp"

#include <algorithm>
#include <cmath>

#include "kuramoto/membership.hpp"

namespace kuramoto {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_inv_cdf: need 0 < p < 1");
  // Acklam's rational approximation, then one Newton step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  if (pdf > 0.0) x -= (normal_cdf(x) - p) / pdf;
  return x;
}

FrequencyDistribution FrequencyDistribution::gaussian() {
  FrequencyDistribution d;
  d.name = "gaussian";
  d.symmetric = true;
  d.cdf = [](double z) { return normal_cdf(z); };
  d.inv_cdf = [](double p) { return normal_inv_cdf(p); };
  return d;
}

FrequencyDistribution FrequencyDistribution::exponential(double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("exponential: need lambda > 0");
  FrequencyDistribution d;
  d.name = "exponential";
  d.symmetric = false;
  d.cdf = [lambda](double z) { return z <= 0.0 ? 0.0 : 1.0 - std::exp(-lambda * z); };
  d.inv_cdf = [lambda](double p) { return -std::log1p(-p) / lambda; };
  return d;
}

FrequencyDistribution FrequencyDistribution::two_sided_exponential(double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("two_sided_exponential: need lambda > 0");
  FrequencyDistribution d;
  d.name = "two_sided_exponential";
  d.symmetric = true;
  d.cdf = [lambda](double z) {
    return z < 0.0 ? 0.5 * std::exp(lambda * z) : 1.0 - 0.5 * std::exp(-lambda * z);
  };
  d.inv_cdf = [lambda](double p) {
    return p < 0.5 ? std::log(2.0 * p) / lambda : -std::log(2.0 * (1.0 - p)) / lambda;
  };
  return d;
}

FrequencyDistribution FrequencyDistribution::uniform01() {
  FrequencyDistribution d;
  d.name = "uniform01";
  d.symmetric = false;
  d.cdf = [](double z) { return std::clamp(z, 0.0, 1.0); };
  d.inv_cdf = [](double p) { return p; };
  return d;
}

FrequencyDistribution FrequencyDistribution::pareto(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("pareto: need alpha > 0");
  FrequencyDistribution d;
  d.name = "pareto";
  d.symmetric = false;
  d.cdf = [alpha](double z) { return z <= 1.0 ? 0.0 : 1.0 - std::pow(z, -alpha); };
  d.inv_cdf = [alpha](double p) { return std::pow(1.0 - p, -1.0 / alpha); };
  return d;
}

ScalingSequence scaling_gaussian(int n) {
  if (n < 3) throw std::invalid_argument("scaling_gaussian: need n >= 3");
  const double l = std::log(static_cast<double>(n));
  const double root = std::sqrt(2.0 * l);
  ScalingSequence s;
  s.a_n = 1.0 / root;
  s.b_n = root - std::log(4.0 * M_PI * l) / (2.0 * root);
  s.xi_n = 2.0 * s.b_n;
  return s;
}

ScalingSequence scaling_exponential(int n, double lambda) {
  if (n < 3) throw std::invalid_argument("scaling_exponential: need n >= 3");
  if (lambda <= 0.0) throw std::invalid_argument("scaling_exponential: need lambda > 0");
  ScalingSequence s;
  s.a_n = 1.0 / lambda;
  s.b_n = std::log(static_cast<double>(n)) / lambda;
  s.xi_n = s.b_n;  // the minimum collapses to 0, so M_N ~ Q_N
  return s;
}

ScalingSequence scaling_two_sided_exponential(int n, double lambda) {
  if (n < 3) throw std::invalid_argument("scaling_two_sided_exponential: need n >= 3");
  if (lambda <= 0.0)
    throw std::invalid_argument("scaling_two_sided_exponential: need lambda > 0");
  ScalingSequence s;
  s.a_n = 1.0 / lambda;
  s.b_n = 2.0 * std::log(static_cast<double>(n) / 2.0) / lambda;
  s.xi_n = s.b_n;
  return s;
}

namespace {

// Adaptive Simpson on [lo, hi] with divergence guard.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double fl, double fm, double fh, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  const double flm = f(lm), frm = f(rm);
  const double whole = (hi - lo) / 6.0 * (fl + 4.0 * fm + fh);
  const double left = (mid - lo) / 6.0 * (fl + 4.0 * flm + fm);
  const double right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fh);
  if (depth <= 0) throw std::runtime_error("tail quadrature did not converge");
  // below this width the halved tolerance is under floating-point noise and
  // the local error is negligible anyway
  if (std::fabs(left + right - whole) <= 15.0 * tol || hi - lo < 1e-10) return left + right;
  return adaptive_simpson(f, lo, mid, fl, flm, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, mid, hi, fm, frm, fh, 0.5 * tol, depth - 1);
}

// q(t) = int_t^inf (1 - F(s)) ds / (1 - F(t)), via s = t + u/(1-u).
double mean_excess(const FrequencyDistribution& dist, double t) {
  const double tail_t = 1.0 - dist.cdf(t);
  if (tail_t <= 0.0) throw std::runtime_error("mean_excess: cdf already 1 at t");
  const auto integrand = [&](double u) {
    const double om = 1.0 - u;
    const double s = t + u / om;
    const double tail = 1.0 - dist.cdf(s);
    if (tail <= 0.0) return 0.0;
    return tail / (om * om);
  };
  const double hi = 1.0 - 1e-9;
  const double f_lo = integrand(0.0), f_hi = integrand(hi), f_mid = integrand(0.5 * hi);
  const double coarse = hi / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  const double tol = std::max(coarse, tail_t) * 1e-8;
  double integral;
  try {
    integral = adaptive_simpson(integrand, 0.0, hi, f_lo, f_mid, f_hi, tol, 48);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("not Gumbel-class: tail integral diverges for " + dist.name);
  }
  // the substitution truncates at u = hi; a non-negligible integrand there
  // means the remainder (and typically the whole integral) diverges
  if (!std::isfinite(integral) ||
      f_hi * (1.0 - hi) > 1e-6 * std::max(integral, tail_t))
    throw std::runtime_error("not Gumbel-class: tail integral diverges for " + dist.name);
  return integral / tail_t;
}

}  // namespace

ScalingSequence scaling_generic(const FrequencyDistribution& dist, int n) {
  if (n < 3) throw std::invalid_argument("scaling_generic: need n >= 3");
  const double b = dist.inv_cdf(1.0 - 1.0 / static_cast<double>(n));
  const double a = mean_excess(dist, b);
  // Gumbel-class requires q(t)/t -> 0; probe the decay at a larger t.
  if (b > 0.0) {
    const double r1 = a / b;
    const double t2 = 4.0 * b;
    if (r1 > 0.01 && dist.cdf(t2) < 1.0) {
      const double r2 = mean_excess(dist, t2) / t2;
      if (r2 > 0.75 * r1)
        throw std::runtime_error("not Gumbel-class: q(t)/t does not decay for " + dist.name);
    }
  }
  ScalingSequence s;
  s.a_n = a;
  s.b_n = b;
  s.xi_n = dist.symmetric ? 2.0 * b
                          : b - dist.inv_cdf(1.0 / static_cast<double>(n));
  return s;
}

ScalingSequence scaling_for(const FrequencyDistribution& dist, int n, double lambda) {
  if (dist.name == "gaussian") return scaling_gaussian(n);
  if (dist.name == "exponential") return scaling_exponential(n, lambda);
  if (dist.name == "two_sided_exponential") return scaling_two_sided_exponential(n, lambda);
  return scaling_generic(dist, n);
}

MmcReport mmc_check(const FrequencyDistribution& dist, const std::vector<int>& n_list,
                    int trials, std::uint64_t seed) {
  MmcReport rep;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    const ScalingSequence sc = scaling_generic(dist, n);
    MmcRow row;
    row.n = n;
    row.xi = sc.xi_n;
    if (std::fabs(sc.xi_n) < 1e-9 * std::max(1.0, std::fabs(sc.b_n))) {
      rep.degenerate = true;
      rep.rows.push_back(row);
      continue;
    }
    int out01 = 0, out02 = 0;
    for (int t = 0; t < trials; ++t) {
      CounterRng rng(seed, (static_cast<std::uint64_t>(ni) << 32) | static_cast<std::uint32_t>(t));
      double lo = 0.0, hi = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = dist.sample(rng);
        if (i == 0) {
          lo = hi = x;
        } else {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
      }
      const double ratio = (hi - lo) / sc.xi_n;
      if (std::fabs(ratio - 1.0) > 0.1) ++out01;
      if (std::fabs(ratio - 1.0) > 0.2) ++out02;
    }
    row.p_out_01 = static_cast<double>(out01) / trials;
    row.p_out_02 = static_cast<double>(out02) / trials;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<TransitionRow> phase_transition_experiment(
    const FrequencyDistribution& dist, const std::vector<int>& n_list,
    const std::vector<double>& kappa_list, int trials, std::uint64_t seed) {
  if (trials < 30) throw std::invalid_argument("phase_transition_experiment: need trials >= 30");
  for (double k : kappa_list)
    if (k < 0.0) throw std::invalid_argument("phase_transition_experiment: need kappa >= 0");

  std::vector<TransitionRow> rows;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    const ScalingSequence sc = scaling_for(dist, n);
    for (std::size_t ki = 0; ki < kappa_list.size(); ++ki) {
      const double kappa = kappa_list[ki];
      const double gamma = kappa * sc.xi_n;
      int hits = 0;
      for (int t = 0; t < trials; ++t) {
        // stream keyed by (N, kappa, trial)
        const std::uint64_t stream = (static_cast<std::uint64_t>(ni) << 48) |
                                     (static_cast<std::uint64_t>(ki) << 32) |
                                     static_cast<std::uint32_t>(t);
        CounterRng rng(seed, stream);
        Vec omega(n);
        for (double& v : omega) v = dist.sample(rng);
        FrequencyVector w = FrequencyVector::projected(std::move(omega));
        if (gamma > 0.0 && order_param_locking_test(w, gamma)) ++hits;
      }
      TransitionRow row;
      row.n = n;
      row.kappa = kappa;
      row.trials = trials;
      row.p_sync = static_cast<double>(hits) / trials;
      row.std_error = std::sqrt(row.p_sync * (1.0 - row.p_sync) / trials);
      row.in_theory_gap = kappa >= 0.5 && kappa <= 1.0;
      rows.push_back(row);
    }
  }
  return rows;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_p_value(double d, std::size_t n) {
  // asymptotic Kolmogorov distribution with the standard finite-n shift
  const double rn = std::sqrt(static_cast<double>(n));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * (k % 2 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                              static_cast<double>(j) / b.size()));
  }
  return d;
}

double uniform_range_cdf(int n, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // Beta(n-1, 2): F(x) = n x^(n-1) - (n-1) x^n
  return n * std::pow(x, n - 1) - (n - 1) * std::pow(x, n);
}

}  // namespace kuramoto
