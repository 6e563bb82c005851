#include "kuramoto/membership.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace kuramoto {

bool in_polytope(const PolytopeSpec& spec, const FrequencyVector& y) {
  if (spec.kind == PolyKind::HullOfUnion)
    return hull_membership(hull_vertices(spec), y).inside;
  return norm_for(spec, y) <= 1.0;
}

bool rado_membership(const FrequencyVector& y, std::span<const double> v) {
  const int n = y.n();
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("rado_membership: dimension mismatch");
  const double sum_y = vec_sum(y.span());
  const double sum_v = vec_sum(v);
  if (std::fabs(sum_y - sum_v) > 1e-8)
    throw std::invalid_argument("rado_membership: entry sums differ");
  Vec ys(y.entries());
  Vec vs(v.begin(), v.end());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  std::sort(vs.begin(), vs.end(), std::greater<>());
  double py = 0.0, pv = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    py += ys[k];
    pv += vs[k];
    if (py > pv + 1e-12) return false;
  }
  return true;
}

std::vector<Vec> hull_vertices(const PolytopeSpec& spec) {
  std::vector<PolytopeSpec> parts;
  if (spec.kind == PolyKind::HullOfUnion) {
    parts = spec.members;
  } else if (spec.is_inscribed()) {
    parts = {spec};
  } else {
    throw std::invalid_argument("hull_vertices: not an inscribed spec");
  }
  std::vector<Vec> out;
  for (const auto& p : parts) {
    VertexFamily fam = p.kind == PolyKind::I_DB ? db_points(p.n)
                       : p.kind == PolyKind::I_CS ? cs_points(p.n)
                                                  : cs_points(p.n, p.j);
    for (auto& v : fam.materialize()) out.push_back(std::move(v));
  }
  return out;
}

HullCertificate hull_membership(const std::vector<Vec>& vertices, const FrequencyVector& y) {
  if (vertices.empty()) throw std::invalid_argument("hull_membership: empty vertex set");
  const int n = y.n();
  const int k = static_cast<int>(vertices.size());
  std::vector<double> a(static_cast<std::size_t>(n) * k);
  for (int col = 0; col < k; ++col) {
    if (static_cast<int>(vertices[col].size()) != n)
      throw std::invalid_argument("hull_membership: vertex dimension mismatch");
    for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * k + col] = vertices[col][r];
  }
  const std::vector<double> c(k, 1.0);
  LpResult lp = simplex_solve(a, n, k, y.entries(), c);
  if (lp.status == LpStatus::Infeasible)
    throw std::runtime_error(
        "hull_membership: LP infeasible; vertex set does not span the point "
        "(defect for negation-closed spanning families)");
  if (lp.status != LpStatus::Optimal)
    throw std::runtime_error("hull_membership: LP did not converge");

  HullCertificate cert;
  cert.objective = lp.objective;
  cert.coefficients = std::move(lp.x);
  cert.inside = lp.objective <= 1.0 + 1e-8;
  return cert;
}

HullCertificate hull_membership(const VertexFamily& family, const FrequencyVector& y) {
  return hull_membership(family.materialize(), y);
}

bool order_param_locking_test(const FrequencyVector& omega, double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("order_param_locking_test: need gamma > 0");
  const int n = omega.n();
  Vec w(omega.entries());
  for (double& v : w) v /= gamma;
  const double lo = vec_norm_inf(w);
  if (lo >= 1.0) return false;
  constexpr int grid = 20;
  for (int g = 0; g < grid; ++g) {
    const double r = lo + (1.0 - lo) * g / (grid - 1);
    double s = 0.0;
    for (double wi : w) {
      const double ratio = r > 0.0 ? wi / r : 0.0;  // wi == 0 whenever r == 0
      s += std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    }
    if (r - s / n <= 0.0) return true;
  }
  return false;
}

StabilityReport stability_check(const PhaseConfiguration& theta) {
  const int n = theta.n();
  StabilityReport rep;
  rep.kappas.resize(n);
  bool marginal = false;
  bool unstable = false;
  for (int j = 0; j < n; ++j) {
    double kappa = 0.0;
    for (int i = 0; i < n; ++i) kappa += std::cos(theta[j] - theta[i]);
    rep.kappas[j] = kappa;
    if (std::fabs(kappa) <= stability_tol) marginal = true;
    else if (kappa < 0.0) unstable = true;
  }
  if (!marginal && !unstable) {
    for (int j = 0; j < n; ++j) rep.tau_sum += 1.0 / rep.kappas[j];
    if (std::fabs(rep.tau_sum - 2.0) <= stability_tol) marginal = true;
    else if (rep.tau_sum > 2.0) unstable = true;
  } else {
    // tau is still reported when well-defined
    bool ok = true;
    for (double k : rep.kappas) ok = ok && std::fabs(k) > stability_tol;
    if (ok)
      for (int j = 0; j < n; ++j) rep.tau_sum += 1.0 / rep.kappas[j];
  }
  rep.verdict = marginal   ? StabilityVerdict::Marginal
                : unstable ? StabilityVerdict::Unstable
                           : StabilityVerdict::Stable;
  return rep;
}

std::vector<double> jacobian(const PhaseConfiguration& theta) {
  const int n = theta.n();
  std::vector<double> j(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r) {
    double diag = 0.0;
    for (int c = 0; c < n; ++c) {
      if (c == r) continue;
      const double v = std::cos(theta[c] - theta[r]);
      j[static_cast<std::size_t>(r) * n + c] = v;
      diag -= v;
    }
    j[static_cast<std::size_t>(r) * n + r] = diag;
  }
  return j;
}

StabilityVerdict eig_stability_oracle(const std::vector<double>& jac, int n) {
  if (static_cast<int>(jac.size()) != n * n)
    throw std::invalid_argument("eig_stability_oracle: bad matrix size");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = jac[static_cast<std::size_t>(r) * n + c];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  // one eigenvalue is always ~0 (rotation invariance); the verdict is about
  // the rest of the spectrum
  const double tol = 1e-8 * n;
  if (ev[n - 1] > tol) return StabilityVerdict::Unstable;
  if (ev[n - 2] < -tol) return StabilityVerdict::Stable;
  return StabilityVerdict::Marginal;
}

}  // namespace kuramoto
