#include "kuramoto/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kuramoto {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
  int m;       // rows
  int total;   // structural + artificial columns
  int k;       // structural columns
  std::vector<double> t;  // (m+1) x (total+1), last row = objective, last col = rhs
  std::vector<int> basis;
  std::int64_t iterations = 0;

  double& at(int r, int c) { return t[static_cast<std::size_t>(r) * (total + 1) + c]; }

  void pivot(int pr, int pc) {
    const double piv = at(pr, pc);
    const double inv = 1.0 / piv;
    for (int c = 0; c <= total; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= total; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis[pr] = pc;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = lowest-index basic variable among the ratio-test minima.
  LpStatus iterate(int allowed_cols, std::int64_t cap) {
    for (;;) {
      if (++iterations > cap) return LpStatus::IterationCap;
      int pc = -1;
      for (int c = 0; c < allowed_cols; ++c) {
        if (at(m, c) < -kEps) {
          pc = c;
          break;
        }
      }
      if (pc < 0) return LpStatus::Optimal;
      int pr = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        const double a = at(r, pc);
        if (a > kEps) {
          const double ratio = at(r, total) / a;
          if (ratio < best - 1e-15 || (ratio <= best + 1e-15 && (pr < 0 || basis[r] < basis[pr]))) {
            best = ratio;
            pr = r;
          }
        }
      }
      if (pr < 0) return LpStatus::Unbounded;
      pivot(pr, pc);
    }
  }
};

}  // namespace

LpResult simplex_solve(const std::vector<double>& a, int m, int k,
                       const std::vector<double>& b, const std::vector<double>& c,
                       std::int64_t iteration_cap) {
  if (static_cast<int>(a.size()) != m * k || static_cast<int>(b.size()) != m ||
      static_cast<int>(c.size()) != k)
    throw std::invalid_argument("simplex_solve: inconsistent dimensions");

  Tableau tb;
  tb.m = m;
  tb.k = k;
  tb.total = k + m;
  tb.t.assign(static_cast<std::size_t>(m + 1) * (tb.total + 1), 0.0);
  tb.basis.resize(m);

  for (int r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (int col = 0; col < k; ++col) tb.at(r, col) = sign * a[static_cast<std::size_t>(r) * k + col];
    tb.at(r, k + r) = 1.0;  // artificial
    tb.at(r, tb.total) = sign * b[r];
    tb.basis[r] = k + r;
  }

  // Phase 1: minimize sum of artificials. Objective row = -(sum of rows) on
  // structural columns so that reduced costs of the artificial basis are 0.
  for (int col = 0; col <= tb.total; ++col) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += tb.at(r, col);
    tb.at(m, col) = (col >= k && col < tb.total) ? 0.0 : -s;
  }
  LpStatus st = tb.iterate(tb.total, iteration_cap);
  if (st == LpStatus::IterationCap) return {st, 0.0, {}};
  const double phase1 = -tb.at(m, tb.total);
  if (phase1 > 1e-7) return {LpStatus::Infeasible, 0.0, {}};

  // Drive leftover artificials out of the basis where a structural pivot
  // exists; a fully zero row is redundant and its artificial stays at zero.
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] < k) continue;
    int pc = -1;
    for (int col = 0; col < k; ++col) {
      if (std::fabs(tb.at(r, col)) > kEps) {
        pc = col;
        break;
      }
    }
    if (pc >= 0) tb.pivot(r, pc);
  }

  // Phase 2 objective: c on structural columns, made canonical wrt the basis.
  for (int col = 0; col <= tb.total; ++col) tb.at(m, col) = 0.0;
  for (int col = 0; col < k; ++col) tb.at(m, col) = c[col];
  for (int r = 0; r < m; ++r) {
    if (tb.basis[r] >= k) continue;
    const double f = tb.at(m, tb.basis[r]);
    if (f == 0.0) continue;
    for (int col = 0; col <= tb.total; ++col) tb.at(m, col) -= f * tb.at(r, col);
  }
  st = tb.iterate(k, iteration_cap);  // artificials may not re-enter
  if (st != LpStatus::Optimal) return {st, 0.0, {}};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(k, 0.0);
  for (int r = 0; r < m; ++r)
    if (tb.basis[r] < k) res.x[tb.basis[r]] = tb.at(r, tb.total);
  double obj = 0.0;
  for (int col = 0; col < k; ++col) obj += c[col] * res.x[col];
  res.objective = obj;
  return res;
}

}  // namespace kuramoto
