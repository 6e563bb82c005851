// End-to-end numerical acceptance checks. Each check prints exactly one
// PASS/FAIL line; the process exits nonzero if any check fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kuramoto/evs.hpp"
#include "kuramoto/membership.hpp"
#include "kuramoto/sampler.hpp"
#include "kuramoto/volumes.hpp"

using namespace kuramoto;

namespace {

int g_failures = 0;

void line(int id, const char* name, bool pass, const std::string& detail = "") {
  std::printf("%s %2d %s%s%s\n", pass ? "PASS" : "FAIL", id, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

FrequencyVector random_freq(int n, std::uint64_t seed, std::uint64_t stream, double half) {
  CounterRng rng(seed, stream);
  Vec v(n);
  for (double& x : v) x = rng.next_symmetric(half);
  return FrequencyVector::projected(v);
}

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// 1. coupling constants
void check_tau() {
  bool ok = std::fabs(tau(3) - 1.76017) <= 1e-4;
  ok = ok && std::fabs(tau(4) - 1.5 * std::sqrt(3.0)) <= 1e-10;
  for (int n = 3; n <= 50; ++n) {
    const double t = tau(n);
    ok = ok && t >= n - 2 && t <= n - 1;
  }
  line(1, "coupling constants tau_3, tau_4 and range over N<=50", ok);
}

// 2. exact volumes
void check_exact_volumes() {
  const double t3 = tau(3), r3 = std::sqrt(3.0);
  bool ok = rel_err(exact_volume(PolytopeSpec::parse("I_DB(3)")), 9.0 * r3) < 1e-9;
  ok = ok && rel_err(exact_volume(PolytopeSpec::parse("C_DB(3)")), 12.0 * r3) < 1e-9;
  ok = ok && rel_err(exact_volume(PolytopeSpec::parse("I_CS(3)")), 3.0 * r3 * t3 * t3) < 1e-9;
  ok = ok && rel_err(exact_volume(PolytopeSpec::parse("C_CS(3)")), 4.0 * r3 * t3 * t3) < 1e-9;
  ok = ok && std::fabs(exact_volume(PolytopeSpec::parse("C_CS(5)")) - 5277.32) <= 0.01;
  ok = ok && std::fabs(exact_volume(PolytopeSpec::parse("C_DB(5)")) - 4472.14) <= 0.01;
  line(2, "closed-form volumes at N=3 and N=5", ok);
}

// 3. Monte Carlo vs exact at N=4, plus the intersection value
void check_mc_n4() {
  const std::int64_t m = 1000000;
  const std::uint64_t seed = 42;
  bool ok = true;
  std::ostringstream detail;
  const char* specs[] = {"C_CS(4)", "C_DB(4)", "I_DB(4)", "I_CS(4)"};
  for (const char* s : specs) {
    const auto spec = PolytopeSpec::parse(s);
    const auto est = poke_estimate(
        4, [&](const FrequencyVector& y) { return norm_for(spec, y) <= 1.0; }, m, seed, 1,
        std::max(tau(4), 0.5 * max_spread_on_unit_ball(spec)));
    const double exact = exact_volume(spec);
    const bool hit = std::fabs(est.value - exact) <= 3.0 * est.std_error;
    ok = ok && hit && est.std_error <= 0.02 * exact;
    detail << s << "=" << est.value << " ";
  }
  const auto inter = PolytopeSpec::parse("Intersect(C_DB(4),C_CS(4))");
  const auto est = poke_estimate(
      4, [&](const FrequencyVector& y) { return norm_for(inter, y) <= 1.0; }, m, seed, 1);
  ok = ok && std::fabs(est.value - 236.34) <= 3.0 * est.std_error;
  detail << "intersection=" << est.value << "+-" << est.std_error;
  line(3, "Monte Carlo volumes at N=4 within 3 sigma of exact / 236.34", ok, detail.str());
}

// 4. true-region volumes
void check_true_volumes() {
  const auto e4 = estimate_true_volume(4, 1000000, 42, 8);
  const auto e5 = estimate_true_volume(5, 1000000, 42, 8);
  const bool ok = rel_err(e4.value, 210.0) <= 0.05 && rel_err(e5.value, 3210.0) <= 0.05;
  std::ostringstream d;
  d << "N=4: " << e4.value << ", N=5: " << e5.value;
  line(4, "true locked-region volumes 210 (N=4) and 3210 (N=5) within 5%", ok, d.str());
}

// 5. N=10 volume ratios
void check_ratios_n10() {
  const std::int64_t m = 1000000;
  const double ccs = exact_volume(PolytopeSpec::parse("C_CS(10)"));
  const auto cdb_spec = PolytopeSpec::parse("C_DB(10)");
  const auto cdb = poke_estimate(
      10, [&](const FrequencyVector& y) { return norm_for(cdb_spec, y) <= 1.0; }, m, 42, 8,
      0.5 * max_spread_on_unit_ball(cdb_spec));
  const auto tru = estimate_true_volume(10, m, 42, 8);
  const double r1 = cdb.value / ccs, r2 = tru.value / ccs;
  const bool ok = std::fabs(r1 - 0.58) <= 0.03 && std::fabs(r2 - 0.19) <= 0.03;
  std::ostringstream d;
  d << "C_DB/C_CS=" << r1 << ", true/C_CS=" << r2;
  line(5, "N=10 ratios to C_CS: 0.58 and 0.19 within 0.03", ok, d.str());
}

// 6. inscribed table at N=5 with the LP hull row
void check_table2_n5() {
  const std::int64_t m = 10000;
  const auto hull_spec = PolytopeSpec::parse("Hull(I_DB(5),I_CS(5))");
  const auto verts = hull_vertices(hull_spec);
  const auto hull = poke_estimate(
      5, [&](const FrequencyVector& y) { return hull_membership(verts, y).inside; }, m, 42, 8);
  const auto idb_spec = PolytopeSpec::parse("I_DB(5)");
  const auto ics_spec = PolytopeSpec::parse("I_CS(5)");
  const auto idb = poke_estimate(
      5, [&](const FrequencyVector& y) { return norm_for(idb_spec, y) <= 1.0; }, m, 42, 8);
  const auto ics = poke_estimate(
      5, [&](const FrequencyVector& y) { return norm_for(ics_spec, y) <= 1.0; }, m, 42, 8);
  bool ok = rel_err(hull.value, 2032.0) <= 0.10;
  ok = ok && std::fabs(idb.value - std::pow(5.0, 4.5)) <= 3.0 * idb.std_error;
  ok = ok && std::fabs(ics.value - 962.1) <= 3.0 * ics.std_error;
  std::ostringstream d;
  d << "hull=" << hull.value << ", I_DB=" << idb.value << ", I_CS=" << ics.value;
  line(6, "N=5 inscribed volumes: hull 2032 within 10%, I_DB/I_CS within 3 sigma", ok, d.str());
}

// 7. permutahedron volume closed form
void check_postnikov() {
  bool ok = true;
  for (int n = 3; n <= 8; ++n) {
    Vec x(n, 0.0);
    x[0] = 1.0;
    x[n - 1] = -1.0;
    ok = ok && rel_err(postnikov_volume(x, true), unit_cs_volume_closed_form(n)) < 1e-9;
  }
  line(7, "permutahedron signed sum equals the closed form for N=3..8", ok);
}

// 8. oracle equivalence suites
void check_oracles() {
  bool ok = true;

  // (a) Rado inequalities vs LP membership over CS permutahedra
  int done = 0;
  for (int n = 4; n <= 7 && ok; ++n) {
    const auto family = VertexFamily::cs(n);
    Vec ref(n, 0.0);
    ref[0] = tau(n);
    ref[n - 1] = -tau(n);
    const auto spec = PolytopeSpec::named(PolyKind::I_CS, n);
    for (int t = 0; t < 250 && ok; ++t, ++done) {
      CounterRng rng(1002, t * 10 + n);
      const auto base = random_freq(n, 1001, t * 10 + n, 1.0);
      const double target = 0.5 + rng.next_double();  // straddle the boundary
      const double nv = norm_for(spec, base);
      if (nv < 1e-12) continue;
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = base[i] * target / nv;
      const auto y = FrequencyVector::from_mean_zero(v);
      if (std::fabs(norm_for(spec, y) - 1.0) < 1e-9) continue;  // ambiguous boundary
      ok = rado_membership(y, ref) == hull_membership(family, y).inside;
    }
  }

  // (b) generic circumscribed norm vs closed forms
  for (int n = 4; n <= 8 && ok; ++n) {
    const auto db = VertexFamily::db(n);
    for (int t = 0; t < 100 && ok; ++t) {
      const auto y = random_freq(n, 2002, t * 10 + n, 2.0);
      ok = rel_err(circ_norm_generic(db, y),
                   norm_for(PolytopeSpec::named(PolyKind::C_DB, n), y)) < 1e-10;
    }
    for (int j = 1; 2 * j <= n && ok; ++j) {
      const auto cs = VertexFamily::cs(n, j);
      for (int t = 0; t < 40 && ok; ++t) {
        const auto y = random_freq(n, 3003 + j, t * 10 + n, 2.0);
        ok = rel_err(circ_norm_generic(cs, y),
                     norm_for(PolytopeSpec::named(PolyKind::C_CS_gen, n, j), y)) < 1e-10;
      }
    }
  }

  // (c) kappa/tau stability verdict vs eigenvalue verdict
  for (int n = 3; n <= 8 && ok; ++n) {
    int kept = 0;
    for (int t = 0; kept < 1000 / 6 && t < 5000 && ok; ++t) {
      CounterRng rng(4004, t * 10 + n);
      const double scale = 0.2 + 1.6 * rng.next_double();
      Vec th(n);
      for (double& a : th) a = rng.next_symmetric(scale);
      const PhaseConfiguration theta{th};
      const auto rep = stability_check(theta);
      bool marginal = std::fabs(rep.tau_sum - 2.0) < 1e-6;
      for (double k : rep.kappas) marginal = marginal || std::fabs(k) < 1e-6;
      if (marginal || rep.verdict == StabilityVerdict::Marginal) continue;
      const auto eig = eig_stability_oracle(jacobian(theta), n);
      if (eig == StabilityVerdict::Marginal) continue;
      ++kept;
      ok = rep.verdict == eig;
    }
  }

  // (d) finite-difference check of the Jacobian
  for (int t = 0; t < 100 && ok; ++t) {
    const int n = 3 + t % 6;
    CounterRng rng(5005, t);
    Vec th(n);
    for (double& a : th) a = rng.next_symmetric(2.5);
    const auto jac = jacobian(PhaseConfiguration{th});
    const double h = 1e-5;
    for (int i = 0; i < n && ok; ++i) {
      for (int c = 0; c < n && ok; ++c) {
        Vec up(th), dn(th);
        up[c] += h;
        dn[c] -= h;
        const auto f = [i, n](const Vec& a) {
          double s = 0.0;
          for (int j = 0; j < n; ++j) s += std::sin(a[j] - a[i]);
          return s;
        };
        ok = std::fabs((f(up) - f(dn)) / (2.0 * h) - jac[i * n + c]) < 1e-6;
      }
    }
  }
  (void)done;
  line(8, "oracle equivalences: Rado/LP, generic norm, stability, Jacobian", ok);
}

// 9. three-oscillator stability threshold
void check_threshold_family() {
  const double ap = std::acos((-1.0 + std::sqrt(33.0)) / 8.0);
  const auto rep = stability_check(PhaseConfiguration(Vec{ap, 0.0, -ap}));
  bool ok = std::fabs(rep.tau_sum - 2.0) <= 1e-9;
  ok = ok && std::fabs(rep.kappas[0] - (15.0 + std::sqrt(33.0)) / 16.0) <= 1e-12;
  ok = ok && std::fabs(rep.kappas[2] - (15.0 + std::sqrt(33.0)) / 16.0) <= 1e-12;
  ok = ok && std::fabs(rep.kappas[1] - (3.0 + std::sqrt(33.0)) / 4.0) <= 1e-12;
  ok = ok && std::fabs(std::cos(2.0 * ap) + 0.296535) <= 1e-5;
  const double a28 = 0.28 * M_PI;
  const auto rep28 = stability_check(PhaseConfiguration(Vec{a28, 0.0, -a28}));
  ok = ok && rep28.verdict == StabilityVerdict::Stable && std::cos(2.0 * a28) < 0.0;
  line(9, "three-oscillator family: threshold angle, kappas, nu_13, stability", ok);
}

// 10. sufficient / necessary sandwich around the locking test
void check_sandwich() {
  bool ok = true;
  std::int64_t violations = 0;
  for (int n = 3; n <= 8; ++n) {
    const double gamma = n;
    const double t = tau(n);
    for (int k = 0; k < 10000; ++k) {
      // cycle through scales so spreads straddle both thresholds
      const double half = n * (0.35 + 0.25 * (k % 5));
      const auto w = random_freq(n, 6006, std::uint64_t(n) << 32 | k, half);
      const double sp = spread(w.span());
      const bool locked = order_param_locking_test(w, gamma);
      if (sp < gamma && !locked) ++violations;
      if (locked && !(sp < 2.0 * t * gamma / n)) ++violations;
    }
  }
  ok = violations == 0;
  line(10, "sandwich: spread<gamma => locking => spread<2 tau gamma/N, 60000 trials",
       ok, "violations=" + std::to_string(violations));
}

// 11. extreme-value statistics suite
void check_evs() {
  bool ok = true;
  std::ostringstream d;

  // (a) spread of N uniforms follows Beta(N-1, 2)
  {
    const int n = 8, trials = 5000;
    std::vector<double> ranges(trials);
    for (int t = 0; t < trials; ++t) {
      CounterRng rng(7007, t);
      double lo = 2.0, hi = -1.0;
      for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
      }
      ranges[t] = hi - lo;
    }
    const double ks = ks_statistic(ranges, [n](double x) { return uniform_range_cdf(n, x); });
    const double p = ks_p_value(ks, trials);
    ok = ok && p >= 0.01;
    d << "beta_p=" << p;
  }

  // (b) exponential maxima converge to the Gumbel law
  {
    const int n = 10000, trials = 10000;
    const auto dist = FrequencyDistribution::exponential(1.0);
    const auto sc = scaling_exponential(n, 1.0);
    std::vector<double> z(trials);
    for (int t = 0; t < trials; ++t) {
      CounterRng rng(8008, t);
      double mx = -1.0;
      for (int i = 0; i < n; ++i) mx = std::max(mx, dist.sample(rng));
      z[t] = (mx - sc.b_n) / sc.a_n;
    }
    const double ks = ks_statistic(z, [](double x) { return std::exp(-std::exp(-x)); });
    ok = ok && ks < 0.02;
    d << " gumbel_ks=" << ks;
  }

  // (c) Gaussian synchronization transition at N=512
  {
    const std::vector<double> kappas{0.25, 0.5, 1.0, 2.0};
    const auto rows = phase_transition_experiment(FrequencyDistribution::gaussian(), {512},
                                                  kappas, 500, 9009);
    ok = ok && rows.front().p_sync < 0.5 && rows.back().p_sync > 0.5;
    ok = ok && rows.back().p_sync - rows.front().p_sync > 0.5;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double slack = 2.0 * (rows[i - 1].std_error + rows[i].std_error);
      ok = ok && rows[i].p_sync >= rows[i - 1].p_sync - slack;
    }
    d << " p_sync(0.25)=" << rows.front().p_sync << " p_sync(2)=" << rows.back().p_sync;
  }
  line(11, "extreme-value suite: Beta range, Gumbel limit, transition curve", ok, d.str());
}

// 12. byte-identical report across runs and thread counts
void check_determinism() {
  const char* cli = std::getenv("KURAMOTO_CLI_PATH");
#ifdef KURAMOTO_CLI_PATH
  if (!cli) cli = KURAMOTO_CLI_PATH;
#endif
  if (!cli) {
    line(12, "report determinism (KURAMOTO_CLI_PATH not set)", false);
    return;
  }
  const char* tmp = std::getenv("TMPDIR");
  const std::string dir = (tmp && *tmp) ? std::string(tmp) + "/" : "/tmp/";
  const auto run = [&](int threads, const std::string& path) -> bool {
    std::ostringstream cmd;
    cmd << '"' << cli << '"' << " report --seed 7 --samples 20000 --threads " << threads
        << " --out " << path;
    const int rc = std::system(cmd.str().c_str());
    return rc != -1;
  };
  const auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  bool ok = run(1, dir + "report_t1a.json") && run(1, dir + "report_t1b.json") &&
            run(2, dir + "report_t2.json") && run(8, dir + "report_t8.json");
  const std::string a = slurp(dir + "report_t1a.json");
  ok = ok && !a.empty();
  ok = ok && a == slurp(dir + "report_t1b.json");
  ok = ok && a == slurp(dir + "report_t2.json");
  ok = ok && a == slurp(dir + "report_t8.json");
  line(12, "report output byte-identical across runs and threads {1,2,8}", ok);
}

}  // namespace

int main() {
  check_tau();
  check_exact_volumes();
  check_mc_n4();
  check_true_volumes();
  check_ratios_n10();
  check_table2_n5();
  check_postnikov();
  check_oracles();
  check_threshold_family();
  check_sandwich();
  check_evs();
  check_determinism();
  if (g_failures) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
