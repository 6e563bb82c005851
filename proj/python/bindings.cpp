#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kuramoto/evs.hpp"
#include "kuramoto/membership.hpp"
#include "kuramoto/sampler.hpp"
#include "kuramoto/volumes.hpp"

namespace py = pybind11;
using namespace kuramoto;

namespace {

FrequencyVector freq(const Vec& v) { return FrequencyVector::from_mean_zero(v); }

FrequencyDistribution dist_by_name(const std::string& name, double lambda) {
  if (name == "gaussian") return FrequencyDistribution::gaussian();
  if (name == "exponential") return FrequencyDistribution::exponential(lambda);
  if (name == "two_sided_exponential") return FrequencyDistribution::two_sided_exponential(lambda);
  if (name == "uniform01") return FrequencyDistribution::uniform01();
  if (name == "pareto") return FrequencyDistribution::pareto(lambda);
  throw std::invalid_argument("unknown distribution: " + name);
}

}  // namespace

PYBIND11_MODULE(_kuramoto, m) {
  m.doc() = "Phase-locking polytopes for the all-to-all Kuramoto model";

  m.def("tau", &tau, py::arg("n"));
  m.def("tau_general", &tau_general, py::arg("n"), py::arg("j"));

  m.def(
      "db_points", [](int n) { return VertexFamily::db(n).materialize(); }, py::arg("n"));
  m.def(
      "cs_points", [](int n, int j) { return VertexFamily::cs(n, j).materialize(); },
      py::arg("n"), py::arg("j") = 1);

  m.def(
      "norm", [](const std::string& spec, const Vec& y) {
        return norm_for(PolytopeSpec::parse(spec), freq(y));
      },
      py::arg("spec"), py::arg("y"), "Polytope norm of a mean-zero vector");

  m.def(
      "in_polytope",
      [](const std::string& spec, const Vec& y) {
        return in_polytope(PolytopeSpec::parse(spec), freq(y));
      },
      py::arg("spec"), py::arg("y"));

  m.def(
      "locking_test",
      [](const Vec& omega, double gamma) { return order_param_locking_test(freq(omega), gamma); },
      py::arg("omega"), py::arg("gamma"),
      "Order-parameter root test for a stable phase-locked state");

  m.def(
      "stability",
      [](const Vec& theta) {
        const auto rep = stability_check(PhaseConfiguration(theta));
        const char* v = rep.verdict == StabilityVerdict::Stable     ? "stable"
                        : rep.verdict == StabilityVerdict::Unstable ? "unstable"
                                                                    : "marginal";
        return py::make_tuple(v, rep.kappas, rep.tau_sum);
      },
      py::arg("theta"), "(verdict, kappas, tau_sum) for a phase configuration");

  m.def("exact_volume",
        [](const std::string& spec) { return exact_volume(PolytopeSpec::parse(spec)); },
        py::arg("spec"));
  m.def("postnikov_volume",
        [](const Vec& x, bool euclidean) { return postnikov_volume(x, euclidean); },
        py::arg("x"), py::arg("euclidean") = false);

  m.def(
      "mc_volume",
      [](const std::string& spec_str, std::int64_t samples, std::uint64_t seed, int threads) {
        const auto spec = PolytopeSpec::parse(spec_str);
        Indicator ind;
        if (spec.kind == PolyKind::HullOfUnion) {
          auto verts = std::make_shared<std::vector<Vec>>(hull_vertices(spec));
          ind = [verts](const FrequencyVector& y) { return hull_membership(*verts, y).inside; };
        } else {
          ind = [spec](const FrequencyVector& y) { return norm_for(spec, y) <= 1.0; };
        }
        VolumeEstimate est;
        {
          py::gil_scoped_release release;
          est = poke_estimate(spec.n, ind, samples, seed, threads,
                              std::max(tau(spec.n), 0.5 * max_spread_on_unit_ball(spec)));
        }
        return py::make_tuple(est.value, est.std_error);
      },
      py::arg("spec"), py::arg("samples") = 100000, py::arg("seed") = 2024, py::arg("threads") = 1,
      "(value, std_error) weighted Monte Carlo volume estimate");

  m.def(
      "true_volume",
      [](int n, std::int64_t samples, std::uint64_t seed, int threads) {
        VolumeEstimate est;
        {
          py::gil_scoped_release release;
          est = estimate_true_volume(n, samples, seed, threads);
        }
        return py::make_tuple(est.value, est.std_error);
      },
      py::arg("n"), py::arg("samples") = 100000, py::arg("seed") = 2024, py::arg("threads") = 1);

  m.def(
      "scaling",
      [](const std::string& dist, int n, double lambda) {
        const auto s = scaling_for(dist_by_name(dist, lambda), n, lambda);
        return py::make_tuple(s.a_n, s.b_n, s.xi_n);
      },
      py::arg("dist"), py::arg("n"), py::arg("lam") = 1.0,
      "(a_n, b_n, xi_n) Gumbel scaling sequence");

  m.def(
      "transition_curve",
      [](const std::string& dist, double lambda, const std::vector<int>& n_list,
         const std::vector<double>& kappa_list, int trials, std::uint64_t seed) {
        const auto rows = phase_transition_experiment(dist_by_name(dist, lambda), n_list,
                                                      kappa_list, trials, seed);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["n"] = r.n;
          d["kappa"] = r.kappa;
          d["trials"] = r.trials;
          d["p_sync"] = r.p_sync;
          d["std_error"] = r.std_error;
          d["in_theory_gap"] = r.in_theory_gap;
          out.append(d);
        }
        return out;
      },
      py::arg("dist"), py::arg("lam"), py::arg("n_list"), py::arg("kappa_list"),
      py::arg("trials"), py::arg("seed") = 2024);
}
