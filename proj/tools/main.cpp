#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kuramoto/evs.hpp"
#include "kuramoto/membership.hpp"
#include "kuramoto/sampler.hpp"
#include "kuramoto/volumes.hpp"

using json = nlohmann::ordered_json;
using namespace kuramoto;

namespace {

// RFC-4180: quote any field containing a comma, quote, or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

Indicator indicator_for(const PolytopeSpec& spec) {
  if (spec.kind == PolyKind::HullOfUnion) {
    auto verts = std::make_shared<std::vector<Vec>>(hull_vertices(spec));
    return [verts](const FrequencyVector& y) { return hull_membership(*verts, y).inside; };
  }
  return [spec](const FrequencyVector& y) { return norm_for(spec, y) <= 1.0; };
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw CLI::ValidationError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw CLI::ValidationError("empty number list");
  return out;
}

FrequencyDistribution dist_for(const std::string& name, double* lambda_out) {
  *lambda_out = 1.0;
  if (name == "gaussian") return FrequencyDistribution::gaussian();
  if (name.rfind("exp:", 0) == 0) {
    *lambda_out = std::stod(name.substr(4));
    return FrequencyDistribution::exponential(*lambda_out);
  }
  if (name.rfind("dexp:", 0) == 0) {
    *lambda_out = std::stod(name.substr(5));
    return FrequencyDistribution::two_sided_exponential(*lambda_out);
  }
  if (name == "uniform") return FrequencyDistribution::uniform01();
  throw CLI::ValidationError("unknown distribution: " + name +
                             " (expected gaussian, exp:L, dexp:L, uniform)");
}

struct Cell {
  double value = 0.0;
  double std_error = 0.0;  // 0 for exact cells
  bool exact = false;
  std::string error;  // row-level error marker
};

Cell exact_cell(const PolytopeSpec& spec) {
  Cell c;
  c.value = exact_volume(spec);
  c.exact = true;
  return c;
}

// Sampling-cube half side for a spec: the default tau_N box unless the
// polytope sticks out of C_CS_N (the C_DB ball does).
double box_half_width(const PolytopeSpec& spec) {
  return std::max(tau(spec.n), 0.5 * max_spread_on_unit_ball(spec));
}

Cell mc_cell(const PolytopeSpec& spec, std::int64_t samples, std::uint64_t seed, int threads) {
  Cell c;
  try {
    const auto est = poke_estimate(spec.n, indicator_for(spec), samples, seed, threads,
                                   box_half_width(spec));
    c.value = est.value;
    c.std_error = est.std_error;
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  return c;
}

void append_table_row(std::string& csv, int n, const std::string& label, const Cell& cell,
                      const Cell& reference) {
  std::vector<std::string> row{std::to_string(n), label};
  if (!cell.error.empty()) {
    row.insert(row.end(), {"", "", "error", "", cell.error});
  } else {
    row.push_back(format_double(cell.value));
    row.push_back(cell.exact ? "" : format_double(cell.std_error));
    row.push_back(cell.exact ? "exact" : "mc");
    row.push_back(reference.value > 0.0 ? format_double(cell.value / reference.value) : "");
    row.push_back("");
  }
  csv += csv_row(row);
}

constexpr const char* kTableHeader = "n,spec,volume,std_error,kind,ratio_to_C_CS,error\n";

json cell_json(const Cell& c) {
  json j;
  j["value"] = c.value;
  j["kind"] = c.exact ? "exact" : "mc";
  if (!c.exact) j["std_error"] = c.std_error;
  return j;
}

// ---- report: the deterministic self-check bundle ----

struct Check {
  std::string name;
  bool pass;
  json detail;
};

json run_report(std::uint64_t seed, std::int64_t samples, int threads) {
  std::vector<Check> checks;
  const auto add = [&](std::string name, bool pass, json detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  };

  // coupling constants for small n
  {
    json taus = json::object();
    bool ok = true;
    for (int n = 3; n <= 10; ++n) {
      const double t = tau(n);
      taus[std::to_string(n)] = t;
      ok = ok && t >= n - 2 && t <= n - 1;
    }
    ok = ok && std::fabs(tau(3) - 1.76017) < 1e-4 &&
         std::fabs(tau(4) - 1.5 * std::sqrt(3.0)) < 1e-10;
    add("coupling_constants", ok, taus);
  }

  // exact volume identities at n = 3
  {
    const double t3 = tau(3);
    json d = json::object();
    bool ok = true;
    const auto rel = [](double a, double b) { return std::fabs(a - b) / std::fabs(b); };
    const double idb = exact_volume(PolytopeSpec::parse("I_DB(3)"));
    const double cdb = exact_volume(PolytopeSpec::parse("C_DB(3)"));
    const double ics = exact_volume(PolytopeSpec::parse("I_CS(3)"));
    const double ccs = exact_volume(PolytopeSpec::parse("C_CS(3)"));
    d["I_DB"] = idb;
    d["C_DB"] = cdb;
    d["I_CS"] = ics;
    d["C_CS"] = ccs;
    ok = ok && rel(idb, 9.0 * std::sqrt(3.0)) < 1e-9;
    ok = ok && rel(cdb, 12.0 * std::sqrt(3.0)) < 1e-9;
    ok = ok && rel(ics, 3.0 * std::sqrt(3.0) * t3 * t3) < 1e-9;
    ok = ok && rel(ccs, 4.0 * std::sqrt(3.0) * t3 * t3) < 1e-9;
    add("exact_volumes_n3", ok, d);
  }

  // n = 4 volume panel: exact closed forms, MC recomputation, true region,
  // intersection, and the LP hull of the union
  {
    json d = json::object();
    bool ok = true;
    const struct {
      const char* spec;
      double exact;
    } panel[] = {{"I_DB(4)", 128.0},
                 {"C_DB(4)", 256.0},
                 {"I_CS(4)", 135.0 * std::sqrt(3.0) / 2.0},
                 {"C_CS(4)", 162.0 * std::sqrt(3.0)}};
    for (const auto& p : panel) {
      const auto spec = PolytopeSpec::parse(p.spec);
      const double ev = exact_volume(spec);
      const auto est = poke_estimate(4, indicator_for(spec), samples, seed, threads,
                                     box_half_width(spec));
      json cell;
      cell["exact"] = ev;
      cell["mc"] = est.value;
      cell["mc_std_error"] = est.std_error;
      d[p.spec] = cell;
      ok = ok && std::fabs(ev - p.exact) < 1e-9 * p.exact;
      ok = ok && std::fabs(est.value - ev) <= 4.0 * est.std_error;
    }
    const auto inter =
        poke_estimate(4, indicator_for(PolytopeSpec::parse("Intersect(C_DB(4),C_CS(4))")),
                      samples, seed, threads);
    d["Intersect(C_DB(4),C_CS(4))"] = {{"mc", inter.value}, {"mc_std_error", inter.std_error}};
    const auto tru = estimate_true_volume(4, samples, seed, threads);
    d["true_region"] = {{"mc", tru.value}, {"mc_std_error", tru.std_error}};
    const std::int64_t lp_samples = std::min<std::int64_t>(samples, 10000);
    const auto hull = poke_estimate(4, indicator_for(PolytopeSpec::parse("Hull(I_DB(4),I_CS(4))")),
                                    lp_samples, seed, threads);
    d["Hull(I_DB(4),I_CS(4))"] = {{"mc", hull.value}, {"mc_std_error", hull.std_error}};
    ok = ok && tru.value > exact_volume(PolytopeSpec::parse("I_CS(4)")) - 4.0 * tru.std_error;
    ok = ok && tru.value < exact_volume(PolytopeSpec::parse("C_CS(4)")) + 4.0 * tru.std_error;
    add("volume_panel_n4", ok, d);
  }

  // permutahedron volumes against the closed form
  {
    json d = json::object();
    bool ok = true;
    for (int n = 3; n <= 8; ++n) {
      Vec x(n, 0.0);
      x[0] = 1.0;
      x[n - 1] = -1.0;
      const double v = postnikov_volume(x, true);
      const double cf = unit_cs_volume_closed_form(n);
      d[std::to_string(n)] = {{"signed_sum", v}, {"closed_form", cf}};
      ok = ok && std::fabs(v - cf) < 1e-9 * cf;
    }
    add("permutahedron_closed_form", ok, d);
  }

  // three-oscillator family (alpha, 0, -alpha) at the stability threshold
  {
    const double alpha = std::acos((-1.0 + std::sqrt(33.0)) / 8.0);
    const auto rep = stability_check(PhaseConfiguration(Vec{alpha, 0.0, -alpha}));
    json d;
    d["alpha"] = alpha;
    d["kappa"] = rep.kappas;
    d["tau_sum"] = rep.tau_sum;
    d["nu_13"] = std::cos(2.0 * alpha);
    bool ok = std::fabs(rep.tau_sum - 2.0) < 1e-9;
    ok = ok && std::fabs(rep.kappas[0] - (15.0 + std::sqrt(33.0)) / 16.0) < 1e-12;
    ok = ok && std::fabs(rep.kappas[1] - (3.0 + std::sqrt(33.0)) / 4.0) < 1e-12;
    ok = ok && std::fabs(std::cos(2.0 * alpha) - (-0.296535)) < 1e-5;
    add("threshold_configuration", ok, d);
  }

  json out;
  // threads are deliberately not echoed: the report is byte-identical for
  // any thread count, and the output should say so
  out["config"] = {{"seed", seed}, {"samples", samples}};
  out["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    out["checks"].push_back(j);
    all = all && c.pass;
  }
  out["all_pass"] = all;
  return out;
}

// floats rendered at 17 significant digits so the bytes are reproducible
std::string dump_json(const json& j) {
  std::string s = j.dump(2, ' ', false, nlohmann::json::error_handler_t::strict);
  s += '\n';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-locking polytopes for the all-to-all Kuramoto model"};
  app.require_subcommand(1);

  std::uint64_t seed = 2024;
  std::int64_t samples = 1000000;
  int threads = 1;
  std::string format = "json";
  std::string out_path;
  const auto add_common = [&](CLI::App* cmd, bool mc_flags) {
    cmd->add_option("--format", format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "Write output to FILE instead of stdout");
    if (mc_flags) {
      cmd->add_option("--seed", seed, "RNG seed");
      cmd->add_option("--samples", samples, "Monte Carlo sample count");
      cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    }
  };

  // points
  auto* cmd_points = app.add_subcommand("points", "Stream a boundary vertex family as CSV");
  std::string family = "db";
  int pn = 4, pj = 1;
  cmd_points->add_option("--family", family, "db|cs")->check(CLI::IsMember({"db", "cs"}));
  cmd_points->add_option("--n", pn, "Dimension")->required();
  cmd_points->add_option("--j", pj, "Generalized family index (cs only)");
  add_common(cmd_points, false);

  // norm
  auto* cmd_norm = app.add_subcommand("norm", "Evaluate a polytope norm at a vector");
  std::string spec_str, vector_csv;
  cmd_norm->add_option("--spec", spec_str, "Polytope spec, e.g. C_CS_gen(10,3)")->required();
  cmd_norm->add_option("--vector", vector_csv, "Mean-zero vector as CSV")->required();
  add_common(cmd_norm, false);

  // member
  auto* cmd_member = app.add_subcommand("member", "Polytope / true-region membership test");
  bool use_true = false;
  double gamma = 0.0;
  cmd_member->add_option("--spec", spec_str, "Polytope spec");
  cmd_member->add_flag("--true", use_true, "Test the true locked region instead of a polytope");
  cmd_member->add_option("--gamma", gamma, "Coupling strength (with --true)");
  cmd_member->add_option("--vector", vector_csv, "Mean-zero vector as CSV")->required();
  add_common(cmd_member, false);

  // volume
  auto* cmd_volume = app.add_subcommand("volume", "Exact, Monte Carlo, or permutahedron volume");
  bool v_exact = false, v_mc = false, v_postnikov = false, v_true = false, v_euclidean = false;
  int vn = 0;
  std::string x_csv;
  cmd_volume->add_flag("--exact", v_exact, "Closed-form volume of --spec");
  cmd_volume->add_flag("--mc", v_mc, "Weighted Monte Carlo volume of --spec");
  cmd_volume->add_flag("--true", v_true, "Monte Carlo volume of the true locked region");
  cmd_volume->add_flag("--postnikov", v_postnikov, "Permutahedron volume of conv(Sym(--x))");
  cmd_volume->add_flag("--euclidean", v_euclidean, "Euclidean normalization for --postnikov");
  cmd_volume->add_option("--spec", spec_str, "Polytope spec");
  cmd_volume->add_option("--n", vn, "Dimension (for --true)");
  cmd_volume->add_option("--x", x_csv, "Vector for --postnikov, as CSV");
  add_common(cmd_volume, true);

  // table1
  auto* cmd_table1 = app.add_subcommand(
      "table1", "Circumscribed-polytope volume table (exact + Monte Carlo)");
  std::string n_list_str = "5,10,15,20";
  cmd_table1->add_option("--n", n_list_str, "Comma-separated N list");
  add_common(cmd_table1, true);

  // table2
  auto* cmd_table2 =
      app.add_subcommand("table2", "Inscribed-polytope volume table (LP rows are slow)");
  std::string n_list2_str = "5";
  std::int64_t lp_samples = 10000;
  cmd_table2->add_option("--n", n_list2_str, "Comma-separated N list (LP rows are slow for N>5)");
  cmd_table2->add_option("--lp-samples", lp_samples, "Sample count for LP hull rows");
  add_common(cmd_table2, true);

  // evs
  auto* cmd_evs = app.add_subcommand("evs", "Synchronization phase-transition curve");
  std::string dist_str = "gaussian", kappa_str = "0.25,0.5,1,2";
  std::string evs_n_str = "64,128,256";
  int trials = 200;
  cmd_evs->add_option("--dist", dist_str, "gaussian | exp:LAMBDA | dexp:LAMBDA | uniform");
  cmd_evs->add_option("--n", evs_n_str, "Comma-separated N list");
  cmd_evs->add_option("--kappa", kappa_str, "Comma-separated coupling ratios");
  cmd_evs->add_option("--trials", trials, "Trials per (N, kappa)");
  add_common(cmd_evs, true);

  // report
  auto* cmd_report =
      app.add_subcommand("report", "Deterministic self-check bundle (exit 2 on failure)");
  add_common(cmd_report, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize all usage failures to exit code 1 (0 for --help)
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cmd_points) {
      const auto fam = family == "db" ? VertexFamily::db(pn) : VertexFamily::cs(pn, pj);
      std::string csv;
      fam.for_each([&](std::span<const double> v) { csv += to_csv(v) + "\n"; });
      emit(csv, out_path);
      return 0;
    }

    if (*cmd_norm) {
      const auto spec = PolytopeSpec::parse(spec_str);
      const auto y = FrequencyVector::from_mean_zero(parse_csv_doubles(vector_csv));
      const double value = norm_for(spec, y);
      if (format == "csv") {
        emit(csv_row({"spec", "value"}) + csv_row({spec.str(), format_double(value)}), out_path);
      } else {
        json j;
        j["spec"] = spec.str();
        j["value"] = value;
        emit(dump_json(j), out_path);
      }
      return 0;
    }

    if (*cmd_member) {
      const auto y = FrequencyVector::from_mean_zero(parse_csv_doubles(vector_csv));
      json j;
      if (use_true) {
        if (gamma <= 0.0) throw CLI::ValidationError("--true requires --gamma > 0");
        j["gamma"] = gamma;
        j["inside"] = order_param_locking_test(y, gamma);
      } else {
        if (spec_str.empty()) throw CLI::ValidationError("need --spec or --true");
        const auto spec = PolytopeSpec::parse(spec_str);
        j["spec"] = spec.str();
        if (spec.kind == PolyKind::HullOfUnion) {
          const auto cert = hull_membership(hull_vertices(spec), y);
          j["inside"] = cert.inside;
          j["certificate"] = {{"objective", cert.objective},
                              {"coefficients", cert.coefficients}};
        } else {
          const double v = norm_for(spec, y);
          j["inside"] = v <= 1.0;
          j["certificate"] = {{"norm", v}};
        }
      }
      emit(dump_json(j), out_path);
      return 0;
    }

    if (*cmd_volume) {
      if (int(v_exact) + int(v_mc) + int(v_postnikov) + int(v_true) != 1)
        throw CLI::ValidationError("pick exactly one of --exact, --mc, --true, --postnikov");
      json j;
      if (v_exact) {
        const auto spec = PolytopeSpec::parse(spec_str);
        j["spec"] = spec.str();
        j["value"] = exact_volume(spec);
        j["kind"] = "exact";
      } else if (v_postnikov) {
        if (x_csv.empty()) throw CLI::ValidationError("--postnikov requires --x");
        const Vec x = parse_csv_doubles(x_csv);
        j["x"] = x;
        j["euclidean"] = v_euclidean;
        j["value"] = postnikov_volume(x, v_euclidean);
        j["kind"] = "exact";
      } else {
        VolumeEstimate est;
        if (v_true) {
          if (vn < 3) throw CLI::ValidationError("--true requires --n >= 3");
          est = estimate_true_volume(vn, samples, seed, threads);
          j["spec"] = "true";
        } else {
          const auto spec = PolytopeSpec::parse(spec_str);
          est = poke_estimate(spec.n, indicator_for(spec), samples, seed, threads,
                              box_half_width(spec));
          j["spec"] = spec.str();
        }
        j["value"] = est.value;
        j["std_error"] = est.std_error;
        j["samples"] = est.samples;
        j["seed"] = est.seed;
        j["kind"] = "mc";
      }
      emit(dump_json(j), out_path);
      return 0;
    }

    if (*cmd_table1) {
      std::string csv = kTableHeader;
      for (int n : parse_int_list(n_list_str)) {
        const std::string ns = std::to_string(n);
        const Cell ccs = exact_cell(PolytopeSpec::parse("C_CS(" + ns + ")"));
        const Cell cdb = exact_cell(PolytopeSpec::parse("C_DB(" + ns + ")"));
        std::string all_cs = "C_CS_all(" + ns + ")";
        std::string both = "Intersect(C_DB(" + ns + "),C_CS(" + ns + "))";
        std::string everything =
            "Intersect(C_DB(" + ns + "),C_CS_all(" + ns + "))";
        const Cell c_all = mc_cell(PolytopeSpec::parse(all_cs), samples, seed, threads);
        const Cell c_both = mc_cell(PolytopeSpec::parse(both), samples, seed, threads);
        const Cell c_every = mc_cell(PolytopeSpec::parse(everything), samples, seed, threads);
        Cell c_true;
        try {
          const auto est = estimate_true_volume(n, samples, seed, threads);
          c_true.value = est.value;
          c_true.std_error = est.std_error;
        } catch (const std::exception& e) {
          c_true.error = e.what();
        }
        append_table_row(csv, n, "C_CS(" + ns + ")", ccs, ccs);
        append_table_row(csv, n, "C_DB(" + ns + ")", cdb, ccs);
        append_table_row(csv, n, all_cs, c_all, ccs);
        append_table_row(csv, n, both, c_both, ccs);
        append_table_row(csv, n, everything, c_every, ccs);
        append_table_row(csv, n, "true", c_true, ccs);
      }
      emit(csv, out_path);
      return 0;
    }

    if (*cmd_table2) {
      const auto n_list = parse_int_list(n_list2_str);
      for (int n : n_list)
        if (n > 5)
          std::fprintf(stderr, "note: LP hull rows at N=%d are slow (%lld LP solves)\n", n,
                       static_cast<long long>(lp_samples));
      std::string csv = kTableHeader;
      for (int n : n_list) {
        const std::string ns = std::to_string(n);
        const Cell ccs = exact_cell(PolytopeSpec::parse("C_CS(" + ns + ")"));
        const Cell idb = exact_cell(PolytopeSpec::parse("I_DB(" + ns + ")"));
        const Cell ics = exact_cell(PolytopeSpec::parse("I_CS(" + ns + ")"));
        Cell c_true;
        try {
          const auto est = estimate_true_volume(n, samples, seed, threads);
          c_true.value = est.value;
          c_true.std_error = est.std_error;
        } catch (const std::exception& e) {
          c_true.error = e.what();
        }
        const std::string hull_spec = "Hull(I_DB(" + ns + "),I_CS(" + ns + "))";
        const Cell c_hull = mc_cell(PolytopeSpec::parse(hull_spec), lp_samples, seed, threads);
        append_table_row(csv, n, "true", c_true, ccs);
        append_table_row(csv, n, hull_spec, c_hull, ccs);
        append_table_row(csv, n, "I_DB(" + ns + ")", idb, ccs);
        append_table_row(csv, n, "I_CS(" + ns + ")", ics, ccs);
      }
      emit(csv, out_path);
      return 0;
    }

    if (*cmd_evs) {
      double lambda = 1.0;
      const auto dist = dist_for(dist_str, &lambda);
      const auto rows = phase_transition_experiment(dist, parse_int_list(evs_n_str),
                                                    parse_double_list(kappa_str), trials, seed);
      std::string csv = "n,kappa,trials,p_sync,std_error,in_theory_gap\n";
      for (const auto& r : rows)
        csv += csv_row({std::to_string(r.n), format_double(r.kappa), std::to_string(r.trials),
                        format_double(r.p_sync), format_double(r.std_error),
                        r.in_theory_gap ? "1" : "0"});
      emit(csv, out_path);
      return 0;
    }

    if (*cmd_report) {
      const json j = run_report(seed, samples, threads);
      emit(dump_json(j), out_path);
      return j["all_pass"].get<bool>() ? 0 : 2;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
