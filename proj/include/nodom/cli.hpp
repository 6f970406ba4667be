#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nodom/bound.hpp"
#include "nodom/critpoints.hpp"
#include "nodom/errors.hpp"
#include "nodom/geometry.hpp"
#include "nodom/quaddiff.hpp"
#include "nodom/serialization.hpp"
#include "nodom/specfun.hpp"
#include "nodom/svg.hpp"
#include "nodom/wos.hpp"

// Command-line front end. Every subcommand writes one JSON report
//   {command, inputs, outputs, seed, runtime_ms, version}
// to stdout (or --out PATH) and a plain table to stderr.
// Exit codes: 0 success, 2 verified violation, 1 error.

namespace nodom::cli {

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

struct Outcome {
  json inputs = json::object();
  json outputs = json::object();
  std::optional<std::uint64_t> seed;
  int exit_code = 0;
};

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// One line per scalar output; nested values are flattened with dotted keys.
inline void print_table(std::ostream& err, const std::string& command, const json& outputs) {
  err << command << '\n';
  auto walk = [&](auto&& self, const std::string& prefix, const json& j) -> void {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        self(self, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
      }
    } else if (j.is_array()) {
      if (j.size() > 8) {
        err << "  " << prefix << "  [" << j.size() << " entries]\n";
        return;
      }
      for (std::size_t i = 0; i < j.size(); ++i) self(self, prefix + "[" + std::to_string(i) + "]", j[i]);
    } else if (j.is_number_float()) {
      err << "  " << prefix << "  " << format_number(j.get<double>()) << '\n';
    } else {
      err << "  " << prefix << "  " << j.dump() << '\n';
    }
  };
  walk(walk, "", outputs);
}

inline Complex parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("--point expects RE,IM or inf");
  try {
    std::size_t used = 0;
    const double re = std::stod(s.substr(0, comma), &used);
    if (used != comma) throw DomainError("--point: malformed real part");
    const std::string tail = s.substr(comma + 1);
    const double im = std::stod(tail, &used);
    if (used != tail.size()) throw DomainError("--point: malformed imaginary part");
    return {re, im};
  } catch (const std::logic_error&) {
    throw DomainError("--point expects RE,IM or inf");
  }
}

inline json boundary_summary(const Polyline& b) {
  return {{"vertices", b.size()},
          {"length", polyline_length(b)},
          {"closure_gap", closure_gap(b)},
          {"signed_area", signed_area(b)}};
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal non-overlapping domain toolkit"};
  app.require_subcommand(1);
  std::string out_path;
  unsigned threads = 1;
  app.add_option("--out", out_path, "Write the JSON report to PATH instead of stdout");
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 256u));

  double c_tol = 1e-10;
  auto* constants = app.add_subcommand("constants", "Critical data of Psi");
  constants->add_option("--tol", c_tol, "Bracket width")->capture_default_str();

  int t_grid = 10'000;
  double t_tol = 1e-4;
  auto* threshold = app.add_subcommand("threshold", "Threshold search for the symmetric split");
  threshold->add_option("--grid", t_grid, "alpha grid size")->capture_default_str();
  threshold->add_option("--tol", t_tol, "gamma bisection tolerance")->capture_default_str();

  double b_gamma = 0.0, b_alpha = 1.0;
  auto* bnd = app.add_subcommand("bound", "Chain bound and symmetric value");
  bnd->add_option("--gamma", b_gamma)->required();
  bnd->add_option("--alpha", b_alpha, "alpha_1 in (0, 2)")->capture_default_str();

  double v_gamma = 0.0;
  std::int64_t v_samples = 0;
  std::uint64_t v_seed = 0;
  auto* verify = app.add_subcommand("verify", "Randomised check of J_2 <= E(gamma)");
  verify->add_option("--gamma", v_gamma)->required();
  verify->add_option("--samples", v_samples)->required();
  verify->add_option("--seed", v_seed)->required();

  double q_gamma = 0.0, q_step = 5e-4, q_eps = 1e-5;
  std::string q_svg;
  std::int64_t q_walks = 0;
  std::uint64_t q_seed = 0;
  bool q_field = false;
  auto* qdc = app.add_subcommand("qd", "Critical graph of the quadratic differential");
  qdc->add_option("--gamma", q_gamma)->required();
  qdc->add_option("--step", q_step, "Trajectory step")->capture_default_str();
  qdc->add_option("--svg", q_svg, "Write an SVG rendering to PATH");
  auto* q_walks_opt = qdc->add_option("--walks", q_walks, "Walks per radius for the extremal product");
  auto* q_seed_opt = qdc->add_option("--seed", q_seed);
  qdc->add_option("--eps", q_eps, "Walk-on-spheres shell")->capture_default_str();
  qdc->add_flag("--field", q_field, "Include all polylines in the report");

  std::string r_shape, r_point;
  std::int64_t r_walks = 0;
  double r_eps = 1e-4;
  std::uint64_t r_seed = 0;
  auto* radius = app.add_subcommand("radius", "Monte Carlo inner radius of an elementary domain");
  radius->add_option("--shape", r_shape, "Domain as JSON")->required();
  radius->add_option("--point", r_point, "RE,IM or inf")->required();
  radius->add_option("--walks", r_walks)->required();
  radius->add_option("--eps", r_eps)->capture_default_str();
  radius->add_option("--seed", r_seed)->required();

  std::uint64_t s_seed = 0;
  int s_random = 20;
  std::int64_t s_walks = 20'000;
  double s_eps = 1e-4;
  int s_samples = 1024;
  auto* separation = app.add_subcommand(
      "separation", "Separating-transform inequalities on the symmetric and random configurations");
  separation->add_option("--seed", s_seed)->required();
  separation->add_option("--random", s_random, "Number of random configurations")->capture_default_str();
  separation->add_option("--walks", s_walks)->capture_default_str();
  separation->add_option("--eps", s_eps, "Shell relative to the start distance")->capture_default_str();
  separation->add_option("--samples", s_samples, "Boundary samples")->capture_default_str();

  auto emit = [&](const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        out << json{{"error", {{"type", "io"}, {"message", "cannot write " + out_path}}}}.dump(2) << "\n";
        return false;
      }
      f << text;
    }
    return true;
  };
  auto fail = [&](const std::string& type, const std::string& message) {
    err << "error (" << type << "): " << message << '\n';
    emit(json{{"error", {{"type", type}, {"message", message}}}});
    return 1;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  const auto t0 = std::chrono::steady_clock::now();
  detail::Outcome oc;
  std::string command;
  try {
    if (*constants) {
      command = "constants";
      oc.inputs = {{"tol", c_tol}};
      const auto mx = locate_psi_max(c_tol);
      const auto cz = locate_curvature_zero(std::max(c_tol, 1e-10));
      oc.outputs = {{"x1", mx.x},
                    {"psi_x1", mx.psi},
                    {"x0", cz.x},
                    {"psi_x0", cz.psi},
                    {"d2log_psi_at_x1", specfun::d2log_psi(mx.x)},
                    {"bracket_x1", to_json_value(mx.bracket)},
                    {"bracket_x0", to_json_value(cz.bracket)}};
    } else if (*threshold) {
      command = "threshold";
      oc.inputs = {{"grid", t_grid}, {"tol", t_tol}};
      const auto rep = bound::gamma_threshold(t_grid, t_tol);
      oc.outputs = to_json_value(rep);
      double worst = -1e300;
      for (int i = 0; i < t_grid; ++i) {
        worst = std::max(worst, bound::excess(0.65, bound::alpha_grid_node(i, t_grid)));
      }
      oc.outputs["max_excess_at_0_65"] = worst;
      oc.outputs["covers_0_65"] = rep.gamma_hat >= 0.65;
    } else if (*bnd) {
      command = "bound";
      oc.inputs = {{"gamma", b_gamma}, {"alpha", b_alpha}};
      const double cb = bound::chain_bound(b_gamma, b_alpha);
      const double sv = bound::symmetric_value(b_gamma);
      oc.outputs = {{"chain_bound", cb},
                    {"chain_bound_phi_form", bound::chain_bound_phi_form(b_gamma, b_alpha)},
                    {"symmetric_value", sv},
                    {"excess", bound::excess(b_gamma, b_alpha)},
                    {"relative_gap", (cb - sv) / sv}};
    } else if (*verify) {
      command = "verify";
      oc.inputs = {{"gamma", v_gamma}, {"samples", v_samples}, {"seed", v_seed}};
      oc.seed = v_seed;
      const auto rep = verify_inequality(v_gamma, v_samples, v_seed, threads);
      oc.outputs = to_json_value(rep);
      if (rep.violations > 0) oc.exit_code = 2;
    } else if (*qdc) {
      command = "qd";
      oc.inputs = {{"gamma", q_gamma}, {"step", q_step}};
      if (q_walks_opt->count() > 0 && q_seed_opt->count() == 0) {
        throw DomainError("qd: --walks needs --seed");
      }
      const auto field = qd::critical_graph(q_gamma, q_step);
      json zeros = json::array();
      for (const auto& z : field.zeros) {
        zeros.push_back({{"z", to_json_value(z.z)},
                         {"multiplicity", z.multiplicity},
                         {"residual", std::abs(qd::numerator(z.z, q_gamma))}});
      }
      json bounds = json::object();
      const auto conj = [](Complex z) { return std::conj(z); };
      const auto neg = [](Complex z) { return -z; };
      for (int j = 0; j < 4; ++j) {
        const auto& b = field.circular_boundaries[j];
        json s = detail::boundary_summary(b);
        const int partner = j == 1 ? 2 : (j == 2 ? 1 : j);
        s["conj_symmetry_error"] = hausdorff(map_polyline(b, conj), b);
        s["negation_symmetry_error"] = hausdorff(map_polyline(b, neg), field.circular_boundaries[partner]);
        bounds[qd::pole_name(static_cast<qd::Pole>(j))] = s;
      }
      oc.outputs = {{"zeros", zeros},
                    {"critical_edges", field.trajectories.size()},
                    {"circular_boundaries", bounds},
                    {"infinity_coordinates", "zeta = 1/w"}};
      if (q_field) oc.outputs["field"] = qd::to_json_value(field);
      if (!q_svg.empty()) {
        oc.inputs["svg"] = q_svg;
        std::ofstream f(q_svg, std::ios::binary);
        if (!f) throw DomainError("qd: cannot write " + q_svg);
        f << qd::render_svg(field);
      }
      if (q_walks_opt->count() > 0) {
        oc.inputs["walks"] = q_walks;
        oc.inputs["eps"] = q_eps;
        oc.inputs["seed"] = q_seed;
        oc.seed = q_seed;
        const auto est = qd::extremal_product_estimate(field, WosParams{q_walks, q_eps, q_seed, threads});
        const double sv = bound::symmetric_value(q_gamma);
        json e = qd::to_json_value(est);
        e["symmetric_value"] = sv;
        e["z_score"] = (est.value - sv) / est.std_error;
        e["relative_difference"] = (est.value - sv) / sv;
        e["within_3_std_errors"] = std::abs(est.value - sv) <= 3.0 * est.std_error;
        oc.outputs["extremal_product"] = e;
      }
    } else if (*radius) {
      command = "radius";
      json shape;
      try {
        shape = json::parse(r_shape);
      } catch (const json::exception& e) {
        throw DomainError(std::string("--shape: ") + e.what());
      }
      oc.inputs = {{"shape", shape}, {"point", r_point}, {"walks", r_walks}, {"eps", r_eps}, {"seed", r_seed}};
      oc.seed = r_seed;
      const auto dom = domain_from_json(shape);
      const WosParams p{r_walks, r_eps, r_seed, threads};
      McEstimate est;
      std::optional<double> exact;
      if (r_point == "inf" || r_point == "infinity") {
        est = estimate_inner_radius_at_infinity(dom, p);
        exact = inner_radius_at_infinity(dom);
      } else {
        const Complex a = detail::parse_point(r_point);
        est = estimate_inner_radius(ElementaryOracle(dom), a, p);
        exact = inner_radius_analytic(dom, a);
      }
      oc.outputs = {{"estimate", to_json_value(est)}};
      if (exact) {
        oc.outputs["analytic"] = *exact;
        oc.outputs["relative_error"] = (est.value - *exact) / *exact;
        oc.outputs["z_score"] = est.std_error > 0.0 ? (est.value - *exact) / est.std_error : 0.0;
      }
    } else if (*separation) {
      command = "separation";
      oc.inputs = {{"seed", s_seed}, {"random", s_random}, {"walks", s_walks}, {"eps", s_eps}, {"samples", s_samples}};
      oc.seed = s_seed;
      if (s_random < 0) throw DomainError("separation: --random must be >= 0");
      json runs = json::array();
      int violated = 0, inconclusive = 0;
      for (int i = -1; i < s_random; ++i) {
        const Configuration c = i < 0 ? symmetric_configuration()
                                      : sample_configuration(s_seed, {}, static_cast<std::uint64_t>(i));
        SeparationParams sp;
        sp.wos = WosParams{s_walks, s_eps, derive_seed(s_seed, static_cast<std::uint64_t>(i + 1)), threads};
        sp.samples = s_samples;
        const auto rep = check_separation_bounds(c, sp);
        violated += rep.violated;
        inconclusive += rep.inconclusive;
        json r = to_json_value(rep);
        r["label"] = i < 0 ? std::string("symmetric") : "random[" + std::to_string(i) + "]";
        r["configuration"] = to_json_value(c);
        runs.push_back(r);
      }
      oc.outputs = {{"configurations", runs},
                    {"violated_configurations", violated},
                    {"inconclusive_configurations", inconclusive}};
      if (violated > 0) oc.exit_code = 2;
    }
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const json::exception& e) {
    return fail("json", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  json report{{"command", command},
              {"inputs", oc.inputs},
              {"outputs", oc.outputs},
              {"seed", oc.seed ? json(*oc.seed) : json(nullptr)},
              {"runtime_ms", ms},
              {"version", kVersion}};
  detail::print_table(err, command, oc.outputs);
  if (!emit(report)) return 1;
  return oc.exit_code;
}

}  // namespace nodom::cli
