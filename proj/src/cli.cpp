#include "schwarzlift/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>

#include "schwarzlift/config.hpp"
#include "schwarzlift/criterion.hpp"
#include "schwarzlift/error.hpp"
#include "schwarzlift/mesh.hpp"
#include "schwarzlift/metric.hpp"
#include "schwarzlift/parallel.hpp"
#include "schwarzlift/scan.hpp"

namespace schwarzlift {

namespace {

using Json = nlohmann::ordered_json;

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
Json pt(cplx z) { return Json::array({num(z.real()), num(z.imag())}); }

struct Units {
  const char* key;
  const char* flag;
  const char* help;
};

// Flags that override configuration keys.
const std::vector<Units>& map_flags() {
  static const std::vector<Units> v = {
      {"family", "--family", "map family: catenoid_exp, strip_catenoid, hille, expr"},
      {"c", "--c", "family parameter c (dimensionless)"},
      {"t", "--t", "catenoid_exp frequency scale t (dimensionless)"},
      {"eps", "--eps", "hille exponent eps (dimensionless)"},
      {"p_kind", "--p-kind", "weight the strip family is built for"},
      {"h", "--h-expr", "expression for h (family expr)"},
      {"g", "--g-expr", "expression for g (family expr)"},
      {"q", "--q-expr", "expression for q with q^2 = g'/h' (family expr)"},
      {"q_inv", "--q-inv-expr", "optional expression for 1/q"},
      {"p", "--p", "Nehari weight: catalogue key or expression in x"},
      {"threads", "--threads", "worker thread cap (0 = SCHWARZLIFT_THREADS or hardware)"},
      {"seed", "--seed", "sampling seed"},
  };
  return v;
}

struct Overrides {
  std::string config_path;
  std::string save_config;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App* app, const Units& u) {
    const RunConfig defaults;
    std::string def;
    const std::string text = serialize(defaults);
    const std::string needle = std::string(u.key) + " =";
    for (std::size_t pos = 0; pos < text.size();) {
      const std::size_t end = text.find('\n', pos);
      const std::string line = text.substr(pos, end - pos);
      if (line.rfind(needle, 0) == 0) def = line.size() > needle.size() ? line.substr(needle.size() + 1) : "";
      pos = end + 1;
    }
    CLI::Option* o = app->add_option(u.flag, values[u.key], u.help);
    o->default_str(def);
    options.emplace_back(u.key, o);
  }

  void add_all(CLI::App* app, const std::vector<Units>& list) {
    for (const Units& u : list) add(app, u);
  }

  void add_common(CLI::App* app) {
    app->add_option("--config", config_path, "configuration file (key = value lines)");
    app->add_option("--save-config", save_config, "write the effective configuration to this file");
    add_all(app, map_flags());
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) cfg.set(key, values.at(key));
    }
    if (cfg.threads > 0) set_thread_cap(cfg.threads);
    if (!save_config.empty()) {
      std::ofstream os(save_config, std::ios::binary);
      if (!os) throw ParamError("cannot write '" + save_config + "'");
      os << serialize(cfg);
    }
    return cfg;
  }
};

std::unique_ptr<std::ostream> open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  auto os = std::make_unique<std::ofstream>(path, mode);
  if (!*os) throw ParamError("cannot write '" + path + "'");
  return os;
}

std::string map_name(const RunConfig& cfg) {
  if (cfg.family == "expr") return "h = " + cfg.h + ", g = " + cfg.g + ", q = " + cfg.q;
  return build_example(cfg)->name;
}

int cmd_extremal(const std::string& spec, double rmax, int n, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  if (!(rmax > 0.0 && rmax < 1.0) || n < 2) throw ParamError("extremal needs 0 < rmax < 1 and n >= 2");
  const NehariFunction p = nehari_from_spec(spec);
  const ExtremalProfile prof = ExtremalProfile::solve(p, std::max(rmax, 1.0 - 1e-4));
  std::unique_ptr<std::ostream> file;
  std::ostream& csv = out_path == "-" ? out : *(file = open_out(out_path));
  std::ostream& rep = out_path == "-" ? err : out;
  csv << "x,u0,phi,phi1,A,p\n";
  char buf[256];
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = rmax * k / (n - 1);
    const double phi = prof.phi(x);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", x, prof.u0(x), phi, prof.phi1(x),
                  prof.A(x), p(x));
    csv << buf;
    if (p.phi) worst = std::max(worst, std::abs(phi - p.phi(x)));
  }
  Json j;
  j["p"] = p.name;
  j["rmax"] = rmax;
  j["n"] = n;
  j["complete"] = p.complete;
  j["phi_at_rmax"] = num(prof.phi(rmax));
  if (p.phi) j["closed_form_max_error"] = num(worst);
  try {
    const LambdaResult l = lambda_limit(p);
    j["lambda"] = num(l.lambda);
    j["mu"] = num(l.mu);
  } catch (const NonconvergentLimit& e) {
    j["lambda"] = nullptr;
    j["lambda_error"] = e.what();
  }
  rep << j.dump(2) << "\n";
  return kExitPass;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const HarmonicMap m = build_map(cfg);
  const NehariFunction p = nehari_from_spec(cfg.p);
  const CriterionReport r = check_criterion(m, p, {cfg.nr, cfg.ntheta, cfg.rmax}, cfg.tol);
  if (!cfg.csv.empty()) write_margin_csv(*open_out(cfg.csv), r);
  Json j;
  j["command"] = "check";
  j["map"] = map_name(cfg);
  j["p"] = p.name;
  j["grid"] = {{"nr", cfg.nr}, {"ntheta", cfg.ntheta}, {"rmax", cfg.rmax}};
  j["tol"] = cfg.tol;
  j["samples"] = r.samples.size();
  j["min_margin"] = num(r.min_margin);
  j["argmin"] = pt(r.argmin);
  j["max_abs_margin"] = num(r.max_abs_margin);
  j["equality_points"] = r.equality_locus.size();
  j["pass"] = r.pass;
  out << j.dump(2) << "\n";
  return r.pass ? kExitPass : kExitViolated;
}

Json pair_json(const ScanPair& p) {
  return {{"z1", pt(p.z1)}, {"z2", pt(p.z2)}, {"distance", num(p.distance)}, {"threshold", num(p.threshold)},
          {"interior", p.interior}};
}

Json scan_json(const ScanReport& r) {
  Json j;
  j["rmax"] = r.options.rmax;
  j["samples"] = r.samples;
  j["candidates"] = r.candidates;
  j["refined"] = r.refined.size();
  Json cols = Json::array();
  for (const auto& p : r.interior_collisions) cols.push_back(pair_json(p));
  j["interior_collisions"] = cols;
  j["nearest_boundary"] = r.nearest_boundary ? pair_json(*r.nearest_boundary) : Json(nullptr);
  j["pass"] = r.pass;
  return j;
}

int cmd_scan(const RunConfig& cfg, bool sequence, std::ostream& out) {
  const HarmonicMap m = build_map(cfg);
  ScanOptions opts;
  opts.n = cfg.scan_n;
  opts.rmax = cfg.scan_rmax;
  opts.sep = cfg.sep;
  Json j;
  j["command"] = "scan";
  j["map"] = map_name(cfg);
  j["sep"] = cfg.sep;
  bool pass = true;
  if (sequence) {
    const BoundaryCutSequence seq = boundary_cut_sequence(m, {0.99, 0.999, 0.9999}, opts);
    Json runs = Json::array();
    for (const auto& r : seq.reports) {
      runs.push_back(scan_json(r));
      pass = pass && r.pass;
    }
    j["runs"] = runs;
    j["boundary_distances_shrink"] = seq.shrinking;
    j["limit_pair"] = seq.limit_pair ? pair_json(*seq.limit_pair) : Json(nullptr);
  } else {
    const ScanReport r = univalence_scan(m, opts);
    j["run"] = scan_json(r);
    pass = r.pass;
  }
  j["pass"] = pass;
  out << j.dump(2) << "\n";
  return pass ? kExitPass : kExitCollision;
}

int cmd_mesh(const RunConfig& cfg, std::ostream& out) {
  const HarmonicMap m = build_map(cfg);
  const Mesh mesh = lift_mesh(m, cfg.mesh_nr, cfg.mesh_ntheta, cfg.mesh_rmax);
  if (cfg.obj.empty() && cfg.ply.empty()) {
    write_obj(out, mesh);
    return kExitPass;
  }
  if (!cfg.obj.empty()) write_obj(*open_out(cfg.obj), mesh);
  if (!cfg.ply.empty()) write_ply(*open_out(cfg.ply, std::ios::out | std::ios::binary), mesh);
  return kExitPass;
}

Json convexity_json(const ConvexityReport& r) {
  return {{"check", r.check},
          {"theta", r.theta},
          {"n", r.n},
          {"min_margin", num(r.min_margin)},
          {"argmin", num(r.argmin)},
          {"min_margin_scaled", num(r.min_margin_scaled)},
          {"derivative_at_zero", num(r.derivative_at_zero)},
          {"scale", num(r.scale)},
          {"pass", r.pass}};
}

int cmd_convexity(const RunConfig& cfg, std::ostream& out) {
  const HarmonicMap m = build_map(cfg);
  const RadialMetric g = RadialMetric::solve(nehari_from_spec(cfg.p), cfg.profile_rmax);
  Json j;
  j["command"] = "convexity";
  j["map"] = map_name(cfg);
  j["p"] = g.profile().nehari().name;
  j["r_end"] = cfg.rmax;
  Json rows = Json::array();
  bool pass = true;
  const SpaceMobius identity;
  for (int k = 0; k < cfg.angles; ++k) {
    const double theta = 2.0 * kPi * k / cfg.angles;
    const ConvexityReport hess = radial_hessian_check(m, g, theta, 401, cfg.rmax);
    const ConvexityReport plain = omega_profile(m, identity, g, theta, 401, cfg.rmax);
    const OmegaNormalizer nm = omega_normalizer(m, theta);
    const ConvexityReport normal = omega_profile(m, nm.map, g, theta, 401, cfg.rmax);
    rows.push_back({{"theta", theta},
                    {"hessian", convexity_json(hess)},
                    {"omega", convexity_json(plain)},
                    {"omega_normalized", convexity_json(normal)}});
    pass = pass && hess.pass && plain.pass && normal.pass;
  }
  j["angles"] = rows;
  j["pass"] = pass;
  out << j.dump(2) << "\n";
  return pass ? kExitPass : kExitViolated;
}

int cmd_examples(std::ostream& out) {
  for (const auto& e : example_catalogue()) {
    out << e.family << "\n  parameters: " << e.parameters << "\n  " << e.description << "\n";
  }
  out << "weights: pi2over4, nehari2, two_over_1mx2, one_over_1mx2, zero, <t>*<key>, or an expression in x\n";
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schwarzian univalence criteria for harmonic maps and their minimal-surface lifts"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string ex_p = "pi2over4", ex_out = "-";
  double ex_rmax = 0.99;
  int ex_n = 2001;
  auto* extremal = app.add_subcommand("extremal", "extremal profile CSV x,u0,phi,phi1,A,p for a weight");
  extremal->add_option("--p", ex_p, "Nehari weight: catalogue key or expression in x");
  extremal->add_option("--rmax", ex_rmax, "largest sampled radius (dimensionless, < 1)");
  extremal->add_option("--n", ex_n, "number of samples on [0, rmax]");
  extremal->add_option("--out", ex_out, "CSV path, '-' for stdout (the JSON summary then goes to stderr)");

  Overrides check_o;
  auto* check = app.add_subcommand("check", "criterion margins 2p(|z|) - (|Sf| + e^{2 sigma}|K|) on a polar grid");
  check_o.add_common(check);
  check_o.add_all(check, {{"nr", "--nr", "radial grid lines"},
                          {"ntheta", "--ntheta", "angular grid lines"},
                          {"rmax", "--rmax", "outer grid radius (dimensionless, < 1)"},
                          {"tol", "--tol", "pass tolerance on the margin (absolute, units of |Sf|)"},
                          {"csv", "--csv", "margin grid CSV path (r,theta,margin)"}});

  Overrides scan_o;
  bool sequence = false;
  auto* scan = app.add_subcommand("scan", "injectivity scan of the lift with spatial hashing");
  scan_o.add_common(scan);
  scan_o.add_all(scan, {{"scan_n", "--n", "spiral sample count"},
                        {"scan_rmax", "--rmax", "sample disk radius (dimensionless, < 1)"},
                        {"sep", "--sep", "minimum parameter separation of a pair (disk units)"}});
  scan->add_flag("--sequence", sequence, "scan at rmax 0.99, 0.999, 0.9999 and track the boundary pair");

  Overrides mesh_o;
  auto* mesh = app.add_subcommand("mesh", "triangulated lift as OBJ and/or binary PLY");
  mesh_o.add_common(mesh);
  mesh_o.add_all(mesh, {{"mesh_nr", "--nr", "rings"},
                        {"mesh_ntheta", "--ntheta", "vertices per ring"},
                        {"mesh_rmax", "--rmax", "outer radius (dimensionless, < 1)"},
                        {"obj", "--obj", "OBJ path (stdout when neither --obj nor --ply)"},
                        {"ply", "--ply", "PLY path"}});

  Overrides conv_o;
  auto* conv = app.add_subcommand("convexity", "radial Hessian and omega-convexity audits along diameters");
  conv_o.add_common(conv);
  conv_o.add_all(conv, {{"angles", "--angles", "number of equally spaced diameters"},
                        {"rmax", "--rmax", "outer radius of the audit (dimensionless, < 1)"},
                        {"profile_rmax", "--profile-rmax", "radius the extremal profile is solved to"}});

  auto* examples = app.add_subcommand("examples", "list the example catalogue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  try {
    if (extremal->parsed()) return cmd_extremal(ex_p, ex_rmax, ex_n, ex_out, out, err);
    if (check->parsed()) return cmd_check(check_o.resolve(), out);
    if (scan->parsed()) return cmd_scan(scan_o.resolve(), sequence, out);
    if (mesh->parsed()) return cmd_mesh(mesh_o.resolve(), out);
    if (conv->parsed()) return cmd_convexity(conv_o.resolve(), out);
    if (examples->parsed()) return cmd_examples(out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const DisconjugacyFailure& e) {
    err << "disconjugacy failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace schwarzlift
