#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "folia/audit.hpp"
#include "folia/bounds.hpp"
#include "folia/errors.hpp"
#include "folia/leaf.hpp"
#include "folia/report.hpp"
#include "folia/riccati.hpp"
#include "folia/sampling.hpp"
#include "folia/zoo.hpp"

namespace {

using nlohmann::json;
using namespace folia;

// Precedence: explicit flag > config file key > built-in default.
class Cfg {
 public:
  void load(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) raise(Errc::invalid_params, "cannot open config file " + path);
    try {
      data_ = json::parse(in);
    } catch (const json::parse_error& e) {
      raise(Errc::invalid_params, std::string("config parse error: ") + e.what());
    }
    if (!data_.is_object())
      raise(Errc::invalid_params, "config must be a JSON object");
  }

  template <class T>
  void apply(const CLI::Option* opt, const char* key, T& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (!data_.contains(key)) return;
    try {
      var = data_.at(key).get<T>();
    } catch (const json::exception&) {
      raise(Errc::invalid_params,
            std::string("config key '") + key + "' has the wrong type");
    }
  }

 private:
  json data_ = json::object();
};

json box_json(const Box& box) {
  std::vector<bool> per(box.dim());
  for (int a = 0; a < box.dim(); ++a) per[a] = box.is_periodic(a);
  return json{{"lo", box.lo}, {"hi", box.hi}, {"periodic", per}};
}

json signature_json(const IdentitySignature& s) {
  return json{{"s_B", s.s_B}, {"s_ric", s.s_ric}, {"s_A", s.s_A}};
}

json params_json(const ZooParams& zp) {
  return json{{"values", zp.values}, {"periodic_leaves", zp.periodic_leaves}};
}

const char* branch_name(RiccatiBranch b) {
  switch (b) {
    case RiccatiBranch::tan_oscillatory: return "tan_oscillatory";
    case RiccatiBranch::rational: return "rational";
    case RiccatiBranch::tanh_interior: return "tanh_interior";
    case RiccatiBranch::coth_exterior: return "coth_exterior";
    case RiccatiBranch::equilibrium: return "equilibrium";
  }
  return "unknown";
}

ZooParams chart_params(bool periodic_leaves,
                       const std::vector<std::string>& overrides) {
  ZooParams zp;
  zp.periodic_leaves = periodic_leaves;
  for (const std::string& kv : overrides) {
    const std::size_t pos = kv.find('=');
    if (pos == std::string::npos || pos == 0)
      raise(Errc::invalid_params, "--param needs key=value, got '" + kv + "'");
    try {
      zp.values[kv.substr(0, pos)] = std::stod(kv.substr(pos + 1));
    } catch (const std::exception&) {
      raise(Errc::invalid_params, "--param value is not a number in '" + kv + "'");
    }
  }
  return zp;
}

std::vector<ChartPoint> make_samples(const Box& box, const std::string& sampler,
                                     int points, int per_axis,
                                     std::uint64_t seed) {
  if (sampler == "grid") return grid_sample(box, per_axis);
  if (points < 1) raise(Errc::invalid_params, "points must be positive");
  if (sampler == "sobol") return sobol_sample(box, points, seed);
  if (sampler == "uniform") return uniform_sample(box, points, seed);
  raise(Errc::invalid_params, "unknown sampler '" + sampler +
                                  "' (expected sobol, uniform, or grid)");
}

// --- zoo ---------------------------------------------------------------

struct ZooOpts {
  std::string config;
  std::string chart;
  bool periodic = false;
  std::vector<std::string> params;
  CLI::Option* chart_opt = nullptr;
};

int cmd_zoo(const ZooOpts& o) {
  Cfg cfg;
  cfg.load(o.config);
  std::string chart = o.chart;
  cfg.apply(o.chart_opt, "chart", chart);

  json out = report_envelope("zoo");
  json charts = json::array();
  for (const std::string& name : zoo_names()) {
    if (!chart.empty() && name != chart) continue;
    Spacetime st = zoo_build(name, chart_params(o.periodic, o.params));
    json entry{{"name", st.name},
               {"description", st.description},
               {"box", box_json(st.metric->box())},
               {"geodesic_normal", st.geodesic_normal},
               {"params", params_json(st.params)}};
    entry["curvature_constant"] =
        st.curvature_constant ? json(*st.curvature_constant) : json(nullptr);
    charts.push_back(entry);
  }
  if (charts.empty())
    raise(Errc::invalid_params, "no chart named '" + chart + "'");
  out["charts"] = charts;
  write_json(std::cout, out);
  return 0;
}

// --- audit -------------------------------------------------------------

struct AuditOpts {
  std::string config;
  std::string chart = "minkowski";
  std::string sampler = "sobol";
  int points = 200;
  int per_axis = 5;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  bool calibrate = false;
  bool periodic = false;
  std::vector<std::string> params;
  std::vector<std::string> witnesses = {
      "robertson_walker", "minkowski_tilted", "static_lapse_torus",
      "de_sitter_flat_slicing"};
  int witness_points = 25;
  CLI::Option* chart_opt = nullptr;
  CLI::Option* sampler_opt = nullptr;
  CLI::Option* points_opt = nullptr;
  CLI::Option* per_axis_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* witnesses_opt = nullptr;
  CLI::Option* witness_points_opt = nullptr;
};

int cmd_audit(const AuditOpts& o) {
  Cfg cfg;
  cfg.load(o.config);
  AuditOpts r = o;
  cfg.apply(o.chart_opt, "chart", r.chart);
  cfg.apply(o.sampler_opt, "sampler", r.sampler);
  cfg.apply(o.points_opt, "points", r.points);
  cfg.apply(o.per_axis_opt, "per_axis", r.per_axis);
  cfg.apply(o.seed_opt, "seed", r.seed);
  cfg.apply(o.tol_opt, "tol", r.tol);
  cfg.apply(o.witnesses_opt, "witnesses", r.witnesses);
  cfg.apply(o.witness_points_opt, "witness_points", r.witness_points);

  json out = report_envelope("audit");

  if (r.calibrate) {
    std::vector<WitnessSamples> witnesses;
    json names = json::array();
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      Spacetime st = zoo_build(r.witnesses[i], chart_params(o.periodic, o.params));
      WitnessSamples w;
      w.fol = st.foliation;
      w.points = make_samples(st.metric->box(), r.sampler, r.witness_points,
                              r.per_axis, r.seed + 2 * i);
      w.label = st.name;
      witnesses.push_back(std::move(w));
      names.push_back(r.witnesses[i]);
    }
    SignatureResult res = calibrate_signature(witnesses, r.tol);
    json table = json::array();
    for (const auto& [sig, worst] : res.table)
      table.push_back(
          {{"signature", signature_json(sig)}, {"max_residual", worst}});
    const bool pass = res.winner == kCalibratedSignature;
    out["mode"] = "calibrate";
    out["witnesses"] = names;
    out["witness_points"] = r.witness_points;
    out["tolerance"] = r.tol;
    out["winner"] = signature_json(res.winner);
    out["winner_max_residual"] = res.winner_max_residual;
    out["runner_up_max_residual"] = res.runner_up_max_residual;
    out["table"] = table;
    out["pass"] = pass;
    write_json(std::cout, out);
    return pass ? 0 : 2;
  }

  Spacetime st = zoo_build(r.chart, chart_params(o.periodic, o.params));
  std::vector<ChartPoint> pts =
      make_samples(st.metric->box(), r.sampler, r.points, r.per_axis, r.seed);
  double max_fund = 0.0, max_split = 0.0, max_ref = 0.0;
  for (const ChartPoint& p : pts) {
    const PointGeometry geom = point_geometry(st.foliation, p);
    max_fund = std::max(max_fund,
                        std::abs(fundamental_residual(geom, kCalibratedSignature)));
    max_split = std::max(max_split, std::abs(split_residual(geom)));
    max_ref = std::max(max_ref,
                       std::abs(fundamental_residual(geom, kReferenceSignature)));
  }
  const bool pass = max_fund <= r.tol && max_split <= r.tol;
  out["mode"] = "verify";
  out["chart"] = st.name;
  out["params"] = params_json(st.params);
  out["sampler"] = r.sampler;
  out["points"] = static_cast<int>(pts.size());
  out["seed"] = r.seed;
  out["tolerance"] = r.tol;
  out["signature"] = signature_json(kCalibratedSignature);
  out["max_fundamental_residual"] = max_fund;
  out["max_split_residual"] = max_split;
  out["reference_signature"] = signature_json(kReferenceSignature);
  out["reference_max_residual"] = max_ref;
  out["pass"] = pass;
  write_json(std::cout, out);
  return pass ? 0 : 2;
}

// --- riccati -----------------------------------------------------------

struct RiccatiOpts {
  std::string config;
  double kappa = 0.0;
  double h0 = 0.0;
  double s_max = 1.0;
  int samples = 20;
  double tol = 1e-8;
  double pole_tol = 1e-6;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* h0_opt = nullptr;
  CLI::Option* s_max_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
};

int cmd_riccati(const RiccatiOpts& o) {
  Cfg cfg;
  cfg.load(o.config);
  RiccatiOpts r = o;
  cfg.apply(o.kappa_opt, "kappa", r.kappa);
  cfg.apply(o.h0_opt, "h0", r.h0);
  cfg.apply(o.s_max_opt, "s_max", r.s_max);
  cfg.apply(o.samples_opt, "samples", r.samples);
  cfg.apply(o.tol_opt, "tol", r.tol);
  if (r.samples < 1 || !(r.s_max > 0.0))
    raise(Errc::invalid_params, "need samples >= 1 and s_max > 0");

  RiccatiSolution sol = riccati_closed_form(r.kappa, r.h0);
  const bool pole_in_window = sol.blow_up && *sol.blow_up <= r.s_max;
  std::vector<double> queries;
  for (int j = 1; j <= r.samples; ++j) {
    const double s = r.s_max * j / r.samples;
    if (sol.blow_up && s > *sol.blow_up - 1e-3) break;
    queries.push_back(s);
  }
  // an unreachable probe past the pole makes the integrator locate it
  if (pole_in_window) queries.push_back(*sol.blow_up + 0.5);
  RiccatiNumeric num = riccati_integrate(r.kappa, r.h0, queries);

  json rows = json::array();
  double max_diff = 0.0, max_scaled = 0.0;
  for (std::size_t i = 0; i < num.s.size(); ++i) {
    const double closed = sol.evaluate(num.s[i]);
    const double diff = std::abs(num.h[i] - closed);
    max_diff = std::max(max_diff, diff);
    max_scaled = std::max(max_scaled, diff / (1.0 + std::abs(closed)));
    rows.push_back({{"s", num.s[i]},
                    {"closed_form", closed},
                    {"numeric", num.h[i]},
                    {"abs_diff", diff}});
  }

  bool pass = max_scaled <= r.tol;
  json pole = json(nullptr);
  if (pole_in_window) {
    const bool found = num.blow_up_estimate.has_value();
    const double diff =
        found ? std::abs(*num.blow_up_estimate - *sol.blow_up) : -1.0;
    pass = pass && found && diff <= r.pole_tol;
    pole = json{{"closed_form", *sol.blow_up},
                {"estimate", found ? json(*num.blow_up_estimate) : json(nullptr)},
                {"abs_diff", found ? json(diff) : json(nullptr)}};
  }

  json out = report_envelope("riccati");
  out["kappa"] = r.kappa;
  out["h0"] = r.h0;
  out["s_max"] = r.s_max;
  out["branch"] = branch_name(sol.branch);
  out["blow_up"] = sol.blow_up ? json(*sol.blow_up) : json(nullptr);
  out["blow_down"] = sol.blow_down ? json(*sol.blow_down) : json(nullptr);
  out["samples"] = rows;
  out["max_abs_diff"] = max_diff;
  out["max_scaled_diff"] = max_scaled;
  out["pole"] = pole;
  out["tolerance"] = r.tol;
  out["pass"] = pass;
  write_json(std::cout, out);
  return pass ? 0 : 2;
}

// --- gf ----------------------------------------------------------------

struct GfOpts {
  std::string config;
  std::string chart = "robertson_walker";
  std::string sampler = "sobol";
  int points = 200;
  int per_axis = 5;
  std::uint64_t seed = 1;
  bool check = false;
  bool periodic = false;
  std::vector<std::string> params;
  CLI::Option* chart_opt = nullptr;
  CLI::Option* sampler_opt = nullptr;
  CLI::Option* points_opt = nullptr;
  CLI::Option* per_axis_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int cmd_gf(const GfOpts& o) {
  Cfg cfg;
  cfg.load(o.config);
  GfOpts r = o;
  cfg.apply(o.chart_opt, "chart", r.chart);
  cfg.apply(o.sampler_opt, "sampler", r.sampler);
  cfg.apply(o.points_opt, "points", r.points);
  cfg.apply(o.per_axis_opt, "per_axis", r.per_axis);
  cfg.apply(o.seed_opt, "seed", r.seed);

  Spacetime st = zoo_build(r.chart, chart_params(o.periodic, o.params));
  std::vector<ChartPoint> pts =
      make_samples(st.metric->box(), r.sampler, r.points, r.per_axis, r.seed);

  json out = report_envelope("gf");
  out["chart"] = st.name;
  out["params"] = params_json(st.params);
  out["sampler"] = r.sampler;
  out["points"] = static_cast<int>(pts.size());
  out["seed"] = r.seed;
  if (o.check) {
    BoundCheck chk = check_bounds(st.foliation, pts);
    out["bound_checked"] = true;
    out["margin"] = chk.margin;
    out["inf_integrand"] = chk.report.inf_integrand;
    out["argmin"] = chk.report.argmin;
    out["max_abs_integrand"] = chk.report.max_abs_integrand;
    out["sup_H_sq"] = chk.report.sup_H_sq;
    out["arg_sup_H"] = chk.report.arg_sup_H;
    out["sup_B_norm"] = chk.report.sup_B_norm;
  } else {
    GfReport rep = gf_estimate(st.foliation, pts);
    out["bound_checked"] = false;
    out["margin"] = -rep.inf_integrand - rep.sup_H_sq;
    out["inf_integrand"] = rep.inf_integrand;
    out["argmin"] = rep.argmin;
    out["max_abs_integrand"] = rep.max_abs_integrand;
    out["sup_H_sq"] = rep.sup_H_sq;
    out["arg_sup_H"] = rep.arg_sup_H;
    out["sup_B_norm"] = rep.sup_B_norm;
  }
  write_json(std::cout, out);
  return 0;
}

// --- umbilicity ----------------------------------------------------------

struct UmbOpts {
  std::string config;
  std::string chart = "slab_counterexample";
  std::vector<double> leaves;
  int per_axis = 8;
  std::vector<double> start;
  double s_max = 1.0;
  double ds = 0.05;
  bool periodic = false;
  std::vector<std::string> params;
  CLI::Option* chart_opt = nullptr;
  CLI::Option* leaves_opt = nullptr;
  CLI::Option* per_axis_opt = nullptr;
  CLI::Option* start_opt = nullptr;
  CLI::Option* s_max_opt = nullptr;
  CLI::Option* ds_opt = nullptr;
};

int cmd_umbilicity(const UmbOpts& o) {
  Cfg cfg;
  cfg.load(o.config);
  UmbOpts r = o;
  cfg.apply(o.chart_opt, "chart", r.chart);
  cfg.apply(o.leaves_opt, "leaves", r.leaves);
  cfg.apply(o.per_axis_opt, "per_axis", r.per_axis);
  cfg.apply(o.start_opt, "start", r.start);
  cfg.apply(o.s_max_opt, "s_max", r.s_max);
  cfg.apply(o.ds_opt, "ds", r.ds);

  const bool scan_mode = !r.leaves.empty();
  const bool prop_mode = !r.start.empty();
  if (scan_mode == prop_mode)
    raise(Errc::invalid_params,
          "pick exactly one mode: --leaves ... (scan) or --start ... "
          "(propagate)");

  Spacetime st = zoo_build(r.chart, chart_params(o.periodic, o.params));
  json out = report_envelope("umbilicity");
  out["chart"] = st.name;
  out["params"] = params_json(st.params);

  if (scan_mode) {
    std::vector<LeafUmbilicity> rows =
        umbilicity_scan(st.foliation, r.leaves, r.per_axis);
    json table = json::array();
    for (const LeafUmbilicity& row : rows)
      table.push_back({{"leaf_coordinate", row.leaf_coordinate},
                       {"max_umb_dev", row.max_umb_dev},
                       {"max_shape_norm", row.max_shape_norm}});
    out["mode"] = "scan";
    out["per_axis"] = r.per_axis;
    out["leaves"] = table;
  } else {
    if (r.start.size() != static_cast<std::size_t>(st.metric->box().dim()))
      raise(Errc::invalid_params, "--start needs one value per coordinate");
    UmbilicityPropagation rep =
        umbilicity_propagation_check(st.foliation, r.start, r.s_max, r.ds);
    out["mode"] = "propagate";
    out["start"] = r.start;
    out["s_max"] = r.s_max;
    out["ds"] = r.ds;
    out["c_est"] = rep.c_est;
    out["initial_umb_dev"] = rep.initial_umb_dev;
    out["max_umb_dev"] = rep.max_umb_dev;
    out["samples"] = static_cast<int>(rep.s.size());
  }
  write_json(std::cout, out);
  return 0;
}

// --- integrate-leaf ------------------------------------------------------

struct LeafOpts {
  std::string config;
  std::string chart = "static_lapse_torus";
  double tau0 = 0.0;
  int per_axis = 64;
  double tol = 1e-8;
  double stokes_tol = 1e-6;
  bool periodic = false;
  std::vector<std::string> params;
  CLI::Option* chart_opt = nullptr;
  CLI::Option* tau0_opt = nullptr;
  CLI::Option* per_axis_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* stokes_tol_opt = nullptr;
};

int cmd_integrate_leaf(const LeafOpts& o) {
  Cfg cfg;
  cfg.load(o.config);
  LeafOpts r = o;
  cfg.apply(o.chart_opt, "chart", r.chart);
  cfg.apply(o.tau0_opt, "tau0", r.tau0);
  cfg.apply(o.per_axis_opt, "per_axis", r.per_axis);
  cfg.apply(o.tol_opt, "tol", r.tol);
  cfg.apply(o.stokes_tol_opt, "stokes_tol", r.stokes_tol);

  Spacetime st = zoo_build(r.chart, chart_params(o.periodic, o.params));
  ObstructionReport rep =
      obstruction_report(st.foliation, r.tau0, r.per_axis, r.tol);
  const bool pass = rep.stokes_residual <= r.stokes_tol;

  json out = report_envelope("integrate-leaf");
  out["chart"] = st.name;
  out["params"] = params_json(st.params);
  out["tau0"] = rep.tau0;
  out["per_axis"] = r.per_axis;
  out["area"] = rep.area;
  out["max_B_norm"] = rep.max_B_norm;
  out["stokes_residual"] = rep.stokes_residual;
  out["integral_n_ric"] = rep.integral_n_ric;
  out["integral_A_sq"] = rep.integral_A_sq;
  out["obstruction"] = rep.obstruction;
  out["obstructed"] = rep.obstructed;
  out["stokes_tol"] = r.stokes_tol;
  out["pass"] = pass;
  write_json(std::cout, out);
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical auditor for spacelike slicings on Lorentzian charts"};
  app.require_subcommand(1);

  ZooOpts zoo;
  CLI::App* zoo_cmd = app.add_subcommand("zoo", "describe the chart catalog");
  zoo.chart_opt = zoo_cmd->add_option("--chart", zoo.chart, "only this chart");
  zoo_cmd->add_flag("--periodic-leaves", zoo.periodic,
                    "use the compact-leaf variant where available");
  zoo_cmd->add_option("--param", zoo.params,
                      "chart parameter override key=value (repeatable)");
  zoo_cmd->add_option("--config", zoo.config, "JSON config file");

  AuditOpts audit;
  CLI::App* audit_cmd = app.add_subcommand(
      "audit", "check the divergence identities against the pinned signs");
  audit.chart_opt = audit_cmd->add_option("--chart", audit.chart, "chart name");
  audit.sampler_opt =
      audit_cmd->add_option("--sampler", audit.sampler, "sobol|uniform|grid");
  audit.points_opt = audit_cmd->add_option("--points", audit.points,
                                           "sample count (sobol/uniform)");
  audit.per_axis_opt =
      audit_cmd->add_option("--per-axis", audit.per_axis, "grid nodes per axis");
  audit.seed_opt = audit_cmd->add_option("--seed", audit.seed, "sampler seed");
  audit.tol_opt = audit_cmd->add_option("--tol", audit.tol, "residual tolerance");
  audit_cmd->add_flag("--calibrate", audit.calibrate,
                      "search all eight sign choices over witness charts");
  audit.witnesses_opt = audit_cmd->add_option(
      "--witnesses", audit.witnesses, "witness charts for calibration");
  audit.witness_points_opt = audit_cmd->add_option(
      "--witness-points", audit.witness_points, "samples per witness");
  audit_cmd->add_flag("--periodic-leaves", audit.periodic,
                      "use the compact-leaf variant where available");
  audit_cmd->add_option("--param", audit.params,
                        "chart parameter override key=value (repeatable)");
  audit_cmd->add_option("--config", audit.config, "JSON config file");

  RiccatiOpts ric;
  CLI::App* ric_cmd = app.add_subcommand(
      "riccati", "closed-form focal solutions against adaptive integration");
  ric.kappa_opt = ric_cmd->add_option("--kappa", ric.kappa, "constant coefficient");
  ric.h0_opt = ric_cmd->add_option("--h0", ric.h0, "initial value");
  ric.s_max_opt = ric_cmd->add_option("--s-max", ric.s_max, "window length");
  ric.samples_opt = ric_cmd->add_option("--samples", ric.samples, "query count");
  ric.tol_opt = ric_cmd->add_option("--tol", ric.tol, "value tolerance");
  ric_cmd->add_option("--config", ric.config, "JSON config file");

  GfOpts gf;
  CLI::App* gf_cmd = app.add_subcommand(
      "gf", "sample the divergence-functional integrand and its extrema");
  gf.chart_opt = gf_cmd->add_option("--chart", gf.chart, "chart name");
  gf.sampler_opt = gf_cmd->add_option("--sampler", gf.sampler, "sobol|uniform|grid");
  gf.points_opt = gf_cmd->add_option("--points", gf.points, "sample count");
  gf.per_axis_opt = gf_cmd->add_option("--per-axis", gf.per_axis, "grid nodes per axis");
  gf.seed_opt = gf_cmd->add_option("--seed", gf.seed, "sampler seed");
  gf_cmd->add_flag("--check-bounds", gf.check,
                   "enforce the mean-curvature bound on the samples");
  gf_cmd->add_flag("--periodic-leaves", gf.periodic,
                   "use the compact-leaf variant where available");
  gf_cmd->add_option("--param", gf.params,
                     "chart parameter override key=value (repeatable)");
  gf_cmd->add_option("--config", gf.config, "JSON config file");

  UmbOpts umb;
  CLI::App* umb_cmd = app.add_subcommand(
      "umbilicity", "scan leaves or propagate along the normal flow");
  umb.chart_opt = umb_cmd->add_option("--chart", umb.chart, "chart name");
  umb.leaves_opt = umb_cmd->add_option("--leaves", umb.leaves,
                                       "leaf coordinates to scan")
                       ->delimiter(',');
  umb.per_axis_opt =
      umb_cmd->add_option("--per-axis", umb.per_axis, "scan nodes per leaf axis");
  umb.start_opt = umb_cmd->add_option("--start", umb.start,
                                      "start point for propagation")
                      ->delimiter(',');
  umb.s_max_opt = umb_cmd->add_option("--s-max", umb.s_max, "propagation length");
  umb.ds_opt = umb_cmd->add_option("--ds", umb.ds, "propagation sample step");
  umb_cmd->add_flag("--periodic-leaves", umb.periodic,
                    "use the compact-leaf variant where available");
  umb_cmd->add_option("--param", umb.params,
                      "chart parameter override key=value (repeatable)");
  umb_cmd->add_option("--config", umb.config, "JSON config file");

  LeafOpts leaf;
  CLI::App* leaf_cmd = app.add_subcommand(
      "integrate-leaf", "compact-leaf quadrature and the balance integrals");
  leaf.chart_opt = leaf_cmd->add_option("--chart", leaf.chart, "chart name");
  leaf.tau0_opt = leaf_cmd->add_option("--tau0", leaf.tau0, "leaf value");
  leaf.per_axis_opt =
      leaf_cmd->add_option("--per-axis", leaf.per_axis, "nodes per leaf axis");
  leaf.tol_opt = leaf_cmd->add_option("--tol", leaf.tol, "obstruction threshold");
  leaf.stokes_tol_opt = leaf_cmd->add_option("--stokes-tol", leaf.stokes_tol,
                                             "closed-leaf divergence tolerance");
  leaf_cmd->add_flag("--periodic-leaves", leaf.periodic,
                     "use the compact-leaf variant where available");
  leaf_cmd->add_option("--param", leaf.params,
                       "chart parameter override key=value (repeatable)");
  leaf_cmd->add_option("--config", leaf.config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string tool = "folia";
  try {
    if (zoo_cmd->parsed()) return cmd_zoo(zoo);
    if (audit_cmd->parsed()) {
      tool = "audit";
      return cmd_audit(audit);
    }
    if (ric_cmd->parsed()) {
      tool = "riccati";
      return cmd_riccati(ric);
    }
    if (gf_cmd->parsed()) {
      tool = "gf";
      return cmd_gf(gf);
    }
    if (umb_cmd->parsed()) {
      tool = "umbilicity";
      return cmd_umbilicity(umb);
    }
    if (leaf_cmd->parsed()) {
      tool = "integrate-leaf";
      return cmd_integrate_leaf(leaf);
    }
  } catch (const Error& err) {
    json out = report_envelope(tool);
    out["error"] = {{"code", errc_name(err.code())}, {"message", err.what()}};
    write_json(std::cout, out);
    return err.code() == Errc::invalid_params ? 1 : 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
