// planktonmap -- command-line front end for the discrete
// phytoplankton-zooplankton map analyses.
//
// Subcommands:
//   fp               fixed points with characteristic coefficients,
//                    eigenvalues and classification
//   simulate         iterate a trajectory, write n,u,v CSV, print verdict
//   classify-params  uhat bounds, parameter subclasses, existence verdict,
//                    hypothesis checklist
//   sweep            scan one parameter for the q(u-) = 1 crossing
//   basin            bisect initial conditions for the basin boundary
//   portrait         verdict grid over a phase-plane rectangle
//
// Exit codes: 0 ok, 2 invalid input, 3 regime precondition unmet,
// 4 I/O failure. Numbers are serialized with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plankton/plankton.hpp"

using nlohmann::ordered_json;
using namespace plankton;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitRegime = 3;
constexpr int kExitIo = 4;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// parameter flags shared by every subcommand; NaN marks "not given"
struct ParamFlags {
  int h = 0;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  double theta = std::numeric_limits<double>::quiet_NaN();
  double c = std::numeric_limits<double>::quiet_NaN();

  void attach(CLI::App* cmd, bool required) {
    auto* oh = cmd->add_option("--h", h, "response order (1 or 2)");
    auto* ob = cmd->add_option("--beta", beta, "conversion coefficient");
    auto* orr = cmd->add_option("--r", r, "zooplankton death coefficient");
    auto* ot = cmd->add_option("--theta", theta, "toxin-liberation coefficient");
    auto* oc = cmd->add_option("--c", c, "saturation coefficient");
    if (required) {
      oh->required();
      ob->required();
      orr->required();
      ot->required();
      oc->required();
    }
  }

  Params to_params() const {
    Params p;
    p.h = h;
    p.beta = beta;
    p.r = r;
    p.theta = theta;
    p.c = c;
    p.validate();
    return p;
  }
};

ordered_json params_json(const Params& p) {
  return ordered_json{
      {"h", p.h}, {"beta", p.beta}, {"r", p.r}, {"theta", p.theta},
      {"c", p.c}};
}

// writes to the path when given, else to stdout; returns false on failure
bool write_output(const std::optional<std::string>& path,
                  const std::string& content) {
  if (!path) {
    std::cout << content;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) return false;
  out << content;
  out.flush();
  return static_cast<bool>(out);
}

bool write_sidecar(const std::string& csv_path, const ordered_json& doc) {
  std::ofstream out(csv_path + ".json", std::ios::binary);
  if (!out) return false;
  out << doc.dump(2) << "\n";
  out.flush();
  return static_cast<bool>(out);
}

// ---------------------------------------------------------------------------
// fp
// ---------------------------------------------------------------------------

struct FpConfig {
  ParamFlags params;
  std::string format = "json";
  std::optional<std::string> out;
};

int run_fp(const FpConfig& cfg) {
  const Params p = cfg.params.to_params();
  const auto verdict = existence_verdict(p);
  std::vector<FixedPoint> fps = boundary_fixed_points(p);
  for (const auto& fp : positive_fixed_points(p)) fps.push_back(fp);

  struct Row {
    const FixedPoint* fp;
    StabilityReport rep;
  };
  std::vector<Row> rows;
  for (const auto& fp : fps) rows.push_back({&fp, classify_fixed_point(fp, p)});

  std::string content;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["params"] = params_json(p);
    doc["fixed_points"] = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j{{"label", to_string(row.fp->label)},
                     {"u", row.fp->state.u},
                     {"v", row.fp->state.v},
                     {"p", row.rep.coeffs.p},
                     {"q", row.rep.coeffs.q},
                     {"lambda",
                      ordered_json::array(
                          {{{"re", row.rep.lambda1.real()},
                            {"im", row.rep.lambda1.imag()}},
                           {{"re", row.rep.lambda2.real()},
                            {"im", row.rep.lambda2.imag()}}})},
                     {"class", to_string(row.rep.stability)}};
      if (row.fp->degenerate) j["degenerate"] = true;
      doc["fixed_points"].push_back(j);
    }
    doc["regime"] = to_string(verdict.regime);
    content = doc.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "label,u,v,p,q,lambda1_re,lambda1_im,lambda2_re,lambda2_im,class\n";
    for (const auto& row : rows) {
      os << to_string(row.fp->label) << ',' << fmt17(row.fp->state.u) << ','
         << fmt17(row.fp->state.v) << ',' << fmt17(row.rep.coeffs.p) << ','
         << fmt17(row.rep.coeffs.q) << ',' << fmt17(row.rep.lambda1.real())
         << ',' << fmt17(row.rep.lambda1.imag()) << ','
         << fmt17(row.rep.lambda2.real()) << ','
         << fmt17(row.rep.lambda2.imag()) << ','
         << to_string(row.rep.stability) << '\n';
    }
    content = os.str();
  } else {
    throw std::invalid_argument("unknown --format " + cfg.format);
  }
  if (!write_output(cfg.out, content)) return kExitIo;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateConfig {
  ParamFlags params;
  double u0 = 0.0, v0 = 0.0;
  long steps = 100000;
  double conv_tol = 1e-9;
  double escape = 1e8;
  std::optional<std::string> target;
  std::optional<std::string> out;
};

std::optional<FixedPointLabel> parse_label(const std::string& s) {
  if (s == "E0") return FixedPointLabel::E0;
  if (s == "E1") return FixedPointLabel::E1;
  if (s == "Eminus") return FixedPointLabel::Eminus;
  if (s == "Eplus") return FixedPointLabel::Eplus;
  return std::nullopt;
}

int run_simulate(const SimulateConfig& cfg) {
  const Params p = cfg.params.to_params();
  SimOptions opts;
  opts.max_steps = cfg.steps;
  opts.conv_tol = cfg.conv_tol;
  opts.escape_radius = cfg.escape;
  opts.validate();

  if (cfg.target) {
    const auto want = parse_label(*cfg.target);
    if (!want)
      throw std::invalid_argument("unknown --target " + *cfg.target);
    bool exists = *want == FixedPointLabel::E0 || *want == FixedPointLabel::E1;
    for (const auto& fp : positive_fixed_points(p))
      exists = exists || fp.label == *want;
    if (!exists)
      throw regime_error("requested target fixed point " + *cfg.target +
                         " does not exist for these parameters");
  }

  const auto res = simulate(State{cfg.u0, cfg.v0}, p, opts);

  std::ostringstream os;
  os << "n,u,v\n";
  for (std::size_t i = 0; i < res.iterates.size(); ++i) {
    const long n = (i + 1 == res.iterates.size())
                       ? res.steps_used
                       : static_cast<long>(i) * res.stride;
    os << n << ',' << fmt17(res.iterates[i].u) << ','
       << fmt17(res.iterates[i].v) << '\n';
  }
  if (!write_output(cfg.out, os.str())) return kExitIo;
  std::cout << "verdict=" << res.verdict_string()
            << " steps=" << res.steps_used << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// classify-params
// ---------------------------------------------------------------------------

struct ClassifyConfig {
  ParamFlags params;
  std::string format = "text";
  std::optional<std::string> out;
  std::size_t samples = 0;  // when > 0, run invariance spot checks
  std::uint64_t seed = 0;
};

int run_classify(const ClassifyConfig& cfg) {
  const Params p = cfg.params.to_params();
  const auto verdict = existence_verdict(p);
  const auto checklist = convergence_checklist(p);

  std::optional<UhatBounds> uhat;
  std::vector<ParameterSubclass> subclasses;
  if (p.h == 1) {
    uhat = uhat_bounds(p);
    subclasses = parameter_subclasses(p);
  }

  // optional seeded one-step invariance spot checks for the regions whose
  // hypotheses hold
  struct SpotCheck {
    RegionId region;
    std::size_t violations;
  };
  std::vector<SpotCheck> spots;
  if (cfg.samples > 0) {
    std::vector<RegionId> regions;
    if (p.h == 1) {
      regions.push_back(RegionId::M1);
      if (p.r <= 1.0) regions.push_back(RegionId::M2);
      for (const auto& block : checklist) {
        if (block.statement == "M3/M4 invariance") {
          const bool base = block.items[0].holds && block.items[1].holds;
          if (base) regions.push_back(RegionId::M3);
          if (base && block.items[2].holds) regions.push_back(RegionId::M4);
        }
      }
    } else {
      for (const auto& block : checklist)
        if (block.statement == "N invariance and convergence to E1" &&
            block.all_hold())
          regions.push_back(RegionId::N);
    }
    for (RegionId region : regions) {
      const auto rep = verify_invariance(region, p, cfg.samples, cfg.seed);
      spots.push_back({region, rep.violations.size()});
    }
  }

  std::string content;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["params"] = params_json(p);
    if (uhat) {
      doc["uhat"] = ordered_json{{"lower", uhat->lower},
                                 {"upper", uhat->upper},
                                 {"real_roots", uhat->real_roots}};
      doc["subclasses"] = ordered_json::array();
      for (const auto& m : subclasses)
        doc["subclasses"].push_back(
            ordered_json{{"id", to_string(m.subclass)},
                         {"class", to_string(m.param_class)}});
    }
    doc["existence"] =
        ordered_json{{"count", verdict.count},
                     {"regime", to_string(verdict.regime)},
                     {"root_at_unit_boundary", verdict.root_at_unit_boundary}};
    doc["checklist"] = ordered_json::array();
    for (const auto& block : checklist) {
      ordered_json items = ordered_json::array();
      for (const auto& it : block.items)
        items.push_back(ordered_json{{"name", it.name}, {"holds", it.holds}});
      doc["checklist"].push_back(ordered_json{{"statement", block.statement},
                                              {"items", items},
                                              {"all_hold", block.all_hold()}});
    }
    if (!spots.empty()) {
      doc["invariance_spot_checks"] = ordered_json::array();
      for (const auto& s : spots)
        doc["invariance_spot_checks"].push_back(
            ordered_json{{"region", to_string(s.region)},
                         {"samples", cfg.samples},
                         {"seed", cfg.seed},
                         {"violations", s.violations}});
    }
    content = doc.dump(2) + "\n";
  } else if (cfg.format == "text") {
    std::ostringstream os;
    os << "params: h=" << p.h << " beta=" << fmt17(p.beta)
       << " r=" << fmt17(p.r) << " theta=" << fmt17(p.theta)
       << " c=" << fmt17(p.c) << "\n";
    if (uhat) {
      if (uhat->real_roots)
        os << "uhat- = " << fmt17(uhat->lower)
           << "  uhat+ = " << fmt17(uhat->upper) << "\n";
      else
        os << "uhat-, uhat+: no real roots (v' < 0 for every u >= 0)\n";
      os << "subclasses:";
      if (subclasses.empty()) os << " none (one step can make v negative)";
      for (const auto& m : subclasses)
        os << " " << to_string(m.subclass) << "(class "
           << to_string(m.param_class) << ")";
      os << "\n";
    }
    os << "existence: count=" << verdict.count << ", "
       << to_string(verdict.regime) << "\n";
    os << "checklist:\n";
    for (const auto& block : checklist) {
      os << "  " << block.statement << ":"
         << (block.all_hold() ? " [pass]" : " [fail]") << "\n";
      for (const auto& it : block.items)
        os << "    " << (it.holds ? "[pass] " : "[fail] ") << it.name << "\n";
    }
    for (const auto& s : spots)
      os << "invariance spot check " << to_string(s.region) << ": "
         << s.violations << " violations in " << cfg.samples
         << " samples (seed " << cfg.seed << ")\n";
    content = os.str();
  } else {
    throw std::invalid_argument("unknown --format " + cfg.format);
  }
  if (!write_output(cfg.out, content)) return kExitIo;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
  ParamFlags params;
  std::string param;
  double from = 0.0, to = 0.0;
  int steps = 50;
  std::string out;
};

std::optional<ParamName> parse_param_name(const std::string& s) {
  if (s == "beta") return ParamName::Beta;
  if (s == "r") return ParamName::R;
  if (s == "theta") return ParamName::Theta;
  if (s == "c") return ParamName::C;
  return std::nullopt;
}

int run_sweep(const SweepConfig& cfg) {
  const auto name = parse_param_name(cfg.param);
  if (!name) throw std::invalid_argument("unknown --param " + cfg.param);

  ParamFlags flags = cfg.params;
  // the swept parameter's base value is optional; fill it from the range
  double* slot = nullptr;
  switch (*name) {
    case ParamName::Beta: slot = &flags.beta; break;
    case ParamName::R: slot = &flags.r; break;
    case ParamName::Theta: slot = &flags.theta; break;
    case ParamName::C: slot = &flags.c; break;
  }
  if (std::isnan(*slot)) *slot = cfg.from;
  if (flags.h == 0) throw std::invalid_argument("--h is required");
  for (auto [v, n] : {std::pair{flags.beta, "--beta"}, {flags.r, "--r"},
                      {flags.theta, "--theta"}, {flags.c, "--c"}})
    if (std::isnan(v)) throw std::invalid_argument(std::string(n) +
                                                   " is required");
  const Params base = flags.to_params();

  const auto result = ns_sweep(*name, cfg.from, cfg.to, cfg.steps, base);

  std::ostringstream os;
  os << "param,u_minus,p,q,class\n";
  for (const auto& s : result.samples)
    os << fmt17(s.param_value) << ',' << fmt17(s.u_minus) << ','
       << fmt17(s.p) << ',' << fmt17(s.q) << ',' << to_string(s.stability)
       << '\n';
  if (!write_output(cfg.out, os.str())) return kExitIo;

  ordered_json sidecar;
  sidecar["command"] = "sweep";
  sidecar["params"] = params_json(base);
  sidecar["options"] = ordered_json{{"param", cfg.param},
                                    {"from", cfg.from},
                                    {"to", cfg.to},
                                    {"steps", cfg.steps},
                                    {"q_tol", 1e-9},
                                    {"param_width_tol", 1e-12}};
  sidecar["bifurcation_points"] = ordered_json::array();
  for (const auto& bp : result.crossings)
    sidecar["bifurcation_points"].push_back(
        ordered_json{{"param_name", to_string(bp.param_name)},
                     {"value", bp.value},
                     {"u_minus", bp.u_minus},
                     {"q_at_crossing", bp.q_at_crossing},
                     {"p_at_crossing", bp.p_at_crossing}});
  sidecar["notes"] = result.notes;
  if (!write_sidecar(cfg.out, sidecar)) return kExitIo;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// basin
// ---------------------------------------------------------------------------

struct BasinConfig {
  ParamFlags params;
  double from = 0.0, to = 0.0;
  int steps = 9;
  double v_tol = 1e-4;
  long sim_steps = 100000;
  double conv_tol = 1e-9;
  double escape = 1e8;
  std::string out;
};

int run_basin(const BasinConfig& cfg) {
  const Params p = cfg.params.to_params();
  if (cfg.steps < 1)
    throw std::invalid_argument("basin: --steps must be >= 1");
  std::vector<double> us;
  if (cfg.steps == 1) {
    us.push_back(cfg.from);
  } else {
    for (int i = 0; i < cfg.steps; ++i)
      us.push_back(cfg.from + (cfg.to - cfg.from) * i / (cfg.steps - 1));
  }
  SimOptions opts;
  opts.max_steps = cfg.sim_steps;
  opts.conv_tol = cfg.conv_tol;
  opts.escape_radius = cfg.escape;
  opts.validate();

  const auto result = basin_boundary(us, p, cfg.v_tol, opts);

  std::ostringstream os;
  os << "u,v_star\n";
  for (const auto& s : result.samples)
    os << fmt17(s.u) << ',' << fmt17(s.v_star) << '\n';
  if (!write_output(cfg.out, os.str())) return kExitIo;

  ordered_json sidecar;
  sidecar["command"] = "basin";
  sidecar["params"] = params_json(p);
  sidecar["options"] = ordered_json{{"from", cfg.from},
                                    {"to", cfg.to},
                                    {"steps", cfg.steps},
                                    {"v_tol", cfg.v_tol},
                                    {"sim_steps", cfg.sim_steps},
                                    {"conv_tol", cfg.conv_tol},
                                    {"escape", cfg.escape}};
  sidecar["samples"] = ordered_json::array();
  for (const auto& s : result.samples)
    sidecar["samples"].push_back(ordered_json{{"u", s.u},
                                              {"v_star", s.v_star},
                                              {"below", to_string(s.below)},
                                              {"above", to_string(s.above)}});
  sidecar["notes"] = result.notes;
  if (!write_sidecar(cfg.out, sidecar)) return kExitIo;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// portrait
// ---------------------------------------------------------------------------

struct PortraitConfig {
  ParamFlags params;
  std::string grid;
  long sim_steps = 100000;
  double conv_tol = 1e-9;
  double escape = 1e8;
  std::string out;
};

GridSpec parse_grid(const std::string& text) {
  // format: u0:u1:nu,v0:v1:nv
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--grid expects u0:u1:nu,v0:v1:nv");
  const auto parse_axis = [](const std::string& s, double& a, double& b,
                             int& n) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("--grid expects u0:u1:nu,v0:v1:nv");
    a = std::stod(s.substr(0, c1));
    b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    n = std::stoi(s.substr(c2 + 1));
  };
  GridSpec g;
  parse_axis(text.substr(0, comma), g.u0, g.u1, g.nu);
  parse_axis(text.substr(comma + 1), g.v0, g.v1, g.nv);
  g.validate();
  return g;
}

int run_portrait(const PortraitConfig& cfg) {
  const Params p = cfg.params.to_params();
  const GridSpec grid = parse_grid(cfg.grid);
  SimOptions opts;
  opts.max_steps = cfg.sim_steps;
  opts.conv_tol = cfg.conv_tol;
  opts.escape_radius = cfg.escape;
  opts.validate();

  const auto result = portrait(grid, p, opts);

  std::ostringstream os;
  os << "u,v,verdict\n";
  for (const auto& cell : result.cells)
    os << fmt17(cell.start.u) << ',' << fmt17(cell.start.v) << ','
       << cell.verdict_string() << '\n';
  if (!write_output(cfg.out, os.str())) return kExitIo;

  ordered_json sidecar;
  sidecar["command"] = "portrait";
  sidecar["params"] = params_json(p);
  sidecar["options"] = ordered_json{{"grid", cfg.grid},
                                    {"sim_steps", cfg.sim_steps},
                                    {"conv_tol", cfg.conv_tol},
                                    {"escape", cfg.escape}};
  sidecar["notes"] = ordered_json::array();
  if (!write_sidecar(cfg.out, sidecar)) return kExitIo;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete phytoplankton-zooplankton map analysis"};
  // --h is a model flag, so help lives on --help only
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  const auto add_cmd = [&app](const std::string& name,
                              const std::string& desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print help and exit");
    return cmd;
  };

  FpConfig fp_cfg;
  auto* fp_cmd = add_cmd("fp", "fixed points and stability");
  fp_cfg.params.attach(fp_cmd, true);
  fp_cmd->add_option("--format", fp_cfg.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  fp_cmd->add_option("--out", fp_cfg.out, "output path (default stdout)");

  SimulateConfig sim_cfg;
  auto* sim_cmd = add_cmd("simulate", "iterate a trajectory");
  sim_cfg.params.attach(sim_cmd, true);
  sim_cmd->add_option("--u0", sim_cfg.u0, "initial u")->required();
  sim_cmd->add_option("--v0", sim_cfg.v0, "initial v")->required();
  sim_cmd->add_option("--steps", sim_cfg.steps, "maximum iterations");
  sim_cmd->add_option("--conv-tol", sim_cfg.conv_tol, "convergence tolerance");
  sim_cmd->add_option("--escape", sim_cfg.escape, "escape radius");
  sim_cmd->add_option("--target", sim_cfg.target,
                      "required fixed point (E0|E1|Eminus|Eplus)");
  sim_cmd->add_option("--out", sim_cfg.out, "trajectory CSV path");

  ClassifyConfig cls_cfg;
  auto* cls_cmd =
      add_cmd("classify-params", "parameter taxonomy and checklist");
  cls_cfg.params.attach(cls_cmd, true);
  cls_cmd->add_option("--format", cls_cfg.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cls_cmd->add_option("--out", cls_cfg.out, "output path (default stdout)");
  cls_cmd->add_option("--samples", cls_cfg.samples,
                      "run seeded invariance spot checks with this many "
                      "samples");
  cls_cmd->add_option("--seed", cls_cfg.seed, "seed for the spot checks");

  SweepConfig sweep_cfg;
  auto* sweep_cmd =
      add_cmd("sweep", "parameter sweep for the q(u-)=1 crossing");
  sweep_cfg.params.attach(sweep_cmd, false);
  sweep_cmd->add_option("--param", sweep_cfg.param, "beta|r|theta|c")
      ->required();
  sweep_cmd->add_option("--from", sweep_cfg.from, "range start")->required();
  sweep_cmd->add_option("--to", sweep_cfg.to, "range end")->required();
  sweep_cmd->add_option("--steps", sweep_cfg.steps, "grid points");
  sweep_cmd->add_option("--out", sweep_cfg.out, "CSV path (sidecar at "
                                                "<out>.json)")
      ->required();

  BasinConfig basin_cfg;
  auto* basin_cmd =
      add_cmd("basin", "basin boundary by bisection");
  basin_cfg.params.attach(basin_cmd, true);
  basin_cmd->add_option("--from", basin_cfg.from, "first u")->required();
  basin_cmd->add_option("--to", basin_cfg.to, "last u");
  basin_cmd->add_option("--steps", basin_cfg.steps, "number of u samples");
  basin_cmd->add_option("--v-tol", basin_cfg.v_tol, "bisection width in v");
  basin_cmd->add_option("--conv-tol", basin_cfg.conv_tol,
                        "convergence tolerance");
  basin_cmd->add_option("--escape", basin_cfg.escape, "escape radius");
  basin_cmd->add_option("--out", basin_cfg.out, "CSV path (sidecar at "
                                                "<out>.json)")
      ->required();

  PortraitConfig por_cfg;
  auto* por_cmd = add_cmd("portrait", "verdict grid");
  por_cfg.params.attach(por_cmd, true);
  por_cmd->add_option("--grid", por_cfg.grid, "u0:u1:nu,v0:v1:nv")
      ->required();
  por_cmd->add_option("--steps", por_cfg.sim_steps, "maximum iterations");
  por_cmd->add_option("--conv-tol", por_cfg.conv_tol,
                      "convergence tolerance");
  por_cmd->add_option("--escape", por_cfg.escape, "escape radius");
  por_cmd->add_option("--out", por_cfg.out, "CSV path (sidecar at "
                                            "<out>.json)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    if (fp_cmd->parsed()) return run_fp(fp_cfg);
    if (sim_cmd->parsed()) return run_simulate(sim_cfg);
    if (cls_cmd->parsed()) return run_classify(cls_cfg);
    if (sweep_cmd->parsed()) return run_sweep(sweep_cfg);
    if (basin_cmd->parsed()) return run_basin(basin_cfg);
    if (por_cmd->parsed()) return run_portrait(por_cfg);
  } catch (const regime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
