#include "vimpact/cli_io.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vimpact/analysis.hpp"
#include "vimpact/approx_maps.hpp"
#include "vimpact/io_util.hpp"
#include "vimpact/plot_scripts.hpp"

namespace vimpact {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double number_at(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return obj.at(key).get<double>();
}

void validate(const RunConfig& c) {
  if (!(c.params.r >= 0.0 && c.params.r <= 1.0)) throw ConfigError("r must lie in [0, 1]");
  if (!(c.params.d > 0.0)) throw ConfigError("d must be positive");
  if (c.grid.n_v < 1 || c.grid.n_phi < 1) throw ConfigError("grid sizes must be positive");
  if (!(c.delta > 1.0)) throw ConfigError("delta must exceed 1");
  if (!(c.phase_cap > 0.0)) throw ConfigError("phase_cap must be positive");
  for (double d : c.d_values)
    if (!(d > 0.0)) throw ConfigError("d_values must be positive");
  if (!(c.solver.dt > 0.0) || !(c.solver.horizon > 0.0) || !(c.solver.time_tol > 0.0))
    throw ConfigError("solver dt, horizon and time_tol must be positive");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"schema_version", "physical", "nondimensional", "grid", "d_values", "delta", "phase_cap",
                  "case", "output_dir", "coefficients", "solver"},
                 "config");
  RunConfig c;
  try {
    c.schema_version = j.value("schema_version", kConfigSchemaVersion);
    if (c.schema_version != kConfigSchemaVersion)
      throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    if (j.contains("physical") && j.contains("nondimensional"))
      throw ConfigError("config may hold a physical or a nondimensional block, not both");
    if (j.contains("physical")) {
      const json& p = j.at("physical");
      reject_unknown(p,
                     {"capsule_mass", "ball_mass", "capsule_length", "forcing_frequency", "incline",
                      "forcing_norm", "restitution", "gravity", "psi"},
                     "physical");
      PhysicalParams pp;
      pp.capsule_mass = number_at(p, "capsule_mass", pp.capsule_mass);
      pp.ball_mass = number_at(p, "ball_mass", pp.ball_mass);
      pp.capsule_length = number_at(p, "capsule_length", pp.capsule_length);
      pp.forcing_frequency = number_at(p, "forcing_frequency", pp.forcing_frequency);
      pp.incline = number_at(p, "incline", pp.incline);
      pp.forcing_norm = number_at(p, "forcing_norm", pp.forcing_norm);
      pp.restitution = number_at(p, "restitution", pp.restitution);
      pp.gravity = number_at(p, "gravity", pp.gravity);
      try {
        c.params = nondimensionalize(pp);
      } catch (const DegenerateInput& e) {
        throw ConfigError(std::string("physical block: ") + e.what());
      }
      c.params.psi = number_at(p, "psi", 0.0);
      c.physical = pp;
    }
    if (j.contains("nondimensional")) {
      const json& n = j.at("nondimensional");
      reject_unknown(n, {"r", "d", "gbar", "psi"}, "nondimensional");
      c.params.r = number_at(n, "r", c.params.r);
      c.params.d = number_at(n, "d", c.params.d);
      c.params.gbar = number_at(n, "gbar", reference_gbar());
      c.params.psi = number_at(n, "psi", 0.0);
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      reject_unknown(g, {"n_v", "n_phi", "v_max", "phi_max"}, "grid");
      c.grid = GridSpec::half_open(g.value("n_v", 200), g.value("n_phi", 200), number_at(g, "v_max", 1.0),
                                   number_at(g, "phi_max", kPi));
    }
    if (j.contains("d_values")) c.d_values = j.at("d_values").get<std::vector<double>>();
    c.delta = number_at(j, "delta", c.delta);
    c.phase_cap = number_at(j, "phase_cap", c.phase_cap);
    if (j.contains("case")) {
      try {
        c.case_tag = case_from_string(j.at("case").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    c.output_dir = j.value("output_dir", "");
    c.coefficients = j.value("coefficients", "");
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      reject_unknown(s, {"dt", "start_offset", "horizon", "time_tol", "grazing_tol"}, "solver");
      c.solver.dt = number_at(s, "dt", c.solver.dt);
      c.solver.start_offset = number_at(s, "start_offset", c.solver.start_offset);
      c.solver.horizon = number_at(s, "horizon", c.solver.horizon);
      c.solver.time_tol = number_at(s, "time_tol", c.solver.time_tol);
      c.solver.grazing_tol = number_at(s, "grazing_tol", c.solver.grazing_tol);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema violation: ") + e.what());
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  if (c.physical) {
    const PhysicalParams& p = *c.physical;
    j["physical"] = {{"capsule_mass", p.capsule_mass},   {"ball_mass", p.ball_mass},
                     {"capsule_length", p.capsule_length}, {"forcing_frequency", p.forcing_frequency},
                     {"incline", p.incline},             {"forcing_norm", p.forcing_norm},
                     {"restitution", p.restitution},     {"gravity", p.gravity},
                     {"psi", c.params.psi}};
  } else {
    j["nondimensional"] = {{"r", c.params.r}, {"d", c.params.d}, {"gbar", c.params.gbar}, {"psi", c.params.psi}};
  }
  j["grid"] = {{"n_v", c.grid.n_v}, {"n_phi", c.grid.n_phi}, {"v_max", c.grid.v_max}, {"phi_max", c.grid.phi_max}};
  j["d_values"] = c.d_values;
  j["delta"] = c.delta;
  j["phase_cap"] = c.phase_cap;
  if (c.case_tag) j["case"] = to_string(*c.case_tag);
  j["output_dir"] = c.output_dir;
  j["coefficients"] = c.coefficients;
  j["solver"] = {{"dt", c.solver.dt},
                 {"start_offset", c.solver.start_offset},
                 {"horizon", c.solver.horizon},
                 {"time_tol", c.solver.time_tol},
                 {"grazing_tol", c.solver.grazing_tol}};
  return j.dump(1);
}

std::filesystem::path default_output_dir() {
  const char* env = std::getenv("VIMPACT_OUT");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("vimpact_out");
}

GridSpec parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid must look like NxM");
  try {
    std::size_t used_a = 0, used_b = 0;
    const int a = std::stoi(text.substr(0, x), &used_a);
    const int b = std::stoi(text.substr(x + 1), &used_b);
    if (used_a != x || used_b != text.size() - x - 1 || a < 1 || b < 1) throw ConfigError("bad grid");
    return GridSpec::half_open(a, b);
  } catch (const std::logic_error&) {
    throw ConfigError("grid must look like NxM with positive integers");
  }
}

std::string error_json(const std::string& kind, const std::string& message) {
  return json{{"status", "error"}, {"error", {{"kind", kind}, {"message", message}}}}.dump();
}

namespace {

// Options shared by every subcommand.
struct Common {
  std::string config, out, coefficients;
  unsigned threads = 0;
};

struct Session {
  RunConfig cfg;
  std::filesystem::path out;
  CoeffTable table;
  std::vector<std::string> files;
  std::string command;

  void emit(const std::string& name, const std::string& body) {
    write_text_file(out / name, body);
    files.push_back((out / name).string());
  }
  ReturnOptions return_options() const {
    ReturnOptions o;
    o.solver = cfg.solver;
    return o;
  }
  NondimParams params_for(double d) const {
    NondimParams p = cfg.params;
    p.d = d;
    return p;
  }
  void finish(json summary) {
    json meta = {{"software_version", kSoftwareVersion},
                 {"command", command},
                 {"config", json::parse(config_to_json(cfg))},
                 {"coefficients", {{"name", table.name}, {"checksum", table.checksum}}}};
    emit("run_meta.json", meta.dump(1));
    summary["status"] = "ok";
    summary["command"] = command;
    summary["files"] = files;
    std::cout << summary.dump() << '\n';
  }
};

Session open_session(const Common& c, const std::string& command) {
  Session s;
  s.command = command;
  if (!c.config.empty()) s.cfg = load_config(c.config);
  if (!c.coefficients.empty()) s.cfg.coefficients = c.coefficients;
  s.table = s.cfg.coefficients.empty() ? reference_coefficients() : load_coefficients(s.cfg.coefficients);
  if (!c.out.empty())
    s.out = c.out;
  else if (!s.cfg.output_dir.empty())
    s.out = s.cfg.output_dir;
  else
    s.out = default_output_dir();
  s.cfg.output_dir = s.out.string();
  return s;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON run configuration");
  sub->add_option("--out", c.out, "output directory (default: $VIMPACT_OUT or vimpact_out)");
  sub->add_option("--coefficients", c.coefficients, "coefficient table JSON (default: embedded)");
  sub->add_option("--threads", c.threads, "worker threads (0 = hardware)");
}

std::string d_tag(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", d);
  return buf;
}

std::vector<State> parse_ics(const std::vector<std::string>& items) {
  std::vector<State> out;
  for (const std::string& s : items) {
    const auto f = split_csv_line(s);
    if (f.size() != 2) throw ConfigError("initial condition must look like v,phi");
    out.push_back({parse_num(f[0]), parse_num(f[1])});
  }
  return out;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"Vibro-impact return maps, composite maps and attracting-domain bounds", "vimpact"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kSoftwareVersion);

  Common common;
  std::optional<double> d_opt;
  std::string grid_text;
  std::vector<double> d_list;
  std::optional<double> delta_opt, cap_opt;
  double v0 = 0.2, phi0 = 0.1;
  int steps = 4;
  std::string map_name = "exact";
  double d_from = 0.36, d_to = 0.25, d_step = 0.001;
  int scan_steps = 400, transient = 300;
  std::vector<std::string> ic_text;
  int tail = 100;
  std::string case_name;
  int n_updates = 0;
  std::vector<double> box_vals;

  auto* sweep = app.add_subcommand("sweep", "first-return surfaces on a grid");
  auto* partition = app.add_subcommand("partition", "BB/BTB/BTTB/OTHER label raster");
  auto* filter = app.add_subcommand("r1-filter", "ratio filter locating the attracting region");
  auto* fit = app.add_subcommand("fit", "refit the R1 polynomial table");
  auto* composite = app.add_subcommand("composite", "iterate the composite map");
  auto* bif = app.add_subcommand("bifurcation", "continuation scan in d");
  auto* compare = app.add_subcommand("compare", "exact versus composite trajectories");
  auto* aux = app.add_subcommand("aux-domain", "auxiliary-map bounds on the attracting domain");
  auto* cas = app.add_subcommand("case", "FP/PD/CD case preset");
  for (auto* sub : {sweep, partition, filter, fit, composite, bif, compare, aux, cas}) add_common(sub, common);
  for (auto* sub : {sweep, partition, composite, compare, aux}) sub->add_option("--d", d_opt, "gap parameter d");
  for (auto* sub : {sweep, partition, filter, fit}) sub->add_option("--grid", grid_text, "grid as NxM");
  for (auto* sub : {filter, fit}) {
    sub->add_option("--d", d_list, "d values")->delimiter(',');
    sub->add_option("--delta", delta_opt, "ratio-filter width (> 1)");
    sub->add_option("--phase-cap", cap_opt, "upper phase bound of the filter");
  }
  for (auto* sub : {composite, bif}) {
    sub->add_option("--v0", v0, "initial velocity");
    sub->add_option("--phi0", phi0, "initial phase");
  }
  composite->add_option("--steps", steps, "number of steps");
  bif->add_option("--map", map_name, "exact or composite")->check(CLI::IsMember({"exact", "composite"}));
  bif->add_option("--from", d_from, "first d");
  bif->add_option("--to", d_to, "last d");
  bif->add_option("--step", d_step, "d increment (> 0)");
  bif->add_option("--steps", scan_steps, "iterations per d");
  bif->add_option("--transient", transient, "discarded iterations per d");
  compare->add_option("--ic", ic_text, "initial condition v,phi (repeatable)");
  compare->add_option("--steps", scan_steps, "iterations");
  compare->add_option("--tail", tail, "tail length for the distance");
  aux->add_option("--case", case_name, "FP, PD or CD");
  aux->add_option("--box", box_vals, "start box v_lo,v_hi,phi_lo,phi_hi")->delimiter(',')->expected(4);
  aux->add_option("--n", n_updates, "number of updates");
  cas->add_option("--name", case_name, "FP, PD or CD")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("usage", e.what()) << '\n';
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    Session s = open_session(common, sub->get_name());
    const std::string cmd = sub->get_name();
    if (!grid_text.empty()) s.cfg.grid = parse_grid(grid_text);
    if (delta_opt) s.cfg.delta = *delta_opt;
    if (cap_opt) s.cfg.phase_cap = *cap_opt;
    if (!d_list.empty()) s.cfg.d_values = d_list;
    if (d_opt) s.cfg.params.d = *d_opt;
    validate(s.cfg);
    const double d = s.cfg.params.d;

    if (cmd == "sweep" || cmd == "partition") {
      const SurfaceData surf = sweep_surfaces(s.cfg.grid, s.cfg.params, s.return_options(), common.threads);
      const LabelRaster raster = partition_by_class(surf);
      const json counts = {{"BB", raster.counts[0]},
                           {"BTB", raster.counts[1]},
                           {"BTTB", raster.counts[2]},
                           {"OTHER", raster.counts[3]}};
      if (cmd == "sweep") {
        std::ostringstream os;
        write_surface_csv(surf, os);
        s.emit("surface.csv", os.str());
        s.emit("surface.gp", plots::surface_script("surface.csv", "First-return surface, d=" + d_tag(d)));
        s.finish({{"d", d}, {"rows", surf.samples.size()}, {"counts", counts}});
      } else {
        std::ostringstream os;
        write_label_raster_csv(raster, os);
        std::ostringstream pts;
        pts << "v,phi,class\n";
        for (const ReturnSample& x : surf.samples)
          pts << fmt_num(x.v) << ',' << fmt_num(x.phi) << ',' << static_cast<int>(x.cls) << '\n';
        s.emit("partition.csv", os.str());
        s.emit("partition_points.csv", pts.str());
        s.emit("partition.gp", plots::partition_script("partition_points.csv", "Return classes, d=" + d_tag(d)));
        s.finish({{"d", d}, {"counts", counts}});
      }
    } else if (cmd == "r1-filter") {
      if (s.cfg.d_values.empty()) s.cfg.d_values = {d};
      const R1FilterResult r = r1_filter(s.cfg.d_values, s.cfg.delta, s.cfg.grid, s.cfg.params, s.cfg.phase_cap,
                                         s.return_options(), common.threads);
      std::ostringstream os;
      os << "d,v,phi,v_next,phi_next\n";
      for (const FilterPoint& p : r.points)
        os << fmt_num(p.d) << ',' << fmt_num(p.v) << ',' << fmt_num(p.phi) << ',' << fmt_num(p.v_next) << ','
           << fmt_num(p.phi_next) << '\n';
      s.emit("r1_filter.csv", os.str());
      s.emit("r1_filter.gp", plots::filter_script("r1_filter.csv", "Ratio-filtered samples"));
      json summary = {{"points", r.points.size()}, {"empty", r.empty}, {"delta", r.delta}, {"phase_cap", r.phase_cap}};
      if (!r.empty) summary["box"] = {{"v", {r.box.v_min, r.box.v_max}}, {"phi", {r.box.phi_min, r.box.phi_max}}};
      s.emit("r1_filter.json", summary.dump(1));
      s.finish(summary);
    } else if (cmd == "fit") {
      if (s.cfg.d_values.empty()) s.cfg.d_values = {0.26, 0.30, 0.35};
      std::vector<SurfaceData> surfaces;
      for (double dv : s.cfg.d_values)
        surfaces.push_back(sweep_surfaces(s.cfg.grid, s.params_for(dv), s.return_options(), common.threads));
      const RefitReport rep = refit_r1_table(surfaces, s.cfg.delta, s.cfg.phase_cap, s.table);
      s.emit("coefficients_refit.json", coefficients_to_json(rep.table));
      const json report = {{"d_values", rep.d_values}, {"r2_v", rep.r2_v}, {"r2_phi", rep.r2_phi}};
      s.emit("fit_report.json", report.dump(1));
      s.finish(report);
    } else if (cmd == "composite") {
      const CompositeMap m(d, s.table);
      if (m.out_of_range())
        std::cerr << json{{"status", "warning"}, {"message", "d lies outside the coefficient table range"}}.dump()
                  << '\n';
      const Trajectory tr = iterate_composite(m, v0, phi0, steps);
      char row[96];
      std::snprintf(row, sizeof row, "%4s %12s %12s %6s\n", "k", "v", "phi", "region");
      std::cout << row;
      for (std::size_t k = 0; k < tr.states.size(); ++k) {
        std::snprintf(row, sizeof row, "%4zu %12.6f %12.6f %6s\n", k, tr.states[k].v, tr.states[k].phi,
                      to_string(tr.states[k].region));
        std::cout << row;
      }
      std::ostringstream os;
      write_trajectory_csv(tr, os);
      s.emit("trajectory.csv", os.str());
      s.emit("trajectory.gp", plots::trajectory_script("trajectory.csv", "Composite map, d=" + d_tag(d)));
      s.finish({{"d", d}, {"out_of_range", m.out_of_range()}});
    } else if (cmd == "bifurcation") {
      ScanOptions o;
      o.steps = scan_steps;
      o.transient = transient;
      o.seed = {v0, phi0};
      o.table = &s.table;
      o.exact.solver = s.cfg.solver;
      const MapKind kind = map_kind_from_string(map_name);
      const auto scan = bifurcation_scan(kind, d_from, d_to, d_step, o);
      std::ostringstream os, cls;
      write_bifurcation_csv(scan, os);
      cls << "d,class,gap\n";
      for (const BifurcationSample& b : scan)
        cls << fmt_num(b.d) << ',' << (b.gap ? "GAP" : b.cls.label()) << ',' << (b.gap ? 1 : 0) << '\n';
      const std::string name = std::string("bifurcation_") + to_string(kind);
      s.emit(name + ".csv", os.str());
      s.emit(name + "_classes.csv", cls.str());
      s.emit(name + ".gp", plots::bifurcation_script(name + ".csv", std::string("Continuation scan, ") + to_string(kind) + " map"));
      json summary = {{"map", to_string(kind)}, {"samples", scan.size()}};
      if (const auto pd = first_period_doubling(scan)) summary["first_period_doubling_d"] = *pd;
      s.finish(summary);
    } else if (cmd == "compare") {
      std::vector<State> ics = parse_ics(ic_text);
      if (ics.empty()) ics = {{0.35, kPi / 2.0}, {0.2, 0.1}};
      CompareOptions o;
      o.steps = scan_steps;
      o.tail = tail;
      o.table = &s.table;
      o.exact.solver = s.cfg.solver;
      o.threads = common.threads;
      const auto recs = compare_exact_vs_composite(ics, d, o);
      json list = json::array();
      for (std::size_t i = 0; i < recs.size(); ++i) {
        std::ostringstream os;
        write_comparison_csv(recs[i], os);
        const std::string name = "compare_" + std::to_string(i);
        s.emit(name + ".csv", os.str());
        s.emit(name + ".gp", plots::comparison_script(name + ".csv", "Exact vs composite, d=" + d_tag(d)));
        list.push_back({{"v0", recs[i].v0},
                        {"phi0", recs[i].phi0},
                        {"tail_distance", std::isfinite(recs[i].tail_distance) ? json(recs[i].tail_distance) : json(nullptr)},
                        {"exact_stopped", recs[i].exact.stopped}});
      }
      s.emit("compare_summary.json", json{{"d", d}, {"records", list}}.dump(1));
      s.finish({{"d", d}, {"records", list}});
    } else if (cmd == "aux-domain") {
      UpdateSequence seq;
      if (!case_name.empty() || s.cfg.case_tag) {
        const CaseTag tag = !case_name.empty() ? case_from_string(case_name) : *s.cfg.case_tag;
        const double dd = d_opt ? *d_opt : case_d(tag);
        const int n = n_updates > 0 ? n_updates : default_update_count(tag);
        seq = box_vals.size() == 4
                  ? iterate_updates(DomainBox{{box_vals[0], box_vals[1]}, {box_vals[2], box_vals[3]}, 1}, dd, n, s.table)
                  : iterate_updates(r1_plus(tag), dd, n, s.table);
        seq.tag = tag;
      } else {
        if (box_vals.size() != 4) throw ConfigError("aux-domain needs --case or --box");
        seq = iterate_updates(DomainBox{{box_vals[0], box_vals[1]}, {box_vals[2], box_vals[3]}, 1}, d,
                              n_updates > 0 ? n_updates : 11, s.table);
      }
      std::ostringstream widths;
      write_width_table_csv(seq, widths);
      s.emit("aux_report.json", update_report_json(seq));
      s.emit("widths.csv", widths.str());
      s.emit("widths.gp", plots::widths_script("widths.csv", "Attracting-domain widths"));
      s.finish(json::parse(update_report_json(seq)));
    } else if (cmd == "case") {
      CaseOptions o;
      o.table = &s.table;
      const CaseTag tag = case_from_string(case_name);
      s.cfg.case_tag = tag;
      const CaseArtifacts a = run_case_preset(tag, s.out, o);
      for (const auto& f : a.files) s.files.push_back(f.string());
      s.finish({{"case", to_string(tag)},
                {"d", a.d},
                {"final_statement", to_string(a.updates.final_statement)},
                {"boxes", a.updates.boxes.size()}});
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << error_json("config", e.what()) << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << error_json("config", e.what()) << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << error_json("io", e.what()) << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << error_json("runtime", e.what()) << '\n';
    return 1;
  }
}

int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"vimpact"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace vimpact
