#include "vimpact/return_map.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "vimpact/io_util.hpp"

namespace vimpact {

using nlohmann::json;

const char* to_string(ReturnClass c) {
  switch (c) {
    case ReturnClass::BB: return "BB";
    case ReturnClass::BTB: return "BTB";
    case ReturnClass::BTTB: return "BTTB";
    case ReturnClass::OTHER: return "OTHER";
  }
  return "OTHER";
}

const char* to_string(OtherReason r) {
  switch (r) {
    case OtherReason::None: return "none";
    case OtherReason::Grazing: return "grazing";
    case OtherReason::NoImpact: return "no_impact";
    case OtherReason::TooManyTop: return "too_many_top";
    case OtherReason::InvalidInput: return "invalid_input";
  }
  return "none";
}

ReturnClass return_class_from_string(const std::string& s) {
  if (s == "BB") return ReturnClass::BB;
  if (s == "BTB") return ReturnClass::BTB;
  if (s == "BTTB") return ReturnClass::BTTB;
  if (s == "OTHER") return ReturnClass::OTHER;
  throw IoError("unknown return class '" + s + "'");
}

namespace {
OtherReason reason_from_string(const std::string& s) {
  for (auto r : {OtherReason::None, OtherReason::Grazing, OtherReason::NoImpact,
                 OtherReason::TooManyTop, OtherReason::InvalidInput})
    if (s == to_string(r)) return r;
  throw IoError("unknown reason '" + s + "'");
}
}  // namespace

GridSpec GridSpec::half_open(int n_v, int n_phi, double v_hi, double phi_hi) {
  GridSpec g;
  g.n_v = n_v;
  g.n_phi = n_phi;
  g.v_min = v_hi / n_v;
  g.v_max = v_hi;
  g.phi_min = 0.0;
  g.phi_max = phi_hi;
  return g;
}

double GridSpec::v_at(int i) const {
  return n_v == 1 ? v_min : v_min + (v_max - v_min) * i / (n_v - 1);
}

double GridSpec::phi_at(int j) const {
  return n_phi == 1 ? phi_min : phi_min + (phi_max - phi_min) * j / (n_phi - 1);
}

ReturnSample first_return_B(double v, double phi, const NondimParams& p, const ReturnOptions& opt) {
  ReturnSample s;
  s.v = v;
  s.phi = phi;
  if (!(v > 0.0) || !std::isfinite(v) || !std::isfinite(phi) ||
      (opt.restrict_phase && (phi < 0.0 || phi > kPi))) {
    s.reason = OtherReason::InvalidInput;
    return s;
  }
  ImpactEvent e = event_at_phase(Side::B, v, phi, p);
  s.t_start = e.t;
  int top_hits = 0;
  for (;;) {
    const ImpactResult r = next_impact(e, p, opt.solver);
    if (r.status == ImpactStatus::NoImpactWithinHorizon) {
      s.reason = OtherReason::NoImpact;
      return s;
    }
    if (r.status == ImpactStatus::GrazingImpact) {
      s.reason = OtherReason::Grazing;
      return s;
    }
    if (r.event.side == Side::B) {
      s.v_next = r.event.velocity_in;
      s.phi_next = r.event.phase;
      s.t_end = r.event.t;
      s.cls = static_cast<ReturnClass>(top_hits);
      return s;
    }
    ++top_hits;
    if (top_hits > 2) {
      s.reason = OtherReason::TooManyTop;
      s.intermediate.clear();
      return s;
    }
    s.intermediate.push_back(r.event);
    e = r.event;
  }
}

SurfaceData sweep_surfaces(const GridSpec& grid, const NondimParams& p, const ReturnOptions& opt,
                           unsigned threads) {
  SurfaceData out;
  out.params = p;
  out.grid = grid;
  out.samples.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(grid.n_phi));
    const int j = static_cast<int>(k % static_cast<std::size_t>(grid.n_phi));
    out.samples[k] = first_return_B(grid.v_at(i), grid.phi_at(j), p, opt);
  });
  return out;
}

LabelRaster partition_by_class(const SurfaceData& s) {
  LabelRaster r;
  r.n_v = s.grid.n_v;
  r.n_phi = s.grid.n_phi;
  r.labels.reserve(s.samples.size());
  for (const ReturnSample& x : s.samples) {
    r.labels.push_back(x.cls);
    ++r.counts[static_cast<std::size_t>(x.cls)];
  }
  return r;
}

bool within_ratio(double next, double current, double delta) {
  if (current == 0.0) return false;
  const double q = std::abs(next / current);
  return q > 1.0 / delta && q < delta;
}

std::vector<bool> delta_filter_mask(const SurfaceData& s, double delta, double phase_cap) {
  std::vector<bool> keep(s.samples.size(), false);
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    const ReturnSample& x = s.samples[k];
    keep[k] = x.cls == ReturnClass::BTB && x.phi < phase_cap && within_ratio(x.v_next, x.v, delta) &&
              within_ratio(x.phi_next, x.phi, delta);
  }
  return keep;
}

R1FilterResult r1_filter(const std::vector<SurfaceData>& surfaces, double delta, double phase_cap) {
  R1FilterResult res;
  res.delta = delta;
  res.phase_cap = phase_cap;
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const SurfaceData& s : surfaces) {
    res.d_values.push_back(s.params.d);
    const std::vector<bool> keep = delta_filter_mask(s, delta, phase_cap);
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (!keep[k]) continue;
      const ReturnSample& x = s.samples[k];
      res.points.push_back({s.params.d, x.v, x.phi, x.v_next, x.phi_next});
      b.v_min = std::min(b.v_min, x.v);
      b.v_max = std::max(b.v_max, x.v);
      b.phi_min = std::min(b.phi_min, x.phi);
      b.phi_max = std::max(b.phi_max, x.phi);
    }
  }
  res.empty = res.points.empty();
  if (!res.empty) res.box = b;
  return res;
}

R1FilterResult r1_filter(const std::vector<double>& d_values, double delta, const GridSpec& grid,
                         const NondimParams& base, double phase_cap, const ReturnOptions& opt,
                         unsigned threads) {
  std::vector<SurfaceData> surfaces;
  surfaces.reserve(d_values.size());
  for (double d : d_values) {
    NondimParams p = base;
    p.d = d;
    surfaces.push_back(sweep_surfaces(grid, p, opt, threads));
  }
  return r1_filter(surfaces, delta, phase_cap);
}

std::vector<Strand> project_phase_planes(const SurfaceData& s, double delta) {
  std::vector<Strand> strands(static_cast<std::size_t>(s.grid.n_phi));
  for (int j = 0; j < s.grid.n_phi; ++j) {
    Strand& st = strands[static_cast<std::size_t>(j)];
    st.phi = s.grid.phi_at(j);
    st.points.reserve(static_cast<std::size_t>(s.grid.n_v));
    for (int i = 0; i < s.grid.n_v; ++i) {
      const ReturnSample& x = s.at(i, j);
      StrandPoint pt;
      pt.v = x.v;
      pt.v_next = x.v_next;
      pt.phi_next = x.phi_next;
      pt.cls = x.cls;
      pt.near_diagonal = x.has_output() && within_ratio(x.v_next, x.v, delta) &&
                         within_ratio(x.phi_next, x.phi, delta);
      // Slope from same-class neighbours only; the surface jumps between classes.
      const int lo = std::max(0, i - 1), hi = std::min(s.grid.n_v - 1, i + 1);
      const ReturnSample& a = s.at(lo, j);
      const ReturnSample& b = s.at(hi, j);
      if (x.has_output() && hi > lo && a.cls == x.cls && b.cls == x.cls)
        pt.local_slope = (b.v_next - a.v_next) / (b.v - a.v);
      st.points.push_back(pt);
    }
  }
  return strands;
}

void write_surface_csv(const SurfaceData& s, std::ostream& os) {
  os << "v_k,phi_k,class,v_next,phi_next,n_intermediate\n";
  for (const ReturnSample& x : s.samples) {
    os << fmt_num(x.v) << ',' << fmt_num(x.phi) << ',' << to_string(x.cls) << ',';
    if (x.has_output())
      os << fmt_num(x.v_next) << ',' << fmt_num(x.phi_next);
    else
      os << "nan,nan";
    os << ',' << x.intermediate.size() << '\n';
  }
}

std::vector<ReturnSample> read_surface_csv(std::istream& is) {
  std::vector<ReturnSample> out;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty surface CSV");
  if (split_csv_line(line).size() != 6) throw IoError("surface CSV header must have 6 columns");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw IoError("surface CSV row must have 6 columns");
    ReturnSample x;
    x.v = parse_num(f[0]);
    x.phi = parse_num(f[1]);
    x.cls = return_class_from_string(f[2]);
    if (x.has_output()) {
      x.v_next = parse_num(f[3]);
      x.phi_next = parse_num(f[4]);
    }
    x.intermediate.resize(static_cast<std::size_t>(std::stoul(f[5])));
    out.push_back(std::move(x));
  }
  return out;
}

namespace {

json event_json(const ImpactEvent& e) {
  return json{{"side", to_string(e.side)}, {"t", e.t}, {"velocity_in", e.velocity_in}, {"phase", e.phase}};
}

ImpactEvent event_from_json(const json& j) {
  ImpactEvent e;
  e.side = j.at("side").get<std::string>() == "B" ? Side::B : Side::T;
  e.t = j.at("t").get<double>();
  e.velocity_in = j.at("velocity_in").get<double>();
  e.phase = j.at("phase").get<double>();
  return e;
}

}  // namespace

std::string surface_to_json(const SurfaceData& s) {
  json j;
  j["kind"] = "surface";
  j["params"] = {{"r", s.params.r}, {"d", s.params.d}, {"gbar", s.params.gbar}, {"psi", s.params.psi}};
  j["grid"] = {{"n_v", s.grid.n_v},         {"n_phi", s.grid.n_phi},     {"v_min", s.grid.v_min},
               {"v_max", s.grid.v_max},     {"phi_min", s.grid.phi_min}, {"phi_max", s.grid.phi_max}};
  json arr = json::array();
  for (const ReturnSample& x : s.samples) {
    json r = {{"v", x.v},
              {"phi", x.phi},
              {"class", to_string(x.cls)},
              {"reason", to_string(x.reason)},
              {"v_next", x.v_next},
              {"phi_next", x.phi_next},
              {"t_start", x.t_start},
              {"t_end", x.t_end}};
    json ev = json::array();
    for (const ImpactEvent& e : x.intermediate) ev.push_back(event_json(e));
    r["intermediate"] = std::move(ev);
    arr.push_back(std::move(r));
  }
  j["samples"] = std::move(arr);
  return j.dump();
}

SurfaceData surface_from_json(const std::string& text) {
  const json j = json::parse(text);
  SurfaceData s;
  const json& p = j.at("params");
  s.params = {p.at("r").get<double>(), p.at("d").get<double>(), p.at("gbar").get<double>(),
              p.at("psi").get<double>()};
  const json& g = j.at("grid");
  s.grid.n_v = g.at("n_v").get<int>();
  s.grid.n_phi = g.at("n_phi").get<int>();
  s.grid.v_min = g.at("v_min").get<double>();
  s.grid.v_max = g.at("v_max").get<double>();
  s.grid.phi_min = g.at("phi_min").get<double>();
  s.grid.phi_max = g.at("phi_max").get<double>();
  for (const json& r : j.at("samples")) {
    ReturnSample x;
    x.v = r.at("v").get<double>();
    x.phi = r.at("phi").get<double>();
    x.cls = return_class_from_string(r.at("class").get<std::string>());
    x.reason = reason_from_string(r.at("reason").get<std::string>());
    x.v_next = r.at("v_next").get<double>();
    x.phi_next = r.at("phi_next").get<double>();
    x.t_start = r.at("t_start").get<double>();
    x.t_end = r.at("t_end").get<double>();
    for (const json& e : r.at("intermediate")) x.intermediate.push_back(event_from_json(e));
    s.samples.push_back(std::move(x));
  }
  if (s.samples.size() != s.grid.size()) throw IoError("surface JSON: sample count does not match grid");
  return s;
}

void write_label_raster_csv(const LabelRaster& r, std::ostream& os) {
  // One row per velocity node, one column per phase node; labels as class codes.
  for (int i = 0; i < r.n_v; ++i) {
    for (int j = 0; j < r.n_phi; ++j) {
      if (j) os << ',';
      os << static_cast<int>(r.labels[static_cast<std::size_t>(i) * static_cast<std::size_t>(r.n_phi) +
                                      static_cast<std::size_t>(j)]);
    }
    os << '\n';
  }
}

LabelRaster read_label_raster_csv(std::istream& is) {
  LabelRaster r;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (r.n_v == 0) r.n_phi = static_cast<int>(f.size());
    if (static_cast<int>(f.size()) != r.n_phi) throw IoError("ragged label raster");
    for (const auto& c : f) {
      const int code = std::stoi(c);
      if (code < 0 || code > 3) throw IoError("bad label code");
      r.labels.push_back(static_cast<ReturnClass>(code));
      ++r.counts[static_cast<std::size_t>(code)];
    }
    ++r.n_v;
  }
  return r;
}

}  // namespace vimpact
