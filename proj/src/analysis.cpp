#include "vimpact/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "vimpact/io_util.hpp"
#include "vimpact/plot_scripts.hpp"

namespace vimpact {

const char* to_string(MapKind k) { return k == MapKind::Exact ? "exact" : "composite"; }

MapKind map_kind_from_string(const std::string& s) {
  if (s == "exact") return MapKind::Exact;
  if (s == "composite") return MapKind::Composite;
  throw std::invalid_argument("unknown map kind '" + s + "' (expected exact or composite)");
}

ExactOrbit iterate_exact(double v0, double phi0, const NondimParams& p, int K, const ReturnOptions& opt) {
  ExactOrbit o;
  o.states.reserve(static_cast<std::size_t>(std::max(K, 0)) + 1);
  double v = v0, phi = phi0;
  o.states.push_back({v, phi, region_of(v, phi)});
  for (int k = 0; k < K; ++k) {
    const ReturnSample s = first_return_B(v, phi, p, opt);
    if (!s.has_output()) {
      o.stopped = true;
      o.reason = s.reason;
      break;
    }
    v = s.v_next;
    phi = s.phi_next;
    o.states.push_back({v, phi, region_of(v, phi)});
  }
  return o;
}

namespace {

bool finite_state(const State& s) { return std::isfinite(s.v) && std::isfinite(s.phi); }

// Orbit of K steps from `seed`; `broken` is set when it leaves the valid domain.
std::vector<State> run_orbit(MapKind kind, double d, State seed, int K, const ScanOptions& opt,
                             bool& broken) {
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(K) + 1);
  broken = false;
  if (kind == MapKind::Exact) {
    const ExactOrbit o = iterate_exact(seed.v, seed.phi, reference_params(d), K, opt.exact);
    for (const TaggedState& s : o.states) out.push_back({s.v, s.phi});
    broken = o.stopped;
  } else {
    const CompositeMap m(d, opt.table ? *opt.table : reference_coefficients());
    State s = seed;
    out.push_back(s);
    for (int k = 0; k < K; ++k) {
      s = m.step(s.v, s.phi);
      if (!finite_state(s)) {
        broken = true;
        break;
      }
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

std::vector<BifurcationSample> bifurcation_scan(MapKind kind, double d_from, double d_to, double step,
                                                const ScanOptions& opt) {
  if (!(step > 0.0)) throw std::invalid_argument("bifurcation step must be positive");
  if (opt.transient < 0 || opt.transient >= opt.steps)
    throw std::invalid_argument("transient must lie in [0, steps)");
  const double dir = d_to >= d_from ? 1.0 : -1.0;
  const auto count = static_cast<long>(std::floor(std::abs(d_to - d_from) / step + 1e-9)) + 1;
  std::vector<BifurcationSample> out;
  out.reserve(static_cast<std::size_t>(count));
  State seed = opt.seed;
  for (long i = 0; i < count; ++i) {
    BifurcationSample b;
    b.d = d_from + dir * step * static_cast<double>(i);
    bool broken = false;
    const std::vector<State> orbit = run_orbit(kind, b.d, seed, opt.steps, opt, broken);
    if (broken) {
      b.gap = true;
      b.cls = {AttractorKind::CD, 0};
    } else {
      b.tail.assign(orbit.begin() + opt.transient + 1, orbit.end());
      b.cls = detect_attractor(orbit, opt.p_max, opt.tol);
      seed = orbit.back();
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::optional<double> first_period_doubling(const std::vector<BifurcationSample>& scan) {
  bool seen_fp = false;
  for (const BifurcationSample& b : scan) {
    if (b.gap) continue;
    if (b.cls.kind == AttractorKind::FP) {
      seen_fp = true;
    } else if (seen_fp) {
      return b.d;
    }
  }
  return std::nullopt;
}

const BifurcationSample* sample_near(const std::vector<BifurcationSample>& scan, double d) {
  const BifurcationSample* best = nullptr;
  for (const BifurcationSample& b : scan)
    if (!best || std::abs(b.d - d) < std::abs(best->d - d)) best = &b;
  return best;
}

void write_bifurcation_csv(const std::vector<BifurcationSample>& scan, std::ostream& os) {
  os << "d,v,phi,class\n";
  for (const BifurcationSample& b : scan) {
    if (b.gap) {
      os << fmt_num(b.d) << ",nan,nan,GAP\n";
      continue;
    }
    const std::string label = b.cls.label();
    for (const State& s : b.tail) os << fmt_num(b.d) << ',' << fmt_num(s.v) << ',' << fmt_num(s.phi) << ',' << label << '\n';
  }
}

double hausdorff_distance(const std::vector<State>& a, const std::vector<State>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<State>& x, const std::vector<State>& y) {
    double worst = 0.0;
    for (const State& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const State& q : y) best = std::min(best, std::hypot(p.v - q.v, p.phi - q.phi));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<ComparisonRecord> compare_exact_vs_composite(const std::vector<State>& ics, double d,
                                                         const CompareOptions& opt) {
  std::vector<ComparisonRecord> out(ics.size());
  const CompositeMap m(d, opt.table ? *opt.table : reference_coefficients());
  const NondimParams p = reference_params(d);
  parallel_for(ics.size(), opt.threads, [&](std::size_t i) {
    ComparisonRecord& r = out[i];
    r.v0 = ics[i].v;
    r.phi0 = ics[i].phi;
    r.d = d;
    r.exact = iterate_exact(r.v0, r.phi0, p, opt.steps, opt.exact);
    r.composite = iterate_composite(m, r.v0, r.phi0, opt.steps);
    auto tail_of = [&](const std::vector<TaggedState>& s) {
      std::vector<State> t;
      const std::size_t n = s.size();
      const std::size_t k = std::min(n, static_cast<std::size_t>(std::max(opt.tail, 1)));
      for (std::size_t j = n - k; j < n; ++j) t.push_back({s[j].v, s[j].phi});
      return t;
    };
    r.tail_distance = r.exact.stopped ? std::numeric_limits<double>::infinity()
                                      : hausdorff_distance(tail_of(r.exact.states), tail_of(r.composite.states));
  });
  return out;
}

void write_comparison_csv(const ComparisonRecord& rec, std::ostream& os) {
  os << "k,v_exact,phi_exact,v_composite,phi_composite,region_exact,region_composite\n";
  const std::size_t n = std::max(rec.exact.states.size(), rec.composite.states.size());
  for (std::size_t k = 0; k < n; ++k) {
    os << k;
    if (k < rec.exact.states.size())
      os << ',' << fmt_num(rec.exact.states[k].v) << ',' << fmt_num(rec.exact.states[k].phi);
    else
      os << ",,";
    if (k < rec.composite.states.size())
      os << ',' << fmt_num(rec.composite.states[k].v) << ',' << fmt_num(rec.composite.states[k].phi);
    else
      os << ",,";
    os << ',' << (k < rec.exact.states.size() ? to_string(rec.exact.states[k].region) : "");
    os << ',' << (k < rec.composite.states.size() ? to_string(rec.composite.states[k].region) : "");
    os << '\n';
  }
}

int default_update_count(CaseTag c) { return c == CaseTag::CD ? 6 : 11; }

CaseArtifacts run_case_preset(CaseTag c, const std::filesystem::path& out_dir, const CaseOptions& opt) {
  try {
    const CoeffTable& table = opt.table ? *opt.table : reference_coefficients();
    CaseArtifacts a;
    a.tag = c;
    a.d = case_d(c);
    a.trajectory = iterate_composite(CompositeMap(a.d, table), opt.initial.v, opt.initial.phi, opt.steps);
    a.updates = iterate_updates(c, a.d, opt.n_max.value_or(default_update_count(c)), table, opt.aux);
    if (out_dir.empty()) return a;

    auto emit = [&](const std::string& name, const std::string& body) {
      const auto path = out_dir / name;
      write_text_file(path, body);
      a.files.push_back(path);
    };
    const std::string tag = to_string(c);
    std::ostringstream traj, widths, env;
    write_trajectory_csv(a.trajectory, traj);
    write_width_table_csv(a.updates, widths);
    const BoundCurves curves = build_bound_curves(a.updates.boxes.back(), a.d, table, opt.aux);
    const BoundCurves::Table xi = curves.tabulate_xi(opt.aux.envelope_points);
    const BoundCurves::Table eta = curves.tabulate_eta(opt.aux.envelope_points);
    env << "v,xi_upper,xi_lower,phi,eta_upper,eta_lower\n";
    for (std::size_t i = 0; i < xi.x.size(); ++i)
      env << fmt_num(xi.x[i]) << ',' << fmt_num(xi.upper[i]) << ',' << fmt_num(xi.lower[i]) << ','
          << fmt_num(eta.x[i]) << ',' << fmt_num(eta.upper[i]) << ',' << fmt_num(eta.lower[i]) << '\n';
    emit("trajectory.csv", traj.str());
    emit("aux_report.json", update_report_json(a.updates));
    emit("widths.csv", widths.str());
    emit("envelopes.csv", env.str());
    emit("trajectory.gp", plots::trajectory_script("trajectory.csv", "Case " + tag + " composite trajectory"));
    emit("widths.gp", plots::widths_script("widths.csv", "Case " + tag + " attracting-domain widths"));
    emit("envelopes.gp", plots::envelopes_script("envelopes.csv", "Case " + tag + " bound curves"));
    return a;
  } catch (const CaseError&) {
    throw;
  } catch (const std::exception& e) {
    throw CaseError(std::string("case ") + to_string(c) + ": " + e.what());
  }
}

}  // namespace vimpact
