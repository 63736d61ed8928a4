// Acceptance runner: one PASS/FAIL line per criterion with its runtime.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vimpact/analysis.hpp"
#include "vimpact/approx_maps.hpp"
#include "vimpact/aux_domain.hpp"
#include "vimpact/poly.hpp"
#include "vimpact/return_map.hpp"
#include "vimpact/vi_core.hpp"

using namespace vimpact;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string num(double x, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

std::string box_text(const DomainBox& b) {
  return "[" + num(b.v.lo) + "," + num(b.v.hi) + "]x[" + num(b.phi.lo) + "," + num(b.phi.hi) + "]";
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

Outcome golden_trajectory() {
  Outcome o;
  const Trajectory tr = iterate_composite(0.2, 0.1, 0.35, 4);
  const double expect[4][2] = {{0.093, 2.116}, {0.799, 1.150}, {0.843, 0.298}, {0.844, 0.396}};
  for (int k = 1; k <= 4; ++k) {
    const TaggedState& s = tr.states[static_cast<std::size_t>(k)];
    o.note("step " + std::to_string(k) + " (" + num(s.v, 3) + "," + num(s.phi, 3) + ")");
    o.require(near(s.v, expect[k - 1][0], 0.01) && near(s.phi, expect[k - 1][1], 0.01),
              "step " + std::to_string(k) + " off target");
  }
  return o;
}

Outcome fp_domain() {
  Outcome o;
  const UpdateSequence seq = iterate_updates(CaseTag::FP, 0.35, 11);
  const DomainBox& b = seq.boxes.back();
  o.note("N=" + std::to_string(b.N) + " box " + box_text(b));
  o.require(b.v.lo <= 0.8488 && b.v.hi >= 0.8490 && b.phi.lo <= 0.3804 && b.phi.hi >= 0.3811,
            "box misses the target cycle");
  o.require(b.v.width() <= 5e-4 && b.phi.width() <= 5e-4,
            "widths " + num(b.v.width(), 6) + "," + num(b.phi.width(), 6) + " exceed 5e-4");
  return o;
}

Outcome box_case(CaseTag tag, int n, const double target[4], double tol, double wv, double wphi) {
  Outcome o;
  const UpdateSequence seq = iterate_updates(tag, case_d(tag), n);
  const DomainBox& b = seq.boxes.back();
  o.note("N=" + std::to_string(b.N) + " box " + box_text(b) + " statement " + to_string(seq.final_statement));
  const double got[4] = {b.v.lo, b.v.hi, b.phi.lo, b.phi.hi};
  for (int i = 0; i < 4; ++i)
    o.require(near(got[i], target[i], tol), "endpoint " + std::to_string(i) + " off by " + num(got[i] - target[i]));
  o.require(near(b.v.width(), wv, tol), "v width " + num(b.v.width()));
  o.require(near(b.phi.width(), wphi, tol), "phi width " + num(b.phi.width()));
  return o;
}

Outcome pd_domain() {
  const double t[4] = {0.684, 0.832, 0.156, 0.758};
  return box_case(CaseTag::PD, 11, t, 0.02, 0.1472, 0.5991);
}

Outcome cd_domain() {
  const double t[4] = {0.638, 0.803, 0.088, 0.868};
  Outcome o = box_case(CaseTag::CD, 6, t, 0.03, 0.166, 0.780);
  const UpdateSequence seq = iterate_updates(CaseTag::CD, 0.26, 6);
  o.require(seq.final_statement == BoundStatement::Part2, "statement is not Part2");
  return o;
}

Outcome first_wcs_update() {
  Outcome o;
  const DomainBox start = r1_plus(CaseTag::FP);
  const BoundCurves c = build_bound_curves(start, 0.35);
  const UpdateResult u = update_region(c, start);
  o.note("intervals " + box_text(u.box));
  if (u.diverged) o.note("diverged");
  if (u.non_contracting) o.note("non-contracting");
  o.require(near(u.box.v.lo, 0.771, 0.01) && near(u.box.v.hi, 0.909, 0.01), "v interval off target");
  o.require(near(u.box.phi.lo, 0.297, 0.01) && near(u.box.phi.hi, 0.791, 0.01), "phi interval off target");
  return o;
}

Outcome fit_quality() {
  Outcome o;
  const SurfaceData s = sweep_surfaces(GridSpec::half_open(200, 200), reference_params(0.35));
  const std::vector<bool> keep = delta_filter_mask(s, 1.2, kDefaultPhaseCap);
  const RegionFit fit = fit_region(s, keep, poly23_exponents());
  o.note("n=" + std::to_string(fit.v_fit.n) + " R2 " + num(fit.v_fit.r2, 5) + "," + num(fit.phi_fit.r2, 5));
  o.require(fit.v_fit.r2 >= 0.999, "v-map R2 below 0.999");
  o.require(fit.phi_fit.r2 >= 0.999, "phi-map R2 below 0.999");
  return o;
}

Outcome bifurcation_fidelity() {
  Outcome o;
  std::optional<double> first[2];
  int idx = 0;
  for (MapKind kind : {MapKind::Exact, MapKind::Composite}) {
    const auto scan = bifurcation_scan(kind, 0.36, 0.25, 0.001);
    const std::string tag = to_string(kind);
    const BifurcationSample* fp = sample_near(scan, 0.35);
    const BifurcationSample* pd = sample_near(scan, 0.30);
    const BifurcationSample* cd = sample_near(scan, 0.26);
    o.note(tag + ": d=0.35 " + (fp->gap ? "GAP" : fp->cls.label()) + " d=0.30 " +
           (pd->gap ? "GAP" : pd->cls.label()) + " d=0.26 " + (cd->gap ? "GAP" : cd->cls.label()));
    o.require(!fp->gap && fp->cls.kind == AttractorKind::FP && near(fp->tail.back().v, 0.849, 0.02),
              tag + " not FP near v=0.849 at d=0.35");
    o.require(!pd->gap && pd->cls.kind == AttractorKind::PD && pd->cls.period == 2, tag + " not PD(2) at d=0.30");
    o.require(!cd->gap && cd->cls.kind == AttractorKind::CD, tag + " not CD at d=0.26");
    first[idx++] = first_period_doubling(scan);
    o.note(tag + " first PD " + (first[idx - 1] ? num(*first[idx - 1], 3) : std::string("none")));
  }
  o.require(first[0] && first[1] && std::abs(*first[0] - *first[1]) <= 0.01 + 1e-12,
            "first period-doubling points differ by more than 0.01");
  return o;
}

// Independent closed-form displacement between impacts.
double z_closed(double z0, double u0, double t0, double tau, const NondimParams& p) {
  const double a0 = kPi * t0 + p.psi, a1 = kPi * (t0 + tau) + p.psi;
  return z0 + u0 * tau + 0.5 * p.gbar * tau * tau - (std::cos(a1) - std::cos(a0)) / (kPi * kPi) -
         std::sin(a0) / kPi * tau;
}

double nested(const Poly1D& p, double x) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) s += p.coeffs[k] * std::pow(x, static_cast<double>(k));
  return s;
}

Outcome property_suites() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uv(0.02, 1.0), uph(0.0, kTwoPi), ud(0.25, 0.36);

  int events = 0;
  double worst = 0.0;
  while (events < 1000) {
    const NondimParams p = reference_params(ud(rng));
    const Side side = (events % 2) ? Side::B : Side::T;
    const double vin = side == Side::B ? uv(rng) : -uv(rng);
    const ImpactEvent e = event_at_phase(side, vin, uph(rng), p);
    const ImpactResult r = next_impact(e, p);
    if (!r.ok()) continue;
    ++events;
    const double z = z_closed(wall_position(side, p.d), -p.r * vin, e.t, r.event.t - e.t, p);
    worst = std::max(worst, std::abs(z - wall_position(r.event.side, p.d)));
  }
  o.note("event residual " + num(worst * 1e12, 3) + "e-12");
  o.require(worst <= 1e-10, "event residual above 1e-10");

  SolverConfig unforced;
  unforced.forcing_amplitude = 0.0;
  double worst_free = 0.0;
  const NondimParams p35 = reference_params(0.35);
  for (int i = 0; i < 1000; ++i) {
    const double vin = uv(rng);
    const ImpactEvent e = event_at_phase(Side::B, vin, uph(rng), p35);
    const ImpactResult r = next_impact(e, p35, unforced);
    if (!r.ok()) {
      worst_free = INFINITY;
      break;
    }
    const double u0 = -p35.r * vin, disc = u0 * u0 - 2.0 * p35.gbar * p35.d;
    const double tau = disc >= 0.0 ? (-u0 - std::sqrt(disc)) / p35.gbar : -2.0 * u0 / p35.gbar;
    worst_free = std::max({worst_free, std::abs(r.event.t - e.t - tau),
                           std::abs(r.event.velocity_in - (u0 + p35.gbar * tau))});
  }
  o.note("zero-forcing error " + num(worst_free * 1e12, 3) + "e-12");
  o.require(worst_free <= 1e-10, "zero-forcing oracle mismatch");

  const SurfaceData s = sweep_surfaces(GridSpec::half_open(200, 200), p35);
  bool total = s.samples.size() == 40000u;
  for (const ReturnSample& x : s.samples) {
    const int c = static_cast<int>(x.cls);
    total = total && c >= 0 && c <= 3 && (x.has_output() == (x.reason == OtherReason::None));
    if (x.has_output()) total = total && x.intermediate.size() == static_cast<std::size_t>(c);
  }
  o.require(total, "classification not total on 200x200");

  const CompositeMap m(0.35);
  std::uniform_real_distribution<double> wv(-0.5, 1.5), wph(-1.0, 7.0);
  bool dispatch_ok = true;
  for (int i = 0; i < 100000; ++i) {
    const double a = wv(rng), b = wph(rng);
    if (region_of(a, b) != Region::RESET) continue;
    Region used;
    const State n = m.step(a, b, used);
    dispatch_ok = dispatch_ok && used == Region::RESET && n.v == a && n.phi == CompositeMap::kPhiReset &&
                  region_of(n.v, n.phi) != Region::RESET;
  }
  o.require(dispatch_ok, "reset state does not dispatch to a region map");

  std::uniform_real_distribution<double> coef(-2.0, 2.0), ux(0.0, 1.0);
  double worst_comp = 0.0;
  for (int t = 0; t < 200; ++t) {
    Poly1D inner, outer;
    for (int k = 0; k <= 3; ++k) inner.coeffs.push_back(coef(rng));
    for (int k = 0; k <= 3; ++k) outer.coeffs.push_back(coef(rng));
    const Poly1D full = poly_compose(outer, inner);
    if (full.degree() != 9) worst_comp = INFINITY;
    for (int k = 0; k < 10; ++k) {
      const double u = ux(rng);
      const double ref = nested(outer, nested(inner, u));
      worst_comp = std::max(worst_comp, std::abs(full(u) - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  o.require(worst_comp <= 1e-10, "degree-9 composition error " + num(worst_comp * 1e12, 3) + "e-12");

  bool dominated = true;
  for (CaseTag tag : {CaseTag::FP, CaseTag::PD, CaseTag::CD}) {
    const DomainBox box = r1_plus(tag);
    const BoundCurves c = build_bound_curves(box, case_d(tag));
    const EvaluatedRegion r1 = coeffs_for(reference_coefficients(), Region::R1, case_d(tag));
    std::uniform_real_distribution<double> bv(box.v.lo, box.v.hi), bp(box.phi.lo, box.phi.hi);
    for (int i = 0; i < 10000; ++i) {
      const double a = bv(rng), b = bp(rng);
      const double fv = r1.f(a, b), gv = r1.g(a, b);
      const double tol = 1e-9 * (1.0 + std::abs(fv) + std::abs(gv));
      dominated = dominated && c.xi_lower(a) <= fv + tol && c.xi_upper(a) >= fv - tol &&
                  c.eta_lower(b) <= gv + tol && c.eta_upper(b) >= gv - tol;
    }
  }
  o.require(dominated, "envelope domination violated");
  return o;
}

Outcome partition_raster() {
  Outcome o;
  const GridSpec g = GridSpec::half_open(200, 200);
  const LabelRaster r = partition_by_class(sweep_surfaces(g, reference_params(0.26)));
  std::size_t band = 0, band_btb = 0, low = 0, low_bb = 0;
  for (int i = 0; i < g.n_v; ++i) {
    for (int j = 0; j < g.n_phi; ++j) {
      const double v = g.v_at(i), phi = g.phi_at(j);
      const ReturnClass c = r.labels[static_cast<std::size_t>(i) * static_cast<std::size_t>(g.n_phi) +
                                     static_cast<std::size_t>(j)];
      if (v > 0.55 && phi >= kPi / 4.0 && phi <= 3.0 * kPi / 4.0) {
        ++band;
        band_btb += c == ReturnClass::BTB;
      }
      const Region reg = region_of(v, phi);
      if (v <= 0.1 && (reg == Region::R3 || reg == Region::R5)) {
        ++low;
        low_bb += c == ReturnClass::BB;
      }
    }
  }
  const double fb = static_cast<double>(band_btb) / static_cast<double>(band);
  const double fl = static_cast<double>(low_bb) / static_cast<double>(low);
  o.note("BTB share in band " + num(fb, 3) + ", BB share at v<=0.1 in the BB regions " + num(fl, 3));
  o.require(fb >= 0.9, "BTB band not present");
  o.require(fl >= 0.9, "small-v BB regions not BB");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, 1.0, golden_trajectory},   {2, 30.0, fp_domain},        {3, 30.0, pd_domain},
      {4, 60.0, cd_domain},          {5, 5.0, first_wcs_update},  {6, 10.0, fit_quality},
      {7, 600.0, bifurcation_fidelity}, {8, 120.0, property_suites}, {9, 60.0, partition_raster},
  };
  int failures = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.budget_s, "runtime above " + num(c.budget_s, 0) + " s");
    failures += !o.pass;
    std::printf("CRITERION %d: %s (%.3f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
