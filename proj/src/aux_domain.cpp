#include "vimpact/aux_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "vimpact/io_util.hpp"
#include "vimpact/simd.hpp"

namespace vimpact {

const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::FP: return "FP";
    case CaseTag::PD: return "PD";
    case CaseTag::CD: return "CD";
  }
  return "FP";
}

CaseTag case_from_string(const std::string& s) {
  if (s == "FP") return CaseTag::FP;
  if (s == "PD") return CaseTag::PD;
  if (s == "CD") return CaseTag::CD;
  throw std::invalid_argument("unknown case '" + s + "' (expected FP, PD or CD)");
}

double case_d(CaseTag c) {
  switch (c) {
    case CaseTag::FP: return 0.35;
    case CaseTag::PD: return 0.30;
    case CaseTag::CD: return 0.26;
  }
  return 0.35;
}

DomainBox r1_plus(CaseTag c) {
  switch (c) {
    case CaseTag::FP: return {{0.7, 1.0}, {0.2, kPi / 3.0}, 1};
    case CaseTag::PD: return {{0.65, 1.0}, {0.13, kPi / 3.0}, 1};
    case CaseTag::CD: return {{0.64, 1.0}, {0.08, kPi / 3.0}, 1};
  }
  return {};
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(std::max(n, 1)));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  if (n > 1) x.back() = b;
  return x;
}

// Extrema of p over the span of `grid`: batch evaluation on the grid plus
// critical points bracketed between grid nodes.
Extremum grid_extremum(const Poly1D& p, const std::vector<double>& grid) {
  std::vector<double> y(grid.size());
  simd::eval_poly1d(p, grid, y);
  Extremum e{y[0], grid[0], y[0], grid[0]};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (y[i] < e.min_value) e = {y[i], grid[i], e.max_value, e.argmax};
    if (y[i] > e.max_value) e = {e.min_value, e.argmin, y[i], grid[i]};
  }
  if (grid.size() > 1) {
    const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    for (double x : roots_on_interval(p.derivative(), grid.front(), grid.back(), step)) {
      const double v = p(x);
      if (v < e.min_value) e = {v, x, e.max_value, e.argmax};
      if (v > e.max_value) e = {e.min_value, e.argmin, v, x};
    }
  }
  return e;
}

// Golden-section refinement of a maximum of fn bracketed by [a, b].
double golden_max(const BoundCurves::Fn& fn, double a, double b, double& x_best) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fn(d);
    }
  }
  x_best = fc > fd ? c : d;
  return std::max(fc, fd);
}

}  // namespace

BoundCurves BoundCurves::from_map(const Poly2D& f, const Poly2D& g, const DomainBox& box, double d,
                                  const AuxSettings& s) {
  BoundCurves c;
  c.box_ = box;
  c.d_ = d;
  c.settings_ = s;
  c.f_ = f;
  c.g_ = g;
  const int n = std::max(2, s.envelope_points);
  c.inner_v_ = linspace(box.v.lo, box.v.hi, n);

  // Does the f family over phi keep its extremes on the phi endpoints with a
  // fixed orientation?  Evaluate the full grid in one batch.
  const std::vector<double> vg = c.inner_v_;
  const std::vector<double> pg = linspace(box.phi.lo, box.phi.hi, n);
  std::vector<double> vv, pp, out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  vv.reserve(out.size());
  pp.reserve(out.size());
  for (double v : vg)
    for (double ph : pg) {
      vv.push_back(v);
      pp.push_back(ph);
    }
  simd::eval_poly2d(f, vv, pp, out);
  const double mid_at_lo = f((box.v.lo + box.v.hi) / 2.0, box.phi.lo);
  const double mid_at_hi = f((box.v.lo + box.v.hi) / 2.0, box.phi.hi);
  c.upper_at_phi_min_ = mid_at_lo >= mid_at_hi;
  bool crossing = false;
  for (int i = 0; i < n && !crossing; ++i) {
    const double* row = out.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
    const double at_lo = row[0], at_hi = row[n - 1];
    const double up = c.upper_at_phi_min_ ? at_lo : at_hi;
    const double dn = c.upper_at_phi_min_ ? at_hi : at_lo;
    const double tol = 1e-12 * (1.0 + std::abs(up));
    if (up < dn - tol) crossing = true;
    for (int j = 0; j < n && !crossing; ++j)
      if (row[j] > up + tol || row[j] < dn - tol) crossing = true;
  }
  c.crossing_ = crossing;
  if (!crossing) {
    c.xi_closed_ = true;
    const double phi_up = c.upper_at_phi_min_ ? box.phi.lo : box.phi.hi;
    const double phi_dn = c.upper_at_phi_min_ ? box.phi.hi : box.phi.lo;
    c.xi_u_poly_ = f.slice_at_phi(phi_up);
    c.xi_l_poly_ = f.slice_at_phi(phi_dn);
    c.xi_u_ = [p = c.xi_u_poly_](double v) { return p(v); };
    c.xi_l_ = [p = c.xi_l_poly_](double v) { return p(v); };
  } else {
    const Interval ph = box.phi;
    c.xi_u_ = [f, ph, n](double v) { return extremum_on_interval(f.slice_at_v(v), ph.lo, ph.hi, n).max_value; };
    c.xi_l_ = [f, ph, n](double v) { return extremum_on_interval(f.slice_at_v(v), ph.lo, ph.hi, n).min_value; };
  }
  const std::vector<double> grid = c.inner_v_;
  c.eta_u_ = [g, grid](double phi) { return grid_extremum(g.slice_at_phi(phi), grid).max_value; };
  c.eta_l_ = [g, grid](double phi) { return grid_extremum(g.slice_at_phi(phi), grid).min_value; };
  return c;
}

BoundCurves BoundCurves::from_functions(Fn xi_u, Fn xi_l, Fn eta_u, Fn eta_l, const DomainBox& box,
                                        const AuxSettings& s) {
  BoundCurves c;
  c.box_ = box;
  c.settings_ = s;
  c.xi_u_ = std::move(xi_u);
  c.xi_l_ = std::move(xi_l);
  c.eta_u_ = std::move(eta_u);
  c.eta_l_ = std::move(eta_l);
  return c;
}

double BoundCurves::xi_upper(double v) const { return xi_u_(v); }
double BoundCurves::xi_lower(double v) const { return xi_l_(v); }
double BoundCurves::eta_upper(double phi) const { return eta_u_(phi); }
double BoundCurves::eta_lower(double phi) const { return eta_l_(phi); }

Extremum BoundCurves::sampled_extremum(const Fn& fn, const Interval& I) const {
  if (!(I.hi > I.lo)) {
    const double y = fn(I.lo);
    return {y, I.lo, y, I.lo};
  }
  const int n = std::max(3, settings_.envelope_points);
  const std::vector<double> xs = linspace(I.lo, I.hi, n);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = fn(xs[i]);
  const auto imax = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
  const auto imin = static_cast<std::size_t>(std::min_element(ys.begin(), ys.end()) - ys.begin());
  Extremum e{ys[imin], xs[imin], ys[imax], xs[imax]};
  // Refine interior optima inside the neighbouring bracket.
  if (imax > 0 && imax + 1 < xs.size()) {
    double x;
    const double y = golden_max(fn, xs[imax - 1], xs[imax + 1], x);
    if (y > e.max_value) {
      e.max_value = y;
      e.argmax = x;
    }
  }
  if (imin > 0 && imin + 1 < xs.size()) {
    double x;
    const Fn neg = [&fn](double t) { return -fn(t); };
    const double y = -golden_max(neg, xs[imin - 1], xs[imin + 1], x);
    if (y < e.min_value) {
      e.min_value = y;
      e.argmin = x;
    }
  }
  return e;
}

Extremum BoundCurves::xi_upper_on(const Interval& I) const {
  if (xi_closed_) return extremum_on_interval(xi_u_poly_, I.lo, I.hi, settings_.envelope_points);
  return sampled_extremum(xi_u_, I);
}

Extremum BoundCurves::xi_lower_on(const Interval& I) const {
  if (xi_closed_) return extremum_on_interval(xi_l_poly_, I.lo, I.hi, settings_.envelope_points);
  return sampled_extremum(xi_l_, I);
}

Extremum BoundCurves::eta_upper_on(const Interval& I) const { return sampled_extremum(eta_u_, I); }
Extremum BoundCurves::eta_lower_on(const Interval& I) const { return sampled_extremum(eta_l_, I); }

BoundCurves::Table BoundCurves::tabulate_xi(int n) const {
  Table t;
  t.x = linspace(box_.v.lo, box_.v.hi, n);
  for (double v : t.x) {
    t.upper.push_back(xi_u_(v));
    t.lower.push_back(xi_l_(v));
  }
  return t;
}

BoundCurves::Table BoundCurves::tabulate_eta(int n) const {
  Table t;
  t.x = linspace(box_.phi.lo, box_.phi.hi, n);
  for (double ph : t.x) {
    t.upper.push_back(eta_u_(ph));
    t.lower.push_back(eta_l_(ph));
  }
  return t;
}

BoundCurves build_bound_curves(const DomainBox& box, double d, const CoeffTable& table,
                               const AuxSettings& s, bool strict) {
  const EvaluatedRegion r1 = coeffs_for(table, Region::R1, d);
  BoundCurves c = BoundCurves::from_map(r1.f, r1.g, box, d, s);
  if (strict && c.crossing_detected())
    throw CrossingDetected("velocity-map family crosses over the phase interval");
  return c;
}

WcsStep wcs_step(const BoundCurves& c, const Interval& Iv, const Interval& Iphi) {
  const Extremum xu = c.xi_upper_on(Iv);
  const Extremum xl = c.xi_lower_on(Iv);
  const Extremum eu = c.eta_upper_on(Iphi);
  const Extremum el = c.eta_lower_on(Iphi);
  WcsStep s;
  s.v = {xl.min_value, xu.max_value};
  s.phi = {el.min_value, eu.max_value};
  s.argmax_xi_u = xu.argmax;
  s.argmin_xi_l = xl.argmin;
  s.argmax_eta_u = eu.argmax;
  s.argmin_eta_l = el.argmin;
  return s;
}

CobwebOrbit generic_cobweb(const BoundCurves& c, State start, int steps, double tail_fraction) {
  CobwebOrbit o;
  o.orbit.reserve(static_cast<std::size_t>(steps) + 1);
  o.orbit.push_back(start);
  const DomainBox& b = c.source();
  const double tol = 1e-12;
  State s = start;
  for (int k = 0; k < steps; ++k) {
    const bool upper = (k % 2) == 0;
    s = {upper ? c.xi_upper(s.v) : c.xi_lower(s.v), upper ? c.eta_upper(s.phi) : c.eta_lower(s.phi)};
    if (s.v < b.v.lo - tol || s.v > b.v.hi + tol || s.phi < b.phi.lo - tol || s.phi > b.phi.hi + tol)
      o.escaped = true;
    o.orbit.push_back(s);
  }
  const std::size_t n = o.orbit.size();
  const std::size_t tail = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
  const std::size_t from = n > tail ? n - tail : 0;
  o.v_tail = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  o.phi_tail = o.v_tail;
  for (std::size_t i = from; i < n; ++i) {
    o.v_tail.lo = std::min(o.v_tail.lo, o.orbit[i].v);
    o.v_tail.hi = std::max(o.v_tail.hi, o.orbit[i].v);
    o.phi_tail.lo = std::min(o.phi_tail.lo, o.orbit[i].phi);
    o.phi_tail.hi = std::max(o.phi_tail.hi, o.orbit[i].phi);
  }
  return o;
}

UpdateResult update_region(const BoundCurves& c, const DomainBox& box) {
  const AuxSettings& s = c.settings();
  UpdateResult res;
  Interval Iv = box.v, Iphi = box.phi;
  for (int k = 0; k < s.wcs_max_steps; ++k) {
    WcsStep st = wcs_step(c, Iv, Iphi);
    // The bound maps are defined on the source box only.
    if (s.clip_to_box) {
      st.v = {std::clamp(st.v.lo, box.v.lo, box.v.hi), std::clamp(st.v.hi, box.v.lo, box.v.hi)};
      st.phi = {std::clamp(st.phi.lo, box.phi.lo, box.phi.hi), std::clamp(st.phi.hi, box.phi.lo, box.phi.hi)};
    }
    const bool finite = std::isfinite(st.v.lo) && std::isfinite(st.v.hi) && std::isfinite(st.phi.lo) &&
                        std::isfinite(st.phi.hi);
    if (!finite || std::max({std::abs(st.v.lo), std::abs(st.v.hi), std::abs(st.phi.lo),
                             std::abs(st.phi.hi)}) > kDivergenceBound) {
      res.diverged = true;
      break;
    }
    res.history.push_back(st);
    const double change = std::max({std::abs(st.v.lo - Iv.lo), std::abs(st.v.hi - Iv.hi),
                                    std::abs(st.phi.lo - Iphi.lo), std::abs(st.phi.hi - Iphi.hi)});
    Iv = st.v;
    Iphi = st.phi;
    if (change < s.wcs_tol) {
      res.converged = true;
      break;
    }
  }
  const std::size_t n = res.history.size();
  if (n == 0) {
    res.box = box;
    res.box.N = box.N + 1;
    return res;
  }
  const std::size_t tail =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(s.tail_fraction * static_cast<double>(n))));
  DomainBox nb;
  nb.N = box.N + 1;
  nb.v = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  nb.phi = nb.v;
  for (std::size_t i = n - tail; i < n; ++i) {
    nb.v.lo = std::min(nb.v.lo, res.history[i].v.lo);
    nb.v.hi = std::max(nb.v.hi, res.history[i].v.hi);
    nb.phi.lo = std::min(nb.phi.lo, res.history[i].phi.lo);
    nb.phi.hi = std::max(nb.phi.hi, res.history[i].phi.hi);
  }
  const double same = 1e-12;
  // A box already collapsed below the tolerance counts as converged, not stuck.
  const bool degenerate = std::max(box.v.width(), box.phi.width()) <= s.wcs_tol;
  res.non_contracting = !degenerate && std::abs(nb.v.lo - box.v.lo) < same && std::abs(nb.v.hi - box.v.hi) < same &&
                        std::abs(nb.phi.lo - box.phi.lo) < same && std::abs(nb.phi.hi - box.phi.hi) < same;
  res.box = nb;
  return res;
}

const char* to_string(BoundStatement s) {
  switch (s) {
    case BoundStatement::Part1: return "Part1";
    case BoundStatement::Part2: return "Part2";
    case BoundStatement::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

BoundStatement classify_bound_statement(const std::vector<WcsStep>& history, const Interval& v0,
                                        const Interval& phi0, double tol) {
  if (history.empty()) return BoundStatement::Indeterminate;
  (void)v0;
  (void)phi0;
  bool exclusion = true;
  for (const WcsStep& st : history) {
    // Extremizers over I_k must not fall strictly inside I_{k+1}.
    if (st.v.strictly_inside(st.argmax_xi_u, tol) || st.v.strictly_inside(st.argmin_xi_l, tol) ||
        st.phi.strictly_inside(st.argmax_eta_u, tol) || st.phi.strictly_inside(st.argmin_eta_l, tol)) {
      exclusion = false;
      break;
    }
  }
  if (exclusion) return BoundStatement::Part1;
  if (history.size() < 2) return BoundStatement::Indeterminate;
  const WcsStep& a = history[history.size() - 2];
  const WcsStep& b = history.back();
  const bool stable = std::abs(a.v.lo - b.v.lo) < tol && std::abs(a.v.hi - b.v.hi) < tol &&
                      std::abs(a.phi.lo - b.phi.lo) < tol && std::abs(a.phi.hi - b.phi.hi) < tol;
  return stable ? BoundStatement::Part2 : BoundStatement::Indeterminate;
}

SecondIterateV second_iterate_v(const Poly2D& f1, double phi_min, double phi_max, const Interval& v_box) {
  SecondIterateV out;
  const Poly1D inner = f1.slice_at_phi(phi_max);
  const Poly1D outer = f1.slice_at_phi(phi_min);
  out.composed = poly_compose(outer, inner);
  Poly1D fixed = out.composed;
  if (fixed.coeffs.size() < 2) fixed.coeffs.resize(2, 0.0);
  fixed.coeffs[1] -= 1.0;
  // Search a slightly widened box so endpoint fixed points are bracketed.
  const double pad = 0.05 * v_box.width() + 1e-9;
  const double lo = v_box.lo - pad, hi = v_box.hi + pad;
  const double step = std::min(1e-3, (hi - lo) / 200.0);
  const Poly1D dcomp = out.composed.derivative();
  const double centre = 0.5 * (v_box.lo + v_box.hi);
  double best = std::numeric_limits<double>::infinity();
  for (double r : roots_on_interval(fixed, lo, hi, step)) {
    const double slope = dcomp.raw(r);
    if (std::abs(slope) >= 1.0) continue;
    if (std::abs(r - centre) < best) {
      best = std::abs(r - centre);
      const double partner = inner.raw(r);
      out.p_v = std::min(r, partner);
      out.q_v = std::max(r, partner);
      out.slope = slope;
      out.found = true;
    }
  }
  return out;
}

SecondIteratePhase second_iterate_phase(const BoundCurves& c, const Interval& phi_box) {
  SecondIteratePhase out;
  const auto h = [&c](double x) { return c.eta_lower(c.eta_upper(x)) - x; };
  const double pad = 0.05 * phi_box.width() + 1e-9;
  const double lo = phi_box.lo - pad, hi = phi_box.hi + pad;
  const double step = std::min(1e-3, (hi - lo) / 200.0);
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)) + 1);
  const double centre = 0.5 * (phi_box.lo + phi_box.hi);
  double best = std::numeric_limits<double>::infinity();
  double x0 = lo, h0 = h(lo);
  for (int i = 1; i < n; ++i) {
    const double x1 = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    const double h1 = h(x1);
    if ((h0 < 0.0) != (h1 < 0.0) || h1 == 0.0) {
      double a = x0, b = x1, ha = h0;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        const double hm = h(m);
        if ((hm < 0.0) == (ha < 0.0)) {
          a = m;
          ha = hm;
        } else {
          b = m;
        }
      }
      const double r = 0.5 * (a + b);
      const double eps = std::max(1e-7, 1e-4 * (hi - lo));
      const double slope = (h(r + eps) - h(r - eps)) / (2.0 * eps) + 1.0;
      if (std::abs(slope) < 1.0 && std::abs(r - centre) < best) {
        best = std::abs(r - centre);
        const double partner = c.eta_upper(r);
        out.p_phi = std::min(r, partner);
        out.q_phi = std::max(r, partner);
        out.slope = slope;
        out.found = true;
      }
    }
    x0 = x1;
    h0 = h1;
  }
  return out;
}

UpdateSequence iterate_updates(const DomainBox& start, double d, int n_max, const CoeffTable& table,
                               const AuxSettings& s) {
  UpdateSequence seq;
  seq.d = d;
  seq.boxes.push_back(start);
  seq.boxes.back().N = 1;
  UpdateResult last;
  for (int N = 1;; ++N) {
    const DomainBox& box = seq.boxes.back();
    const BoundCurves c = build_bound_curves(box, d, table, s);
    seq.crossing_seen = seq.crossing_seen || c.crossing_detected();
    last = update_region(c, box);
    const BoundStatement st = classify_bound_statement(last.history, box.v, box.phi);
    if (last.diverged) {
      seq.statements.push_back(st);
      seq.diverged = true;
      seq.final_statement = BoundStatement::Indeterminate;
      seq.cycle.source = "diverged";
      break;
    }
    if (N >= n_max) {
      // Final box: classify and extract its bounding 2-cycle.
      seq.final_statement = st;
      TwoCycle tc;
      bool done = false;
      if (st == BoundStatement::Part1 && c.f_map() && c.xi_closed_form()) {
        const SecondIterateV sv = second_iterate_v(*c.f_map(), box.phi.lo, box.phi.hi, box.v);
        const SecondIteratePhase sp = second_iterate_phase(c, box.phi);
        if (sv.found && sp.found) {
          tc = {sv.p_v, sv.q_v, sp.p_phi, sp.q_phi, sv.slope, sp.slope, true, "second-iterate"};
          done = true;
        }
      }
      if (!done) {
        tc.p_v = last.box.v.lo;
        tc.q_v = last.box.v.hi;
        tc.p_phi = last.box.phi.lo;
        tc.q_phi = last.box.phi.hi;
        tc.stable = last.converged;
        tc.source = "wcs-limit";
      }
      seq.cycle = tc;
      break;
    }
    seq.statements.push_back(st);
    if (last.non_contracting) {
      seq.non_contracting = true;
      seq.final_statement = st;
      seq.cycle = {last.box.v.lo, last.box.v.hi, last.box.phi.lo, last.box.phi.hi, 0.0, 0.0,
                   last.converged, "wcs-limit"};
      break;
    }
    seq.boxes.push_back(last.box);
  }
  return seq;
}

UpdateSequence iterate_updates(CaseTag tag, double d, int n_max, const CoeffTable& table,
                               const AuxSettings& s) {
  UpdateSequence seq = iterate_updates(r1_plus(tag), d, n_max, table, s);
  seq.tag = tag;
  return seq;
}

bool confirm_transience(Region r, const DomainBox& box, double d, const CoeffTable& table) {
  const EvaluatedRegion m = coeffs_for(table, r, d);
  const BoundCurves c = BoundCurves::from_map(m.f, m.g, box, d);
  const WcsStep st = wcs_step(c, box.v, box.phi);
  const double tol = 1e-12;
  const bool inside = st.v.lo >= box.v.lo - tol && st.v.hi <= box.v.hi + tol &&
                      st.phi.lo >= box.phi.lo - tol && st.phi.hi <= box.phi.hi + tol;
  return !inside;
}

std::string update_report_json(const UpdateSequence& seq) {
  using nlohmann::json;
  json j;
  j["case"] = to_string(seq.tag);
  j["d"] = seq.d;
  json boxes = json::array();
  for (std::size_t i = 0; i < seq.boxes.size(); ++i) {
    const DomainBox& b = seq.boxes[i];
    json e = {{"N", b.N},
              {"v", {b.v.lo, b.v.hi}},
              {"phi", {b.phi.lo, b.phi.hi}},
              {"width_v", b.v.width()},
              {"width_phi", b.phi.width()}};
    if (i < seq.statements.size()) e["statement"] = to_string(seq.statements[i]);
    boxes.push_back(e);
  }
  j["updates"] = boxes;
  j["final_statement"] = to_string(seq.final_statement);
  j["two_cycle"] = {{"p_v", seq.cycle.p_v},         {"q_v", seq.cycle.q_v},
                    {"p_phi", seq.cycle.p_phi},     {"q_phi", seq.cycle.q_phi},
                    {"slope_v", seq.cycle.slope_v}, {"slope_phi", seq.cycle.slope_phi},
                    {"stable", seq.cycle.stable},   {"source", seq.cycle.source}};
  j["non_contracting"] = seq.non_contracting;
  j["diverged"] = seq.diverged;
  j["crossing_seen"] = seq.crossing_seen;
  return j.dump(1);
}

void write_width_table_csv(const UpdateSequence& seq, std::ostream& os) {
  os << "N,v_min,v_max,phi_min,phi_max,width_v,width_phi\n";
  for (const DomainBox& b : seq.boxes)
    os << b.N << ',' << fmt_num(b.v.lo) << ',' << fmt_num(b.v.hi) << ',' << fmt_num(b.phi.lo) << ','
       << fmt_num(b.phi.hi) << ',' << fmt_num(b.v.width()) << ',' << fmt_num(b.phi.width()) << '\n';
}

}  // namespace vimpact
