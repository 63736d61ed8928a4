// Auxiliary bound maps on the attracting region: envelope curves, generic
// and worst-case (WCS) cobwebbing, region updates and the second-iterate
// 2-cycle bounding the attracting domain.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vimpact/approx_maps.hpp"
#include "vimpact/poly.hpp"

namespace vimpact {

enum class CaseTag { FP, PD, CD };

const char* to_string(CaseTag c);
CaseTag case_from_string(const std::string& s);
double case_d(CaseTag c);  // 0.35, 0.30, 0.26

struct Interval {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool strictly_inside(double x, double tol) const { return x > lo + tol && x < hi - tol; }
};

struct DomainBox {
  Interval v, phi;
  int N = 1;
};

DomainBox r1_plus(CaseTag c);

struct AuxSettings {
  int envelope_points = 201;  // phi grid for tabulation and v grid for the inner extremum
  int wcs_max_steps = 400;
  double wcs_tol = 1e-9;
  double tail_fraction = 0.1;
  bool clip_to_box = true;  // intersect each WCS image with the source box
};

class BoundCurves {
 public:
  using Fn = std::function<double(double)>;

  // Envelopes of a region map (f, g) over `box`.
  static BoundCurves from_map(const Poly2D& f, const Poly2D& g, const DomainBox& box, double d,
                              const AuxSettings& s = {});
  // Arbitrary branch functions (test harnesses and synthetic cases).
  static BoundCurves from_functions(Fn xi_u, Fn xi_l, Fn eta_u, Fn eta_l, const DomainBox& box,
                                    const AuxSettings& s = {});

  double xi_upper(double v) const;
  double xi_lower(double v) const;
  double eta_upper(double phi) const;
  double eta_lower(double phi) const;

  // Extremum of a branch over an interval (exact for closed-form xi).
  Extremum xi_upper_on(const Interval& I) const;
  Extremum xi_lower_on(const Interval& I) const;
  Extremum eta_upper_on(const Interval& I) const;
  Extremum eta_lower_on(const Interval& I) const;

  const DomainBox& source() const { return box_; }
  double d() const { return d_; }
  bool xi_closed_form() const { return xi_closed_; }
  bool crossing_detected() const { return crossing_; }
  bool upper_at_phi_min() const { return upper_at_phi_min_; }
  const Poly1D& xi_upper_poly() const { return xi_u_poly_; }
  const Poly1D& xi_lower_poly() const { return xi_l_poly_; }
  const std::optional<Poly2D>& f_map() const { return f_; }
  const std::optional<Poly2D>& g_map() const { return g_; }
  const AuxSettings& settings() const { return settings_; }

  // Tabulated envelopes on the source box (for export and plotting).
  struct Table {
    std::vector<double> x, upper, lower;
  };
  Table tabulate_xi(int n) const;
  Table tabulate_eta(int n) const;

 private:
  Extremum sampled_extremum(const Fn& fn, const Interval& I) const;

  DomainBox box_{};
  double d_ = 0.0;
  AuxSettings settings_{};
  std::optional<Poly2D> f_, g_;
  bool xi_closed_ = false;
  bool crossing_ = false;
  bool upper_at_phi_min_ = true;
  Poly1D xi_u_poly_, xi_l_poly_;
  Fn xi_u_, xi_l_, eta_u_, eta_l_;
  std::vector<double> inner_v_;  // v grid for the eta inner extremum
};

class CrossingDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws CrossingDetected only when `strict`; otherwise falls back to a
// sampled envelope for xi and records the crossing.
BoundCurves build_bound_curves(const DomainBox& box, double d,
                               const CoeffTable& table = reference_coefficients(),
                               const AuxSettings& s = {}, bool strict = false);

struct WcsStep {
  Interval v, phi;  // I_{k+1}
  double argmax_xi_u = 0.0, argmin_xi_l = 0.0;
  double argmax_eta_u = 0.0, argmin_eta_l = 0.0;
};

WcsStep wcs_step(const BoundCurves& c, const Interval& Iv, const Interval& Iphi);

struct CobwebOrbit {
  std::vector<State> orbit;
  Interval v_tail, phi_tail;
  bool escaped = false;
};

CobwebOrbit generic_cobweb(const BoundCurves& c, State start, int steps, double tail_fraction = 0.1);

struct UpdateResult {
  DomainBox box;  // N + 1
  std::vector<WcsStep> history;
  bool converged = false;
  bool non_contracting = false;
  bool diverged = false;  // an interval became non-finite or exceeded kDivergenceBound
};

inline constexpr double kDivergenceBound = 1e6;

UpdateResult update_region(const BoundCurves& c, const DomainBox& box);

enum class BoundStatement { Part1, Part2, Indeterminate };
const char* to_string(BoundStatement s);

// history[k] maps I_k to I_{k+1}; I_0 is (v0, phi0).
BoundStatement classify_bound_statement(const std::vector<WcsStep>& history, const Interval& v0,
                                        const Interval& phi0, double tol = 1e-9);

struct SecondIterateV {
  Poly1D composed;  // v -> f(f(v, phi_max), phi_min)
  double p_v = 0.0, q_v = 0.0;
  double slope = 0.0;
  bool found = false;
};

SecondIterateV second_iterate_v(const Poly2D& f1, double phi_min, double phi_max, const Interval& v_box);

struct SecondIteratePhase {
  double p_phi = 0.0, q_phi = 0.0;
  double slope = 0.0;
  bool found = false;
};

SecondIteratePhase second_iterate_phase(const BoundCurves& c, const Interval& phi_box);

struct TwoCycle {
  double p_v = 0.0, q_v = 0.0, p_phi = 0.0, q_phi = 0.0;
  double slope_v = 0.0, slope_phi = 0.0;
  bool stable = false;
  std::string source;  // "second-iterate" or "wcs-limit"
};

struct UpdateSequence {
  CaseTag tag = CaseTag::FP;
  double d = 0.0;
  std::vector<DomainBox> boxes;  // A^(1) .. A^(N_final)
  std::vector<BoundStatement> statements;  // per curve build, aligned with boxes[0..n-2]
  BoundStatement final_statement = BoundStatement::Indeterminate;
  TwoCycle cycle;
  bool non_contracting = false;
  bool diverged = false;
  bool crossing_seen = false;
};

UpdateSequence iterate_updates(CaseTag tag, double d, int n_max,
                               const CoeffTable& table = reference_coefficients(),
                               const AuxSettings& s = {});
UpdateSequence iterate_updates(const DomainBox& start, double d, int n_max,
                               const CoeffTable& table = reference_coefficients(),
                               const AuxSettings& s = {});

// One WCS step of the bound curves of a transient region over `box`:
// true when the image interval leaves the box in either coordinate.
bool confirm_transience(Region r, const DomainBox& box, double d,
                        const CoeffTable& table = reference_coefficients());

std::string update_report_json(const UpdateSequence& seq);
void write_width_table_csv(const UpdateSequence& seq, std::ostream& os);

}  // namespace vimpact
