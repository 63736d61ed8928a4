// First-return maps to the bottom wall and state-space sweeps.
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "vimpact/vi_core.hpp"

namespace vimpact {

enum class ReturnClass { BB = 0, BTB = 1, BTTB = 2, OTHER = 3 };
enum class OtherReason { None, Grazing, NoImpact, TooManyTop, InvalidInput };

const char* to_string(ReturnClass c);
const char* to_string(OtherReason r);
ReturnClass return_class_from_string(const std::string& s);

struct ReturnSample {
  double v = 0.0, phi = 0.0;
  ReturnClass cls = ReturnClass::OTHER;
  OtherReason reason = OtherReason::None;
  double v_next = 0.0, phi_next = 0.0;
  double t_start = 0.0, t_end = 0.0;
  std::vector<ImpactEvent> intermediate;  // top-wall impacts in order

  bool has_output() const { return cls != ReturnClass::OTHER; }
};

struct GridSpec {
  int n_v = 200, n_phi = 200;
  double v_min = 0.005, v_max = 1.0;
  double phi_min = 0.0, phi_max = kPi;

  // Grid over (0, v_hi] x [0, phi_hi] whose first velocity node is v_hi / n_v.
  static GridSpec half_open(int n_v, int n_phi, double v_hi = 1.0, double phi_hi = kPi);
  double v_at(int i) const;
  double phi_at(int j) const;
  std::size_t size() const { return static_cast<std::size_t>(n_v) * static_cast<std::size_t>(n_phi); }
};

struct SurfaceData {
  NondimParams params;
  GridSpec grid;
  std::vector<ReturnSample> samples;  // index i * n_phi + j (i over v, j over phi)

  const ReturnSample& at(int i, int j) const {
    return samples[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.n_phi) +
                   static_cast<std::size_t>(j)];
  }
};

struct ReturnOptions {
  // Phases outside [0, pi] are classified OTHER when set; extended sweeps
  // and long exact orbits clear it.
  bool restrict_phase = true;
  SolverConfig solver{};
};

ReturnSample first_return_B(double v, double phi, const NondimParams& p,
                            const ReturnOptions& opt = {});

// threads = 0 picks the hardware concurrency.
SurfaceData sweep_surfaces(const GridSpec& grid, const NondimParams& p,
                           const ReturnOptions& opt = {}, unsigned threads = 0);

struct LabelRaster {
  int n_v = 0, n_phi = 0;
  std::vector<ReturnClass> labels;  // same indexing as SurfaceData
  std::array<std::size_t, 4> counts{};
};

LabelRaster partition_by_class(const SurfaceData& s);

// Ratio test of the diagonal-proximity filter: 1/delta < |x'/x| < delta.
bool within_ratio(double next, double current, double delta);

// Keep BTB samples passing the ratio test in both coordinates and with
// phi below phase_cap.
std::vector<bool> delta_filter_mask(const SurfaceData& s, double delta, double phase_cap);

struct Box {
  double v_min = 0.0, v_max = 0.0, phi_min = 0.0, phi_max = 0.0;
  bool contains(double v, double phi) const {
    return v >= v_min && v <= v_max && phi >= phi_min && phi <= phi_max;
  }
};

struct FilterPoint {
  double d, v, phi, v_next, phi_next;
};

struct R1FilterResult {
  std::vector<FilterPoint> points;
  Box box{};
  bool empty = true;
  std::vector<double> d_values;
  double delta = 0.0;
  double phase_cap = 0.0;
};

inline constexpr double kDefaultPhaseCap = kPi / 2.0;

R1FilterResult r1_filter(const std::vector<double>& d_values, double delta, const GridSpec& grid,
                         const NondimParams& base, double phase_cap = kDefaultPhaseCap,
                         const ReturnOptions& opt = {}, unsigned threads = 0);
// Same filter applied to precomputed surfaces (one per d).
R1FilterResult r1_filter(const std::vector<SurfaceData>& surfaces, double delta,
                         double phase_cap = kDefaultPhaseCap);

struct StrandPoint {
  double v = 0.0, v_next = 0.0, phi_next = 0.0;
  ReturnClass cls = ReturnClass::OTHER;
  bool near_diagonal = false;
  double local_slope = 0.0;  // d v_next / d v along the strand (central difference)
};

struct Strand {
  double phi = 0.0;
  std::vector<StrandPoint> points;
};

std::vector<Strand> project_phase_planes(const SurfaceData& s, double delta = 1.2);

// CSV columns: v_k, phi_k, class, v_next, phi_next, n_intermediate
void write_surface_csv(const SurfaceData& s, std::ostream& os);
std::vector<ReturnSample> read_surface_csv(std::istream& is);
std::string surface_to_json(const SurfaceData& s);
SurfaceData surface_from_json(const std::string& text);
void write_label_raster_csv(const LabelRaster& r, std::ostream& os);
LabelRaster read_label_raster_csv(std::istream& is);

}  // namespace vimpact
