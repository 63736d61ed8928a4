// Region polynomial maps, the composite map with its dispatch chain, least
// squares refitting and attractor classification.
#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vimpact/poly.hpp"
#include "vimpact/return_map.hpp"

namespace vimpact {

enum class Region { R1 = 0, R2 = 1, R3 = 2, R4 = 3, R5 = 4, RESET = 5 };

const char* to_string(Region r);
Region region_from_string(const std::string& s);

// Ordered dispatch chain; RESET for phases outside [0, pi].
Region region_of(double v, double phi);

// ---------------------------------------------------------------------------
// Coefficient tables

class CoefficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DTerm {
  int ev = 0, ephi = 0;
  std::vector<double> d_poly;  // ascending powers of d
};

struct TargetTable {
  bool abs_wrap = false;
  std::vector<DTerm> terms;
};

struct RegionTable {
  bool separable = false;
  TargetTable v, phi;  // v-map (f) and phi-map (g)
};

struct CoeffTable {
  std::string name;
  int version = 1;
  double d_lo = 0.26, d_hi = 0.35;
  std::map<Region, RegionTable> regions;
  std::string checksum;  // "fnv1a64:<hex>"
  std::string provenance;

  std::string compute_checksum() const;
  bool checksum_ok() const { return checksum == compute_checksum(); }
};

// The embedded reference tables.  Validates the stored checksum.
const CoeffTable& reference_coefficients();
CoeffTable load_coefficients(const std::filesystem::path& path);
CoeffTable parse_coefficients(const std::string& json_text);
std::string coefficients_to_json(const CoeffTable& t);

struct EvaluatedRegion {
  Region region = Region::R1;
  bool separable = false;
  Poly2D f;  // v_{k+1}
  Poly2D g;  // phi_{k+1}
  bool out_of_range = false;
};

EvaluatedRegion coeffs_for(const CoeffTable& t, Region region, double d);

// ---------------------------------------------------------------------------
// Composite map

struct State {
  double v = 0.0, phi = 0.0;
};

struct TaggedState {
  double v = 0.0, phi = 0.0;
  Region region = Region::R3;
};

class CompositeMap {
 public:
  static constexpr double kPhiReset = 1.2;

  explicit CompositeMap(double d, const CoeffTable& table = reference_coefficients());

  double d() const { return d_; }
  bool out_of_range() const { return out_of_range_; }
  const EvaluatedRegion& region_map(Region r) const;
  State step(double v, double phi) const;
  State step(double v, double phi, Region& used) const;

 private:
  double d_;
  bool out_of_range_ = false;
  std::array<EvaluatedRegion, 5> maps_;
};

State composite_step(double v, double phi, double d);

struct Trajectory {
  double d = 0.0;
  std::vector<TaggedState> states;  // K + 1 states; tag = dispatch region of that state
};

Trajectory iterate_composite(const CompositeMap& m, double v0, double phi0, int K);
Trajectory iterate_composite(double v0, double phi0, double d, int K);

void write_trajectory_csv(const Trajectory& tr, std::ostream& os);
Trajectory read_trajectory_csv(std::istream& is);

// ---------------------------------------------------------------------------
// Fitting

class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Exponents = std::vector<std::pair<int, int>>;  // (power of v, power of phi)

// Monomial order 1, phi, v, phi^2, phi v, v^2, phi^2 v, phi v^2, v^3.
Exponents poly23_exponents();
// All monomials v^i phi^j with i <= deg_v, j <= deg_phi, i + j <= max(deg_v, deg_phi).
Exponents bivariate_exponents(int deg_v, int deg_phi);

struct FitResult {
  Poly2D poly;
  double r2 = 0.0;
  double sse = 0.0;
  std::size_t n = 0;
};

FitResult fit_least_squares(const std::vector<double>& v, const std::vector<double>& phi,
                            const std::vector<double>& y, const Exponents& exps);

struct RegionFit {
  FitResult v_fit, phi_fit;
  std::string provenance;
};

// Fit both targets over the samples selected by `keep` that carry `cls`.
RegionFit fit_region(const SurfaceData& s, const std::vector<bool>& keep, const Exponents& exps,
                     ReturnClass cls = ReturnClass::BTB);
// Separable form: v-map in v only (deg_v), phi-map in phi only (deg_phi).
RegionFit fit_region_separable(const SurfaceData& s, const std::vector<bool>& keep, int deg_v,
                               int deg_phi, ReturnClass cls);
// Samples inside the region's dispatch domain with the given class.
std::vector<bool> region_mask(const SurfaceData& s, Region r, ReturnClass cls);

// Refit the first region per d on delta-filtered samples, then fit each
// coefficient as a quadratic in d; other regions are copied from `base`.
struct RefitReport {
  CoeffTable table;
  std::vector<double> d_values;
  std::vector<double> r2_v, r2_phi;
};
RefitReport refit_r1_table(const std::vector<SurfaceData>& surfaces, double delta, double phase_cap,
                           const CoeffTable& base, int d_degree = 2);

// ---------------------------------------------------------------------------
// Attractor classification

enum class AttractorKind { FP, PD, CD };

struct AttractorClass {
  AttractorKind kind = AttractorKind::CD;
  int period = 0;  // 1 for FP, p for PD, 0 for CD
  std::string label() const;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AttractorClass detect_attractor(const std::vector<State>& traj, int p_max = 16, double tol = 1e-4,
                                double tail_fraction = 0.1);
std::vector<State> states_of(const Trajectory& tr);

}  // namespace vimpact
