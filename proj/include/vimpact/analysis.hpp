// Experiment drivers: continuation bifurcation scans, exact-versus-composite
// trajectory comparisons and the FP/PD/CD case presets.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vimpact/approx_maps.hpp"
#include "vimpact/aux_domain.hpp"
#include "vimpact/return_map.hpp"

namespace vimpact {

enum class MapKind { Exact, Composite };
const char* to_string(MapKind k);
MapKind map_kind_from_string(const std::string& s);

struct BifurcationSample {
  double d = 0.0;
  std::vector<State> tail;  // states after the transient
  AttractorClass cls{};
  bool gap = false;  // the orbit hit an OTHER return before the tail was complete
};

struct ScanOptions {
  int steps = 400;
  int transient = 300;
  State seed{0.2, 0.1};
  const CoeffTable* table = nullptr;  // composite map; nullptr selects the reference table
  ReturnOptions exact{false, {}};     // exact map: phases outside [0, pi] stay valid
  int p_max = 16;
  double tol = 1e-4;
};

// d runs from d_from towards d_to in increments of |step|; each d starts
// from the last state of the previous one.
std::vector<BifurcationSample> bifurcation_scan(MapKind kind, double d_from, double d_to, double step,
                                                const ScanOptions& opt = {});

// First d (in scan order) whose class changes from FP to a periodic orbit
// of period >= 2 or to CD.
std::optional<double> first_period_doubling(const std::vector<BifurcationSample>& scan);

const BifurcationSample* sample_near(const std::vector<BifurcationSample>& scan, double d);

void write_bifurcation_csv(const std::vector<BifurcationSample>& scan, std::ostream& os);

// Orbit of the exact return map; stops early at an OTHER return.
struct ExactOrbit {
  std::vector<TaggedState> states;  // tags are dispatch regions of each state
  bool stopped = false;
  OtherReason reason = OtherReason::None;
};
ExactOrbit iterate_exact(double v0, double phi0, const NondimParams& p, int K,
                         const ReturnOptions& opt = {false, {}});

double hausdorff_distance(const std::vector<State>& a, const std::vector<State>& b);

struct ComparisonRecord {
  double v0 = 0.0, phi0 = 0.0, d = 0.0;
  ExactOrbit exact;
  Trajectory composite;
  double tail_distance = 0.0;
};

struct CompareOptions {
  int steps = 400;
  int tail = 100;
  const CoeffTable* table = nullptr;
  ReturnOptions exact{false, {}};
  unsigned threads = 0;
};

std::vector<ComparisonRecord> compare_exact_vs_composite(const std::vector<State>& ics, double d,
                                                         const CompareOptions& opt = {});
void write_comparison_csv(const ComparisonRecord& rec, std::ostream& os);

struct CaseOptions {
  State initial{0.2, 0.1};
  int steps = 400;
  std::optional<int> n_max;  // default: 11 for FP and PD, 6 for CD
  const CoeffTable* table = nullptr;
  AuxSettings aux{};
};

int default_update_count(CaseTag c);

struct CaseArtifacts {
  CaseTag tag = CaseTag::FP;
  double d = 0.0;
  Trajectory trajectory;
  UpdateSequence updates;
  std::vector<std::filesystem::path> files;
};

class CaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs the composite trajectory and the auxiliary-domain updates for the
// case's d; writes artifacts under `out_dir` when it is non-empty.
CaseArtifacts run_case_preset(CaseTag c, const std::filesystem::path& out_dir,
                              const CaseOptions& opt = {});

}  // namespace vimpact
