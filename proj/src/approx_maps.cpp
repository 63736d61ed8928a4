#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "vimpact/approx_maps.hpp"
#include "vimpact/io_util.hpp"

namespace vimpact {

Region region_of(double v, double phi) {
  if (phi > kPi || phi < 0.0) return Region::RESET;
  if (v >= 0.63 && v <= 0.94 && phi >= 0.15 && phi <= 0.45) return Region::R1;
  const bool above_line = v > 0.63 - 0.53 * phi;
  if (above_line && v > 0.55) return Region::R2;
  if (above_line && phi > 1.1 && phi < 2.5 && v < 0.55) return Region::R4;
  if (phi > 2.5 && phi < kPi && v < 0.55) return Region::R5;
  return Region::R3;
}

CompositeMap::CompositeMap(double d, const CoeffTable& table) : d_(d) {
  for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4, Region::R5}) {
    maps_[static_cast<std::size_t>(r)] = coeffs_for(table, r, d);
    out_of_range_ = out_of_range_ || maps_[static_cast<std::size_t>(r)].out_of_range;
  }
}

const EvaluatedRegion& CompositeMap::region_map(Region r) const {
  if (r == Region::RESET) throw CoefficientError("RESET carries no map");
  return maps_[static_cast<std::size_t>(r)];
}

State CompositeMap::step(double v, double phi, Region& used) const {
  used = region_of(v, phi);
  if (used == Region::RESET) return {v, kPhiReset};
  const EvaluatedRegion& m = maps_[static_cast<std::size_t>(used)];
  return {m.f(v, phi), m.g(v, phi)};
}

State CompositeMap::step(double v, double phi) const {
  Region r;
  return step(v, phi, r);
}

State composite_step(double v, double phi, double d) { return CompositeMap(d).step(v, phi); }

Trajectory iterate_composite(const CompositeMap& m, double v0, double phi0, int K) {
  Trajectory tr;
  tr.d = m.d();
  tr.states.reserve(static_cast<std::size_t>(std::max(K, 0)) + 1);
  double v = v0, phi = phi0;
  for (int k = 0; k < K; ++k) {
    Region r;
    const State nx = m.step(v, phi, r);
    tr.states.push_back({v, phi, r});
    v = nx.v;
    phi = nx.phi;
  }
  tr.states.push_back({v, phi, region_of(v, phi)});
  return tr;
}

Trajectory iterate_composite(double v0, double phi0, double d, int K) {
  return iterate_composite(CompositeMap(d), v0, phi0, K);
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
  os << "k,v,phi,region\n";
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    const TaggedState& s = tr.states[k];
    os << k << ',' << fmt_num(s.v) << ',' << fmt_num(s.phi) << ',' << to_string(s.region) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  Trajectory tr;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty trajectory CSV");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw IoError("trajectory CSV row must have 4 columns");
    tr.states.push_back({parse_num(f[1]), parse_num(f[2]), region_from_string(f[3])});
  }
  return tr;
}

std::string AttractorClass::label() const {
  switch (kind) {
    case AttractorKind::FP: return "FP";
    case AttractorKind::PD: return "PD(" + std::to_string(period) + ")";
    case AttractorKind::CD: return "CD";
  }
  return "CD";
}

std::vector<State> states_of(const Trajectory& tr) {
  std::vector<State> out;
  out.reserve(tr.states.size());
  for (const TaggedState& s : tr.states) out.push_back({s.v, s.phi});
  return out;
}

AttractorClass detect_attractor(const std::vector<State>& traj, int p_max, double tol,
                                double tail_fraction) {
  if (p_max < 1) throw InsufficientData("p_max must be at least 1");
  if (traj.size() < static_cast<std::size_t>(4 * p_max))
    throw InsufficientData("trajectory shorter than 4 * p_max");
  // The tail must hold at least two full periods of the longest candidate.
  std::size_t tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(traj.size())));
  tail = std::max<std::size_t>(tail, static_cast<std::size_t>(2 * p_max + 1));
  tail = std::min(tail, traj.size());
  const std::size_t start = traj.size() - tail;
  for (int p = 1; p <= p_max; ++p) {
    bool periodic = true;
    for (std::size_t i = start; i + static_cast<std::size_t>(p) < traj.size() && periodic; ++i) {
      const State& a = traj[i];
      const State& b = traj[i + static_cast<std::size_t>(p)];
      if (!(std::abs(a.v - b.v) <= tol && std::abs(a.phi - b.phi) <= tol)) periodic = false;
    }
    if (periodic) {
      if (p == 1) return {AttractorKind::FP, 1};
      return {AttractorKind::PD, p};
    }
  }
  return {AttractorKind::CD, 0};
}

}  // namespace vimpact
