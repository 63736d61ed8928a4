#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vimpact/return_map.hpp"

using namespace vimpact;

namespace {

const SurfaceData& coarse_surface() {
  static const SurfaceData s = sweep_surfaces(GridSpec::half_open(40, 40), reference_params(0.35));
  return s;
}

bool same_sample(const ReturnSample& a, const ReturnSample& b) {
  if (a.v != b.v || a.phi != b.phi || a.cls != b.cls) return false;
  if (a.cls == ReturnClass::OTHER) return true;
  return a.v_next == b.v_next && a.phi_next == b.phi_next && a.intermediate.size() == b.intermediate.size();
}

}  // namespace

TEST_CASE("half-open grid nodes") {
  const GridSpec g = GridSpec::half_open(200, 200);
  CHECK(g.v_at(0) == doctest::Approx(0.005));
  CHECK(g.v_at(99) == doctest::Approx(0.5));
  CHECK(g.v_at(199) == doctest::Approx(1.0));
  CHECK(g.phi_at(0) == 0.0);
  CHECK(g.phi_at(199) == doctest::Approx(kPi));
  CHECK(g.size() == 40000u);
}

TEST_CASE("invalid inputs are classified OTHER") {
  const NondimParams p = reference_params(0.35);
  CHECK(first_return_B(0.0, 1.0, p).reason == OtherReason::InvalidInput);
  CHECK(first_return_B(-0.3, 1.0, p).cls == ReturnClass::OTHER);
  CHECK(first_return_B(0.5, 4.0, p).reason == OtherReason::InvalidInput);
  ReturnOptions open;
  open.restrict_phase = false;
  CHECK(first_return_B(0.5, 4.0, p, open).reason != OtherReason::InvalidInput);
}

TEST_CASE("classification is total and outputs are consistent with the class") {
  const SurfaceData& s = coarse_surface();
  REQUIRE(s.samples.size() == 1600u);
  for (const ReturnSample& x : s.samples) {
    const int c = static_cast<int>(x.cls);
    CHECK(c >= 0);
    CHECK(c <= 3);
    if (x.has_output()) {
      CHECK(x.intermediate.size() == static_cast<std::size_t>(c));
      CHECK(x.v_next > 0.0);
      CHECK(x.phi_next >= 0.0);
      CHECK(x.phi_next < kTwoPi);
      CHECK(x.t_end > x.t_start);
      for (const ImpactEvent& e : x.intermediate) {
        CHECK(e.side == Side::T);
        CHECK(e.velocity_in < 0.0);
        CHECK(e.t > x.t_start);
        CHECK(e.t < x.t_end);
      }
      CHECK(x.reason == OtherReason::None);
    } else {
      CHECK(x.reason != OtherReason::None);
    }
  }
}

TEST_CASE("phase of the return matches its time") {
  const SurfaceData& s = coarse_surface();
  for (const ReturnSample& x : s.samples)
    if (x.has_output()) CHECK(x.phi_next == doctest::Approx(impact_phase(x.t_end, s.params.psi)).epsilon(1e-12));
}

TEST_CASE("sweep is deterministic across thread counts") {
  const GridSpec g = GridSpec::half_open(12, 12);
  const SurfaceData a = sweep_surfaces(g, reference_params(0.30), {}, 1);
  const SurfaceData b = sweep_surfaces(g, reference_params(0.30), {}, 3);
  for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(same_sample(a.samples[k], b.samples[k]));
}

TEST_CASE("partition counts add up") {
  const LabelRaster r = partition_by_class(coarse_surface());
  CHECK(r.counts[0] + r.counts[1] + r.counts[2] + r.counts[3] == 1600u);
  CHECK(r.labels.size() == 1600u);
}

TEST_CASE("ratio test") {
  CHECK(within_ratio(1.0, 1.0, 1.2));
  CHECK(within_ratio(-1.1, 1.0, 1.2));
  CHECK_FALSE(within_ratio(1.2, 1.0, 1.2));
  CHECK_FALSE(within_ratio(1.0 / 1.2 - 1e-9, 1.0, 1.2));
  CHECK_FALSE(within_ratio(1.0, 0.0, 1.2));
}

TEST_CASE("delta filter keeps only near-diagonal BTB samples below the phase cap") {
  const SurfaceData& s = coarse_surface();
  const auto keep = delta_filter_mask(s, 1.2, kDefaultPhaseCap);
  std::size_t n = 0;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (!keep[k]) continue;
    ++n;
    const ReturnSample& x = s.samples[k];
    CHECK(x.cls == ReturnClass::BTB);
    CHECK(x.phi < kDefaultPhaseCap);
    CHECK(within_ratio(x.v_next, x.v, 1.2));
    CHECK(within_ratio(x.phi_next, x.phi, 1.2));
  }
  CHECK(n > 0);
  const R1FilterResult r = r1_filter(std::vector<SurfaceData>{s}, 1.2);
  CHECK(r.points.size() == n);
  CHECK_FALSE(r.empty);
  for (const FilterPoint& p : r.points) CHECK(r.box.contains(p.v, p.phi));
}

TEST_CASE("phase-plane strands mirror the surface") {
  const SurfaceData& s = coarse_surface();
  const auto strands = project_phase_planes(s, 1.2);
  REQUIRE(strands.size() == 40u);
  for (int j = 0; j < 40; ++j) {
    CHECK(strands[static_cast<std::size_t>(j)].phi == s.grid.phi_at(j));
    for (int i = 0; i < 40; ++i) {
      const StrandPoint& p = strands[static_cast<std::size_t>(j)].points[static_cast<std::size_t>(i)];
      CHECK(p.cls == s.at(i, j).cls);
      CHECK(p.v == s.at(i, j).v);
    }
  }
}

TEST_CASE("surface CSV and JSON round trip") {
  const SurfaceData& s = coarse_surface();
  std::stringstream csv;
  write_surface_csv(s, csv);
  const auto back = read_surface_csv(csv);
  REQUIRE(back.size() == s.samples.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].v == s.samples[k].v);
    CHECK(back[k].phi == s.samples[k].phi);
    CHECK(back[k].cls == s.samples[k].cls);
    if (s.samples[k].has_output()) {
      CHECK(back[k].v_next == s.samples[k].v_next);
      CHECK(back[k].phi_next == s.samples[k].phi_next);
    }
  }
  const SurfaceData j = surface_from_json(surface_to_json(s));
  CHECK(j.params.d == s.params.d);
  CHECK(j.params.gbar == s.params.gbar);
  CHECK(j.grid.n_v == s.grid.n_v);
  REQUIRE(j.samples.size() == s.samples.size());
  for (std::size_t k = 0; k < j.samples.size(); ++k) {
    CHECK(same_sample(j.samples[k], s.samples[k]));
    for (std::size_t m = 0; m < j.samples[k].intermediate.size(); ++m)
      CHECK(j.samples[k].intermediate[m].t == s.samples[k].intermediate[m].t);
  }
}

TEST_CASE("label raster CSV round trip") {
  const LabelRaster r = partition_by_class(coarse_surface());
  std::stringstream ss;
  write_label_raster_csv(r, ss);
  const LabelRaster b = read_label_raster_csv(ss);
  CHECK(b.n_v == r.n_v);
  CHECK(b.n_phi == r.n_phi);
  CHECK(b.labels == r.labels);
  CHECK(b.counts == r.counts);
}
