// Helpers shared by the unit suites.
#pragma once

#include <filesystem>
#include <string>

#include "vimpact/approx_maps.hpp"

namespace vimpact::testing {

// Affine target c0 + cv v + cphi phi, constant in d.
inline TargetTable affine_target(double c0, double cv, double cphi) {
  TargetTable t;
  t.terms = {{0, 0, {c0}}, {1, 0, {cv}}, {0, 1, {cphi}}};
  return t;
}

// Reference table with region r replaced by affine maps.
inline CoeffTable with_affine_region(Region r, double f0, double fv, double fphi, double g0, double gv,
                                     double gphi) {
  CoeffTable t = reference_coefficients();
  RegionTable rt;
  rt.v = affine_target(f0, fv, fphi);
  rt.phi = affine_target(g0, gv, gphi);
  t.regions[r] = rt;
  t.name = "affine-test";
  t.checksum = t.compute_checksum();
  return t;
}

// Fresh empty directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("vimpact_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace vimpact::testing
