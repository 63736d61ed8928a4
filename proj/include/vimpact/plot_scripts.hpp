// Gnuplot scripts for exported datasets.  Scripts reference data files by
// name relative to their own directory and embed no timestamps.
#pragma once

#include <string>

namespace vimpact::plots {

std::string trajectory_script(const std::string& csv, const std::string& title);
std::string widths_script(const std::string& csv, const std::string& title);
std::string envelopes_script(const std::string& csv, const std::string& title);
std::string bifurcation_script(const std::string& csv, const std::string& title);
std::string surface_script(const std::string& csv, const std::string& title);
std::string partition_script(const std::string& csv, const std::string& title);
std::string filter_script(const std::string& csv, const std::string& title);
std::string comparison_script(const std::string& csv, const std::string& title);

}  // namespace vimpact::plots
