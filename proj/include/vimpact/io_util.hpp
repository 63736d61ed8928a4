// Small shared helpers: lossless number formatting, CSV splitting, file
// output and a blocking parallel loop.
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vimpact {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits: round-trips any double.
std::string fmt_num(double x);
double parse_num(const std::string& s);

std::vector<std::string> split_csv_line(const std::string& line);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace vimpact
