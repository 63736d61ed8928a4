#include "vimpact/plot_scripts.hpp"

namespace vimpact::plots {

namespace {

std::string header(const std::string& title, const std::string& png) {
  return "# gnuplot script\n"
         "set datafile separator ','\n"
         "set key outside\n"
         "set terminal pngcairo size 900,650\n"
         "set output '" + png + "'\n"
         "set title '" + title + "'\n";
}

std::string stem(const std::string& csv) {
  const auto dot = csv.rfind('.');
  return dot == std::string::npos ? csv : csv.substr(0, dot);
}

}  // namespace

std::string trajectory_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set multiplot layout 2,1\n"
         "set xlabel 'k'\nset ylabel 'v_k'\n"
         "plot '" + csv + "' using 1:2 skip 1 with linespoints pt 7 ps 0.4 title 'v'\n"
         "set ylabel 'phi_k'\n"
         "plot '" + csv + "' using 1:3 skip 1 with linespoints pt 7 ps 0.4 title 'phi'\n"
         "unset multiplot\n";
}

std::string widths_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set xlabel 'N'\nset ylabel 'width'\nset logscale y\n"
         "plot '" + csv + "' using 1:6 skip 1 with linespoints title 'v width', \\\n"
         "     '" + csv + "' using 1:7 skip 1 with linespoints title 'phi width'\n";
}

std::string envelopes_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set multiplot layout 1,2\n"
         "set xlabel 'v_k'\nset ylabel 'v_{k+1}'\n"
         "plot '" + csv + "' using 1:2 skip 1 with lines title 'xi_U', \\\n"
         "     '" + csv + "' using 1:3 skip 1 with lines title 'xi_L', x with lines dt 2 title 'diagonal'\n"
         "set xlabel 'phi_k'\nset ylabel 'phi_{k+1}'\n"
         "plot '" + csv + "' using 4:5 skip 1 with lines title 'eta_U', \\\n"
         "     '" + csv + "' using 4:6 skip 1 with lines title 'eta_L', x with lines dt 2 title 'diagonal'\n"
         "unset multiplot\n";
}

std::string bifurcation_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set multiplot layout 2,1\n"
         "set xlabel 'd'\nset ylabel 'v'\n"
         "plot '" + csv + "' using 1:2 skip 1 with dots title 'v tail'\n"
         "set ylabel 'phi'\n"
         "plot '" + csv + "' using 1:3 skip 1 with dots title 'phi tail'\n"
         "unset multiplot\n";
}

std::string surface_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set xlabel 'v_k'\nset ylabel 'phi_k'\nset zlabel 'v_{k+1}'\n"
         "splot '" + csv + "' using 1:2:4 skip 1 with points pt 7 ps 0.3 title 'v_{k+1}'\n";
}

std::string partition_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set xlabel 'phi_k'\nset ylabel 'v_k'\nset cbrange [0:3]\n"
         "set palette defined (0 'blue', 1 'red', 2 'green', 3 'gray')\n"
         "plot '" + csv + "' using 2:1:3 skip 1 with points pt 5 ps 0.4 palette title 'class'\n";
}

std::string filter_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set xlabel 'phi_k'\nset ylabel 'v_k'\n"
         "plot '" + csv + "' using 3:2 skip 1 with points pt 7 ps 0.5 title 'kept samples'\n";
}

std::string comparison_script(const std::string& csv, const std::string& title) {
  return header(title, stem(csv) + ".png") +
         "set xlabel 'phi_k'\nset ylabel 'v_k'\n"
         "plot '" + csv + "' using 3:2 skip 1 with linespoints pt 7 ps 0.5 title 'exact', \\\n"
         "     '" + csv + "' using 5:4 skip 1 with linespoints pt 6 ps 0.5 title 'composite'\n";
}

}  // namespace vimpact::plots
