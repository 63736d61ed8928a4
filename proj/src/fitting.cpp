#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "vimpact/approx_maps.hpp"
#include "vimpact/io_util.hpp"
#include "vimpact/simd.hpp"

namespace vimpact {

Exponents poly23_exponents() {
  return {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}, {1, 2}, {2, 1}, {3, 0}};
}

Exponents bivariate_exponents(int deg_v, int deg_phi) {
  Exponents e;
  const int total = std::max(deg_v, deg_phi);
  for (int t = 0; t <= total; ++t)
    for (int j = std::min(t, deg_phi); j >= 0; --j) {
      const int i = t - j;
      if (i <= deg_v) e.emplace_back(i, j);
    }
  return e;
}

FitResult fit_least_squares(const std::vector<double>& v, const std::vector<double>& phi,
                            const std::vector<double>& y, const Exponents& exps) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const auto m = static_cast<Eigen::Index>(exps.size());
  if (v.size() != y.size() || phi.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
  if (n < m) throw RankDeficient("fewer samples than monomials");
  Eigen::MatrixXd X(n, m);
  Eigen::VectorXd Y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto k = static_cast<std::size_t>(r);
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto& [i, j] = exps[static_cast<std::size_t>(c)];
      X(r, c) = std::pow(v[k], i) * std::pow(phi[k], j);
    }
    Y(r) = y[k];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < m) throw RankDeficient("design matrix is rank deficient");
  const Eigen::VectorXd beta = qr.solve(Y);

  FitResult out;
  out.n = y.size();
  for (Eigen::Index c = 0; c < m; ++c)
    out.poly.terms.push_back({exps[static_cast<std::size_t>(c)].first,
                              exps[static_cast<std::size_t>(c)].second, beta(c)});
  std::vector<double> pred(y.size());
  simd::eval_poly2d(out.poly, v, phi, pred);
  double mean = 0.0;
  for (double t : y) mean += t;
  mean /= static_cast<double>(y.size());
  double sse = 0.0, sst = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    sse += (y[k] - pred[k]) * (y[k] - pred[k]);
    sst += (y[k] - mean) * (y[k] - mean);
  }
  out.sse = sse;
  out.r2 = sst > 0.0 ? 1.0 - sse / sst : (sse == 0.0 ? 1.0 : 0.0);
  return out;
}

namespace {

struct Selected {
  std::vector<double> v, phi, v_next, phi_next;
};

Selected select(const SurfaceData& s, const std::vector<bool>& keep, ReturnClass cls) {
  if (keep.size() != s.samples.size()) throw std::invalid_argument("fit: mask size mismatch");
  Selected out;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const ReturnSample& x = s.samples[k];
    if (!keep[k] || x.cls != cls) continue;
    out.v.push_back(x.v);
    out.phi.push_back(x.phi);
    out.v_next.push_back(x.v_next);
    out.phi_next.push_back(x.phi_next);
  }
  return out;
}

std::string provenance_text(const SurfaceData& s, std::size_t n, const char* what) {
  std::ostringstream os;
  os << what << "; d=" << fmt_num(s.params.d) << "; grid=" << s.grid.n_v << "x" << s.grid.n_phi
     << "; samples=" << n;
  return os.str();
}

}  // namespace

RegionFit fit_region(const SurfaceData& s, const std::vector<bool>& keep, const Exponents& exps,
                     ReturnClass cls) {
  const Selected sel = select(s, keep, cls);
  RegionFit f;
  f.v_fit = fit_least_squares(sel.v, sel.phi, sel.v_next, exps);
  f.phi_fit = fit_least_squares(sel.v, sel.phi, sel.phi_next, exps);
  f.provenance = provenance_text(s, sel.v.size(), "bivariate least squares");
  return f;
}

RegionFit fit_region_separable(const SurfaceData& s, const std::vector<bool>& keep, int deg_v,
                               int deg_phi, ReturnClass cls) {
  const Selected sel = select(s, keep, cls);
  Exponents ev, ephi;
  for (int i = 0; i <= deg_v; ++i) ev.emplace_back(i, 0);
  for (int j = 0; j <= deg_phi; ++j) ephi.emplace_back(0, j);
  RegionFit f;
  f.v_fit = fit_least_squares(sel.v, sel.phi, sel.v_next, ev);
  f.phi_fit = fit_least_squares(sel.v, sel.phi, sel.phi_next, ephi);
  f.provenance = provenance_text(s, sel.v.size(), "separable least squares");
  return f;
}

std::vector<bool> region_mask(const SurfaceData& s, Region r, ReturnClass cls) {
  std::vector<bool> keep(s.samples.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const ReturnSample& x = s.samples[k];
    keep[k] = x.cls == cls && region_of(x.v, x.phi) == r;
  }
  return keep;
}

RefitReport refit_r1_table(const std::vector<SurfaceData>& surfaces, double delta, double phase_cap,
                           const CoeffTable& base, int d_degree) {
  if (surfaces.size() < static_cast<std::size_t>(d_degree) + 1)
    throw RankDeficient("need at least d_degree + 1 values of d");
  const Exponents exps = poly23_exponents();
  RefitReport rep;
  std::vector<std::vector<double>> cv(exps.size()), cphi(exps.size());
  for (const SurfaceData& s : surfaces) {
    const RegionFit f = fit_region(s, delta_filter_mask(s, delta, phase_cap), exps);
    rep.d_values.push_back(s.params.d);
    rep.r2_v.push_back(f.v_fit.r2);
    rep.r2_phi.push_back(f.phi_fit.r2);
    for (std::size_t c = 0; c < exps.size(); ++c) {
      cv[c].push_back(f.v_fit.poly.terms[c].c);
      cphi[c].push_back(f.phi_fit.poly.terms[c].c);
    }
  }
  // Each coefficient as a polynomial in d, through the same QR solver.
  Exponents dexp;
  for (int k = 0; k <= d_degree; ++k) dexp.emplace_back(k, 0);
  const std::vector<double> zeros(rep.d_values.size(), 0.0);
  auto d_fit = [&](const std::vector<double>& y) {
    const FitResult r = fit_least_squares(rep.d_values, zeros, y, dexp);
    std::vector<double> asc(static_cast<std::size_t>(d_degree) + 1, 0.0);
    for (const Term& t : r.poly.terms) asc[static_cast<std::size_t>(t.ev)] = t.c;
    return asc;
  };
  RegionTable r1;
  r1.separable = false;
  for (std::size_t c = 0; c < exps.size(); ++c) {
    r1.v.terms.push_back({exps[c].first, exps[c].second, d_fit(cv[c])});
    r1.phi.terms.push_back({exps[c].first, exps[c].second, d_fit(cphi[c])});
  }
  rep.table = base;
  rep.table.regions[Region::R1] = r1;
  rep.table.name = "refit-r1";
  std::ostringstream prov;
  prov << "R1 refitted on ratio-filtered BTB samples (delta=" << fmt_num(delta)
       << ", phase cap=" << fmt_num(phase_cap) << ", grid=" << surfaces.front().grid.n_v << "x"
       << surfaces.front().grid.n_phi << ", d values=" << surfaces.size()
       << "); other regions copied from " << base.name;
  rep.table.provenance = prov.str();
  rep.table.d_lo = *std::min_element(rep.d_values.begin(), rep.d_values.end());
  rep.table.d_hi = *std::max_element(rep.d_values.begin(), rep.d_values.end());
  rep.table.checksum = rep.table.compute_checksum();
  return rep;
}

}  // namespace vimpact
