#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string_view>

#include "json.hpp"
#include "vimpact/approx_maps.hpp"
#include "vimpact/io_util.hpp"

namespace vimpact {

namespace detail {
extern const std::string_view kReferenceCoefficientsJson;
}

using nlohmann::json;

namespace {

constexpr std::array<Region, 5> kRegions{Region::R1, Region::R2, Region::R3, Region::R4, Region::R5};

std::string fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TargetTable target_from_json(const json& j) {
  TargetTable t;
  t.abs_wrap = j.value("abs", false);
  for (const json& term : j.at("terms")) {
    DTerm d;
    const auto e = term.at("exponents").get<std::vector<int>>();
    if (e.size() != 2 || e[0] < 0 || e[1] < 0) throw CoefficientError("exponents must be two nonnegative integers");
    d.ev = e[0];
    d.ephi = e[1];
    d.d_poly = term.at("d_poly").get<std::vector<double>>();
    if (d.d_poly.empty()) throw CoefficientError("empty d_poly");
    t.terms.push_back(std::move(d));
  }
  return t;
}

json target_to_json(const TargetTable& t) {
  json terms = json::array();
  for (const DTerm& d : t.terms)
    terms.push_back({{"exponents", {d.ev, d.ephi}}, {"d_poly", d.d_poly}});
  return {{"abs", t.abs_wrap}, {"terms", terms}};
}

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::R4: return "R4";
    case Region::R5: return "R5";
    case Region::RESET: return "RESET";
  }
  return "RESET";
}

Region region_from_string(const std::string& s) {
  for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4, Region::R5, Region::RESET})
    if (s == to_string(r)) return r;
  throw CoefficientError("unknown region '" + s + "'");
}

std::string CoeffTable::compute_checksum() const {
  // Canonical text: regions in order, then v/phi targets, each term as
  // "i,j=c0,c1,..." with 17 significant digits.
  std::string s;
  bool first = true;
  auto push = [&](const std::string& piece) {
    if (!first) s.push_back(';');
    s += piece;
    first = false;
  };
  for (Region r : kRegions) {
    const auto it = regions.find(r);
    if (it == regions.end()) continue;
    push(std::string(to_string(r)) + ":" + (it->second.separable ? "separable" : "bivariate"));
    for (const auto* tgt : {&it->second.v, &it->second.phi}) {
      push(std::string(tgt == &it->second.v ? "v" : "phi") + (tgt->abs_wrap ? ":abs" : ":plain"));
      for (const DTerm& d : tgt->terms) {
        std::string piece = std::to_string(d.ev) + "," + std::to_string(d.ephi) + "=";
        for (std::size_t k = 0; k < d.d_poly.size(); ++k) {
          if (k) piece.push_back(',');
          piece += fmt_num(d.d_poly[k]);
        }
        push(piece);
      }
    }
  }
  return "fnv1a64:" + fnv1a64(s);
}

CoeffTable parse_coefficients(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CoefficientError(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != "vimpact-coefficients")
      throw CoefficientError("unexpected coefficient schema");
    CoeffTable t;
    t.name = j.value("name", "");
    t.version = j.value("version", 1);
    if (j.contains("d_range")) {
      const auto r = j.at("d_range").get<std::vector<double>>();
      if (r.size() != 2) throw CoefficientError("d_range must have two entries");
      t.d_lo = r[0];
      t.d_hi = r[1];
    }
    t.provenance = j.value("provenance", "");
    for (Region r : kRegions) {
      const json& rj = j.at("regions").at(to_string(r));
      RegionTable rt;
      const std::string form = rj.at("form").get<std::string>();
      if (form != "bivariate" && form != "separable") throw CoefficientError("unknown form " + form);
      rt.separable = form == "separable";
      rt.v = target_from_json(rj.at("v"));
      rt.phi = target_from_json(rj.at("phi"));
      if (rt.separable) {
        for (const DTerm& d : rt.v.terms)
          if (d.ephi != 0) throw CoefficientError("separable v-map may not depend on phi");
        for (const DTerm& d : rt.phi.terms)
          if (d.ev != 0) throw CoefficientError("separable phi-map may not depend on v");
      }
      t.regions[r] = std::move(rt);
    }
    t.checksum = j.at("checksum").get<std::string>();
    if (!t.checksum_ok())
      throw CoefficientError("coefficient checksum mismatch: stored " + t.checksum + ", computed " +
                             t.compute_checksum());
    return t;
  } catch (const json::exception& e) {
    throw CoefficientError(std::string("malformed coefficient file: ") + e.what());
  }
}

const CoeffTable& reference_coefficients() {
  static const CoeffTable t = parse_coefficients(std::string(detail::kReferenceCoefficientsJson));
  return t;
}

CoeffTable load_coefficients(const std::filesystem::path& path) {
  return parse_coefficients(read_text_file(path));
}

std::string coefficients_to_json(const CoeffTable& t) {
  json j;
  j["schema"] = "vimpact-coefficients";
  j["version"] = t.version;
  j["name"] = t.name;
  j["d_range"] = {t.d_lo, t.d_hi};
  if (!t.provenance.empty()) j["provenance"] = t.provenance;
  json regs = json::object();
  for (const auto& [r, rt] : t.regions)
    regs[to_string(r)] = {{"form", rt.separable ? "separable" : "bivariate"},
                          {"v", target_to_json(rt.v)},
                          {"phi", target_to_json(rt.phi)}};
  j["regions"] = regs;
  j["checksum"] = t.compute_checksum();
  return j.dump(1);
}

EvaluatedRegion coeffs_for(const CoeffTable& t, Region region, double d) {
  if (region == Region::RESET) throw CoefficientError("RESET carries no coefficients");
  const auto it = t.regions.find(region);
  if (it == t.regions.end()) throw CoefficientError(std::string("missing region ") + to_string(region));
  EvaluatedRegion e;
  e.region = region;
  e.separable = it->second.separable;
  e.out_of_range = d < t.d_lo - 1e-12 || d > t.d_hi + 1e-12;
  auto eval = [d](const TargetTable& tt) {
    Poly2D p;
    p.abs_wrap = tt.abs_wrap;
    for (const DTerm& term : tt.terms) {
      double c = 0.0;
      for (auto k = term.d_poly.rbegin(); k != term.d_poly.rend(); ++k) c = c * d + *k;
      p.terms.push_back({term.ev, term.ephi, c});
    }
    return p;
  };
  e.f = eval(it->second.v);
  e.g = eval(it->second.phi);
  return e;
}

}  // namespace vimpact
