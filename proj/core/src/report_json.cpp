#include "klab/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace klab {

double round_sig15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::strtod(buf, nullptr);
}

Json scalar_json(const Scalar& s) {
  switch (s.mode()) {
    case Scalar::Mode::rational:
      return Json{{"rational", s.as_rational().get_str()}};
    case Scalar::Mode::sqrt2:
      return Json{{"sqrt2", Json::array({s.as_quad().a.get_str(), s.as_quad().b.get_str()})}};
    case Scalar::Mode::real:
      return Json{{"real", round_sig15(s.to_double())}};
  }
  return Json();
}

Json ellipse_json(const EllipseSpec& e) {
  Json j;
  j["center"] = scalar_json(e.p);
  j["X2"] = scalar_json(e.x2);
  j["C"] = scalar_json(e.c);
  j["degenerate"] = e.degenerate();
  double p = e.center(), xf = e.half_focal();
  j["foci"] = Json::array({round_sig15(p - xf), round_sig15(p + xf)});
  j["minor_half_axis"] = round_sig15(e.minor_half_axis());
  j["major_half_axis"] = round_sig15(e.major_half_axis());
  return j;
}

Json report_json(const CriterionReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["exact"] = r.exact;
  j["tolerance"] = round_sig15(r.tolerance);
  Json params = Json::object();
  for (const auto& [name, value] : r.params) params[name] = scalar_json(value);
  j["params"] = params;
  Json mags = Json::array();
  for (const auto& s : r.residuals) mags.push_back(round_sig15(std::fabs(s.to_double())));
  j["residual_magnitudes"] = mags;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

Json classification_json(const Classification& c) {
  Json j;
  j["class"] = to_string(c.kind);
  Json ellipses = Json::array();
  for (const auto& e : c.ellipses) ellipses.push_back(ellipse_json(e));
  j["ellipses"] = ellipses;
  Json evidence = Json::array();
  for (const auto& [label, rep] : c.evidence) {
    Json item = report_json(rep);
    item["criterion"] = label;
    evidence.push_back(item);
  }
  j["evidence"] = evidence;
  return j;
}

Json catalog_entry_json(const CatalogEntry& e, const CriterionReport& verification) {
  Json j;
  j["name"] = e.name;
  j["theorem"] = e.theorem;
  j["index"] = e.index;
  j["closed_form"] = e.closed_form;
  Json xi = Json::array();
  for (double d : e.xi) xi.push_back(round_sig15(d));
  j["xi"] = xi;
  j["configuration"] = e.config.name;
  j["foci"] = Json::array({round_sig15(e.config.p - e.config.x),
                           round_sig15(e.config.p + e.config.x)});
  j["origin_ellipse_focus"] = round_sig15(e.config.x0);
  j["vanishing_xi_index"] = e.config.vanishing_index;
  j["C"] = round_sig15(e.c);
  j["C0"] = round_sig15(e.c0);
  if (e.figure) j["figure"] = e.figure;
  j["verification"] = report_json(verification);
  return j;
}

Json assignment_json(const ConicAssignment& a) {
  Json j;
  Json fits = Json::array();
  for (const auto& f : a.fits) {
    Json item;
    item["spec"] = ellipse_json(f.spec);
    item["assigned_samples"] = f.assigned;
    item["max_residual"] = round_sig15(f.max_residual);
    fits.push_back(item);
  }
  j["fits"] = fits;
  j["leftover_samples"] = static_cast<int>(a.leftovers.size());
  j["leftover_min_residual"] = round_sig15(a.leftover_min_residual);
  return j;
}

}  // namespace klab
