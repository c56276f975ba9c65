#ifndef KLAB_REPORT_JSON_HPP
#define KLAB_REPORT_JSON_HPP

#include <nlohmann/json.hpp>

#include "klab/criteria.hpp"
#include "klab/curve.hpp"

namespace klab {

using Json = nlohmann::ordered_json;

/// Deterministic float formatting: round to 15 significant digits.
double round_sig15(double x);

/// {"rational": "p/q"}, {"sqrt2": ["a", "b"]}, or {"real": x}.
Json scalar_json(const Scalar& s);

Json ellipse_json(const EllipseSpec& e);
Json report_json(const CriterionReport& r);
Json classification_json(const Classification& c);
Json catalog_entry_json(const CatalogEntry& e, const CriterionReport& verification);
Json assignment_json(const ConicAssignment& a);

}  // namespace klab

#endif
