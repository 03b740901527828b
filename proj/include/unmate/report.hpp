#pragma once

#include "json.hpp"
#include <string>

#include "unmate/equator.hpp"
#include "unmate/families.hpp"
#include "unmate/semigroup.hpp"

namespace unmate {

using Json = nlohmann::ordered_json;

// coefficients lowest degree first: {"num":[[re,im],...],"den":[[re,im],...]}
Json map_to_json(const RationalMap& r);
RationalMap map_from_json(const Json& j);

Json spec_to_json(const CurveSpec& s);
CurveSpec spec_from_json(const Json& j);
// {"spec": {...} | null, "samples": [[re,im], ...]}; "inf" marks the point at infinity
Json curve_to_json(const JordanCurve& c);
JordanCurve curve_from_json(const Json& j, int resolution = 512);

Json point_to_json(const SpherePoint& p);
Json cplx_to_json(cplx z);
cplx cplx_from_json(const Json& j);

struct ResolvedMap {
    RationalMap map;
    std::string id;  // catalog id, or "inline"
    bool catalog = false;
};

// catalog id, inline JSON object, or path to a JSON file
ResolvedMap resolve_map(const std::string& selector);
// reference curve id or figure tag, inline JSON, or path to a JSON file
JordanCurve resolve_curve(const std::string& selector, int resolution = 512);
std::vector<JordanCurve> reference_curves_for(const std::string& map_id, int resolution = 512);

Json postcritical_to_json(const PostcriticalResult& pc);
Json verdict_to_json(const EquatorVerdict& v, const PostcriticalSet& P);
Json report_to_json(const UnmatabilityReport& r, const PostcriticalSet& P);
Json closure_to_json(const ClosureResult& c, bool list_elements = false);

}  // namespace unmate
