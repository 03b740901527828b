#include "unmate/report.hpp"

#include <filesystem>
#include <fstream>

#include "unmate/reference_curves.hpp"

namespace unmate {

Json cplx_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Usage, "complex numbers are written [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json point_to_json(const SpherePoint& p) {
    if (p.is_infinity()) return "inf";
    return cplx_to_json(p.value());
}

namespace {

Json coeffs(const Polynomial& p) {
    Json a = Json::array();
    for (auto c : p.coeffs()) a.push_back(cplx_to_json(c));
    if (a.empty()) a.push_back(cplx_to_json(0.0));
    return a;
}

Polynomial poly(const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::Usage, "polynomial must be an array of [re, im] coefficients");
    std::vector<cplx> c;
    for (auto& x : j) c.push_back(cplx_from_json(x));
    return Polynomial(c);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Usage, "cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Usage, path + ": " + e.what());
    }
}

bool looks_inline(const std::string& s) {
    auto p = s.find_first_not_of(" \t\n");
    return p != std::string::npos && s[p] == '{';
}

}  // namespace

Json map_to_json(const RationalMap& r) {
    Json j;
    j["num"] = coeffs(r.num());
    j["den"] = coeffs(r.den());
    return j;
}

RationalMap map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw Error(ErrorKind::Usage, "map JSON needs \"num\" and \"den\"");
    RationalMap r(poly(j["num"]), poly(j["den"]));
    r.validate();
    return r;
}

Json spec_to_json(const CurveSpec& s) {
    Json j;
    if (s.kind == CurveSpec::Kind::Circle) {
        j["kind"] = "circle";
        j["center"] = cplx_to_json(s.center);
        j["radius"] = s.radius;
        return j;
    }
    j["kind"] = "chain";
    Json pieces = Json::array();
    for (auto& p : s.pieces) {
        Json q;
        if (p.kind == CurvePiece::Kind::Arc) {
            q["kind"] = "arc";
            q["center"] = cplx_to_json(p.center);
            q["radius"] = p.radius;
            q["t0"] = p.t0;
            q["t1"] = p.t1;
        } else {
            q["kind"] = "segment";
            q["from"] = cplx_to_json(p.from);
            q["to"] = cplx_to_json(p.to);
        }
        pieces.push_back(q);
    }
    j["pieces"] = pieces;
    return j;
}

CurveSpec spec_from_json(const Json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "circle") return CurveSpec::circle(cplx_from_json(j.at("center")), j.at("radius").get<double>());
    if (kind != "chain") throw Error(ErrorKind::Usage, "curve spec kind must be circle or chain");
    std::vector<CurvePiece> pieces;
    for (auto& q : j.at("pieces")) {
        std::string k = q.value("kind", "");
        if (k == "arc")
            pieces.push_back(CurvePiece::arc(cplx_from_json(q.at("center")), q.at("radius").get<double>(),
                                             q.at("t0").get<double>(), q.at("t1").get<double>()));
        else if (k == "segment")
            pieces.push_back(CurvePiece::segment(cplx_from_json(q.at("from")), cplx_from_json(q.at("to"))));
        else
            throw Error(ErrorKind::Usage, "curve piece kind must be arc or segment");
    }
    return CurveSpec::chain(pieces);
}

Json curve_to_json(const JordanCurve& c) {
    Json j;
    j["spec"] = c.spec ? spec_to_json(*c.spec) : Json(nullptr);
    Json s = Json::array();
    for (auto& p : c.samples) s.push_back(point_to_json(p));
    j["samples"] = s;
    return j;
}

JordanCurve curve_from_json(const Json& j, int resolution) {
    if (!j.is_object()) throw Error(ErrorKind::Usage, "curve JSON must be an object");
    JordanCurve c;
    if (j.contains("spec") && !j["spec"].is_null()) {
        c = sample_parametric(spec_from_json(j["spec"]), resolution);
    } else {
        if (!j.contains("samples")) throw Error(ErrorKind::Usage, "curve JSON needs \"spec\" or \"samples\"");
        std::vector<SpherePoint> pts;
        for (auto& s : j["samples"]) pts.push_back(s.is_string() ? SpherePoint::infinity() : SpherePoint::finite(cplx_from_json(s)));
        for (size_t i = 0; i < pts.size(); ++i) {
            c.samples.push_back(pts[i]);
            c.params.push_back(static_cast<double>(i) / pts.size());
            c.anchors.push_back(i == 0 ? 1 : 0);
        }
        validate_jordan(c);
    }
    c.name = j.value("name", "inline");
    return c;
}

ResolvedMap resolve_map(const std::string& sel) {
    if (looks_inline(sel)) {
        Json j;
        try {
            j = Json::parse(sel);
        } catch (const std::exception& e) {
            throw Error(ErrorKind::Usage, std::string("inline map JSON: ") + e.what());
        }
        return {map_from_json(j), "inline", false};
    }
    auto ids = catalog_ids();
    try {
        auto e = catalog_entry(sel);
        return {e.map, e.name, true};
    } catch (const Error&) {
    }
    if (std::filesystem::exists(sel))
        return {map_from_json(read_json_file(sel)), std::filesystem::path(sel).stem().string(), false};
    std::string known;
    for (auto& i : ids) known += (known.empty() ? "" : ", ") + i;
    throw Error(ErrorKind::Usage, "unknown map '" + sel + "'; use a catalog id (" + known + "), inline JSON or a file");
}

JordanCurve resolve_curve(const std::string& sel, int resolution) {
    if (is_reference_curve(sel)) {
        auto pc = reference_curve(sel);
        auto c = sample_parametric(pc.spec, resolution);
        c.name = pc.id;
        return c;
    }
    if (looks_inline(sel)) {
        Json j;
        try {
            j = Json::parse(sel);
        } catch (const std::exception& e) {
            throw Error(ErrorKind::Usage, std::string("inline curve JSON: ") + e.what());
        }
        return curve_from_json(j, resolution);
    }
    if (std::filesystem::exists(sel)) {
        auto c = curve_from_json(read_json_file(sel), resolution);
        if (c.name == "inline") c.name = std::filesystem::path(sel).stem().string();
        return c;
    }
    throw Error(ErrorKind::Usage, "unknown curve '" + sel + "'; use a curve id such as omega+2:V, a figure tag such as fig9, inline JSON or a file");
}

std::vector<JordanCurve> reference_curves_for(const std::string& map_id, int resolution) {
    std::vector<JordanCurve> out;
    for (auto& pc : reference_curves()) {
        if (pc.map_id != map_id) continue;
        auto c = sample_parametric(pc.spec, resolution);
        c.name = pc.id;
        out.push_back(c);
    }
    return out;
}

Json postcritical_to_json(const PostcriticalResult& pc) {
    Json j;
    Json pts = Json::array(), crit = Json::array();
    for (size_t i = 0; i < pc.set.size(); ++i) {
        Json p;
        p["index"] = i;
        p["label"] = pc.set.labels[i];
        p["point"] = point_to_json(pc.set.points[i]);
        p["successor"] = pc.graph.successor[i];
        pts.push_back(p);
    }
    for (auto& c : pc.critical) crit.push_back(point_to_json(c));
    j["critical"] = crit;
    j["postcritical"] = pts;
    return j;
}

Json verdict_to_json(const EquatorVerdict& v, const PostcriticalSet& P) {
    Json j;
    j["verdict"] = v.label();
    j["outcome"] = outcome_name(v.outcome);
    j["level"] = v.level;
    j["components"] = v.components;
    j["covering_degrees"] = v.covering_degrees;
    j["partition"] = v.partition.to_string(P);
    j["dynamics"] = dyn_status_name(v.status);
    j["source_word"] = v.source_word;
    j["lift_word"] = v.lift_word;
    j["isotopy"] = v.isotopy;
    j["chart_infinity"] = v.chart_infinity;
    j["consistent"] = v.consistent;
    j["diagnostic"] = v.diagnostic;
    j["refinements"] = v.refinements;
    return j;
}

Json report_to_json(const UnmatabilityReport& r, const PostcriticalSet& P) {
    Json j;
    j["map"] = r.map_id;
    j["depth"] = r.depth;
    j["conclusion"] = r.label();
    j["fold"] = r.fold;
    j["equator_curve"] = r.equator_curve;
    j["hyperbolic_asserted"] = r.hyperbolic_asserted;
    j["eps_orbit"] = r.eps_orbit;
    Json f = Json::array();
    for (auto& x : r.findings) {
        Json e;
        e["level"] = x.level;
        e["partition"] = x.partition.to_string(P);
        e["dynamics"] = dyn_status_name(x.status);
        e["curve"] = x.curve;
        if (x.ok) e["verdict"] = x.verdict.label();
        else e["error"] = x.error;
        f.push_back(e);
    }
    j["findings"] = f;
    Json o = Json::array();
    for (auto& x : r.or_evidence) {
        Json e;
        e["level"] = x.level;
        e["curve"] = x.curve;
        e["doubled"] = x.doubled;
        e["reverified"] = x.reverified;
        o.push_back(e);
    }
    j["or_evidence"] = o;
    return j;
}

Json closure_to_json(const ClosureResult& c, bool list_elements) {
    Json j;
    Json g = Json::array();
    for (auto& f : c.generators) g.push_back(f.to_string());
    j["generators"] = g;
    j["size"] = c.size();
    j["closed"] = c.closed;
    if (list_elements) {
        Json e = Json::array();
        for (auto& f : c.closure) e.push_back(f.to_string());
        j["elements"] = e;
    }
    return j;
}

}  // namespace unmate
