#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unmate/rational_map.hpp"

namespace unmate {

// center + radius e^{2 pi i t}, t from t0 to t1; or a straight segment
struct CurvePiece {
    enum class Kind { Arc, Segment } kind = Kind::Arc;
    cplx center = 0.0;
    double radius = 1.0;
    double t0 = 0.0, t1 = 1.0;
    cplx from = 0.0, to = 0.0;

    cplx start() const;
    cplx end() const;
    cplx at(double s) const;  // s in [0, 1]
    double length() const;
    CurvePiece reversed() const;
    static CurvePiece arc(cplx center, double radius, double t0, double t1);
    static CurvePiece segment(cplx from, cplx to);
};

struct CurveSpec {
    enum class Kind { Circle, Chain } kind = Kind::Circle;
    cplx center = 0.0;
    double radius = 1.0;
    std::vector<CurvePiece> pieces;

    static CurveSpec circle(cplx center, double radius);
    static CurveSpec chain(std::vector<CurvePiece> pieces);
};

struct JordanCurve {
    std::vector<SpherePoint> samples;
    // source parameter in [0,1) of each sample
    std::vector<double> params;
    // sample lies over the start point of the original source curve
    std::vector<char> anchors;
    std::optional<CurveSpec> spec;
    std::string name;

    size_t size() const { return samples.size(); }
    JordanCurve reversed() const;
};

struct MultiCurve {
    std::vector<JordanCurve> components;
    std::string map_id;
    int level = 0;
    std::string source_id;

    size_t total_samples() const;
};

struct LiftResult {
    MultiCurve curves;
    std::vector<int> branch_permutation;
    std::vector<int> covering_degrees;
    int refinements = 0;
};

struct SideAssignment {
    std::vector<int> inside;
    std::vector<int> outside;
    std::vector<int> winding;
    MoebiusTransform chart;
};

JordanCurve sample_parametric(const CurveSpec& spec, int resolution);
// throws GapTooLarge or SelfIntersecting
void validate_jordan(const JordanCurve& c);
bool has_self_intersection(const JordanCurve& c);
JordanCurve curve_from_samples(const std::vector<cplx>& pts, const std::string& name = "");

// a chart sending a point far from every sample to infinity
MoebiusTransform planar_chart(const std::vector<SpherePoint>& samples);
std::vector<cplx> chart_coordinates(const JordanCurve& c, const MoebiusTransform& chart);

double min_distance(const JordanCurve& c, const SpherePoint& p);
double min_distance(const JordanCurve& c, const std::vector<SpherePoint>& pts);

LiftResult lift(const RationalMap& r, const JordanCurve& curve, const ToleranceConfig& tol = {},
                const std::vector<SpherePoint>& postcritical = {});
LiftResult lift(const IterateSpec& r, const JordanCurve& curve, const ToleranceConfig& tol = {},
                const std::vector<SpherePoint>& postcritical = {});
// one more preimage of every component
LiftResult lift_multi(const RationalMap& r, const MultiCurve& m, const std::vector<int>& degrees,
                      const ToleranceConfig& tol = {});

int winding_number(const JordanCurve& curve, const SpherePoint& p, const MoebiusTransform& chart = {});
SideAssignment side_partition(const JordanCurve& curve, const PostcriticalSet& points, const MoebiusTransform& chart);
// chart sending the postcritical point farthest from the curve to infinity
MoebiusTransform default_chart(const JordanCurve& curve, const PostcriticalSet& points);

}  // namespace unmate
