#include "unmate/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unmate {

cplx CurvePiece::start() const { return at(0.0); }
cplx CurvePiece::end() const { return at(1.0); }

cplx CurvePiece::at(double s) const {
    if (kind == Kind::Segment) return from + s * (to - from);
    double t = t0 + s * (t1 - t0);
    return center + std::polar(radius, 2.0 * M_PI * t);
}

double CurvePiece::length() const {
    if (kind == Kind::Segment) return std::abs(to - from);
    return 2.0 * M_PI * radius * std::abs(t1 - t0);
}

CurvePiece CurvePiece::reversed() const {
    CurvePiece p = *this;
    std::swap(p.t0, p.t1);
    std::swap(p.from, p.to);
    return p;
}

CurvePiece CurvePiece::arc(cplx center, double radius, double t0, double t1) {
    CurvePiece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.t0 = t0;
    p.t1 = t1;
    return p;
}

CurvePiece CurvePiece::segment(cplx from, cplx to) {
    CurvePiece p;
    p.kind = Kind::Segment;
    p.from = from;
    p.to = to;
    return p;
}

CurveSpec CurveSpec::circle(cplx center, double radius) {
    CurveSpec s;
    s.kind = Kind::Circle;
    s.center = center;
    s.radius = radius;
    return s;
}

CurveSpec CurveSpec::chain(std::vector<CurvePiece> pieces) {
    CurveSpec s;
    s.kind = Kind::Chain;
    s.pieces = std::move(pieces);
    return s;
}

JordanCurve JordanCurve::reversed() const {
    JordanCurve r = *this;
    // keep sample 0 first so anchors stay meaningful
    std::reverse(r.samples.begin() + 1, r.samples.end());
    std::reverse(r.params.begin() + 1, r.params.end());
    std::reverse(r.anchors.begin() + 1, r.anchors.end());
    for (size_t i = 1; i < r.params.size(); ++i) r.params[i] = 1.0 - r.params[i];
    r.spec.reset();
    return r;
}

size_t MultiCurve::total_samples() const {
    size_t n = 0;
    for (auto& c : components) n += c.size();
    return n;
}

JordanCurve sample_parametric(const CurveSpec& spec, int resolution) {
    if (resolution < 64) throw Error(ErrorKind::Precondition, "resolution must be at least 64");
    std::vector<CurvePiece> pieces = spec.pieces;
    if (spec.kind == CurveSpec::Kind::Circle) {
        if (!(spec.radius > 0)) throw Error(ErrorKind::Precondition, "circle radius must be positive");
        pieces = {CurvePiece::arc(spec.center, spec.radius, 0.0, 1.0)};
    }
    if (pieces.empty()) throw Error(ErrorKind::Precondition, "empty curve specification");
    for (size_t i = 0; i < pieces.size(); ++i) {
        cplx e = pieces[i].end(), s = pieces[(i + 1) % pieces.size()].start();
        if (std::abs(e - s) > 1e-9)
            throw Error(ErrorKind::Precondition, "arc-chain endpoints do not match at piece " + std::to_string(i));
    }
    double total = 0;
    for (auto& p : pieces) total += p.length();
    JordanCurve c;
    c.spec = spec;
    double acc = 0;
    for (auto& p : pieces) {
        double len = p.length();
        int n = std::max(8, static_cast<int>(std::lround(resolution * len / total)));
        for (int k = 0; k < n; ++k) {
            double s = static_cast<double>(k) / n;
            c.samples.push_back(SpherePoint::finite(p.at(s)));
            c.params.push_back((acc + s * len) / total);
            c.anchors.push_back(c.samples.size() == 1 ? 1 : 0);
        }
        acc += len;
    }
    validate_jordan(c);
    return c;
}

JordanCurve curve_from_samples(const std::vector<cplx>& pts, const std::string& name) {
    JordanCurve c;
    c.name = name;
    for (size_t i = 0; i < pts.size(); ++i) {
        c.samples.push_back(SpherePoint::finite(pts[i]));
        c.params.push_back(static_cast<double>(i) / pts.size());
        c.anchors.push_back(i == 0 ? 1 : 0);
    }
    return c;
}

MoebiusTransform planar_chart(const std::vector<SpherePoint>& samples) {
    auto score = [&](const SpherePoint& q) {
        double m = INFINITY;
        for (auto& s : samples) m = std::min(m, chordal_distance(s, q));
        return m;
    };
    double best = score(SpherePoint::infinity());
    if (best > 0.2) return MoebiusTransform::identity();
    SpherePoint bq = SpherePoint::infinity();
    // Fibonacci points on the sphere
    const int N = 200;
    for (int i = 0; i < N; ++i) {
        double h = -1.0 + (2.0 * i + 1.0) / N;
        double r = std::sqrt(1.0 - h * h), phi = i * M_PI * (3.0 - std::sqrt(5.0));
        SpherePoint q = SpherePoint::from_unit_vector({r * std::cos(phi), r * std::sin(phi), h});
        double s = score(q);
        if (s > best) {
            best = s;
            bq = q;
        }
    }
    return MoebiusTransform::send_to_infinity(bq);
}

std::vector<cplx> chart_coordinates(const JordanCurve& c, const MoebiusTransform& chart) {
    std::vector<cplx> out;
    out.reserve(c.size());
    for (auto& s : c.samples) {
        SpherePoint q = moebius_apply(chart, s);
        if (std::abs(q.den()) < 1e-12) throw Error(ErrorKind::ChartDegenerate, "chart sends a curve point to infinity");
        out.push_back(q.value());
    }
    return out;
}

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

int orient(cplx a, cplx b, cplx c) {
    double v = cross(b - a, c - a);
    double scale = std::abs(b - a) * std::abs(c - a);
    if (std::abs(v) <= 1e-14 * scale) return 0;
    return v > 0 ? 1 : -1;
}

bool on_segment(cplx a, cplx b, cplx p) {
    return std::min(a.real(), b.real()) - 1e-15 <= p.real() && p.real() <= std::max(a.real(), b.real()) + 1e-15 &&
           std::min(a.imag(), b.imag()) - 1e-15 <= p.imag() && p.imag() <= std::max(a.imag(), b.imag()) + 1e-15;
}

bool segments_meet(cplx a, cplx b, cplx c, cplx d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

double point_segment_distance(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double l2 = std::norm(ab);
    double t = l2 > 0 ? std::clamp(((p - a) * std::conj(ab)).real() / l2, 0.0, 1.0) : 0.0;
    return std::abs(p - (a + t * ab));
}

}  // namespace

bool has_self_intersection(const JordanCurve& c) {
    auto pts = chart_coordinates(c, planar_chart(c.samples));
    const size_t n = pts.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto minx = [&](size_t i) { return std::min(pts[i].real(), pts[(i + 1) % n].real()); };
    auto maxx = [&](size_t i) { return std::max(pts[i].real(), pts[(i + 1) % n].real()); };
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return minx(a) < minx(b); });
    for (size_t u = 0; u < n; ++u) {
        size_t i = order[u];
        double mx = maxx(i);
        for (size_t v = u + 1; v < n && minx(order[v]) <= mx; ++v) {
            size_t j = order[v];
            if (j == (i + 1) % n || i == (j + 1) % n) continue;
            if (segments_meet(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return true;
        }
    }
    return false;
}

void validate_jordan(const JordanCurve& c) {
    if (c.size() < 64) throw Error(ErrorKind::Precondition, "a curve needs at least 64 samples");
    for (size_t i = 0; i < c.size(); ++i)
        if (chordal_distance(c.samples[i], c.samples[(i + 1) % c.size()]) >= 0.1)
            throw Error(ErrorKind::GapTooLarge, "consecutive samples " + std::to_string(i) + " are too far apart");
    if (has_self_intersection(c)) throw Error(ErrorKind::SelfIntersecting, "curve crosses itself");
}

double min_distance(const JordanCurve& c, const SpherePoint& p) {
    double m = INFINITY;
    for (auto& s : c.samples) m = std::min(m, chordal_distance(s, p));
    return m;
}

double min_distance(const JordanCurve& c, const std::vector<SpherePoint>& pts) {
    double m = INFINITY;
    for (auto& p : pts) m = std::min(m, min_distance(c, p));
    return m;
}

// ---- lifting

namespace {

SpherePoint midpoint(const SpherePoint& a, const SpherePoint& b) {
    if (!a.is_infinity() && !b.is_infinity() && std::abs(a.value()) < 1e3 && std::abs(b.value()) < 1e3)
        return SpherePoint::finite(0.5 * (a.value() + b.value()));
    return sphere_midpoint(a, b);
}

struct Tracker {
    const RationalMap& r;
    const ToleranceConfig& tol;
    std::vector<std::vector<SpherePoint>> pts;
    std::vector<std::vector<double>> prm;
    std::vector<std::vector<char>> anc;
    std::vector<SpherePoint> cur;
    int refinements = 0;

    bool try_match(const std::vector<SpherePoint>& next, std::vector<SpherePoint>& out) const {
        const size_t d = cur.size();
        double sep = INFINITY;
        for (size_t a = 0; a < d; ++a)
            for (size_t b = a + 1; b < d; ++b) sep = std::min(sep, chordal_distance(next[a], next[b]));
        std::vector<char> used(d, 0);
        out.resize(d);
        for (size_t j = 0; j < d; ++j) {
            double b1 = INFINITY, b2 = INFINITY;
            int bi = -1;
            for (size_t k = 0; k < d; ++k) {
                double dd = chordal_distance(cur[j], next[k]);
                if (dd < b1) {
                    b2 = b1;
                    b1 = dd;
                    bi = static_cast<int>(k);
                } else if (dd < b2) {
                    b2 = dd;
                }
            }
            if (used[bi]) return false;
            if (d > 1 && !(b2 >= 3.0 * b1)) return false;
            if (d > 1 && b1 > 0.3 * sep) return false;
            if (b1 >= 0.1) return false;
            used[bi] = 1;
            out[j] = next[bi];
        }
        return true;
    }

    void push(const std::vector<SpherePoint>& f, double p, bool anchor) {
        for (size_t j = 0; j < f.size(); ++j) {
            pts[j].push_back(f[j]);
            prm[j].push_back(p);
            anc[j].push_back(anchor ? 1 : 0);
        }
    }

    void step(const SpherePoint& a, const SpherePoint& b, double pa, double pb, int depth) {
        auto next = fiber(r, b, tol);
        std::vector<SpherePoint> matched;
        if (try_match(next, matched)) {
            cur = matched;
            return;
        }
        if (depth >= tol.max_refine_depth)
            throw Error(ErrorKind::NearCriticalValue, "branch matching stayed ambiguous after refinement");
        ++refinements;
        SpherePoint m = midpoint(a, b);
        double pm = 0.5 * (pa + pb);
        step(a, m, pa, pm, depth + 1);
        push(cur, pm - std::floor(pm), false);
        step(m, b, pm, pb, depth + 1);
    }
};

struct SingleLift {
    std::vector<JordanCurve> comps;
    std::vector<int> degrees;
    int refinements = 0;
};

SingleLift lift_single(const RationalMap& r, const JordanCurve& src, const ToleranceConfig& tol) {
    const size_t n = src.size();
    const int d = r.degree();
    Tracker t{r, tol, {}, {}, {}, {}, 0};
    t.pts.resize(d);
    t.prm.resize(d);
    t.anc.resize(d);
    auto f0 = fiber(r, src.samples[0], tol);
    t.cur = f0;
    for (size_t i = 0; i < n; ++i) {
        double pa = src.params[i];
        double pb = i + 1 < n ? src.params[i + 1] : src.params[0];
        if (pb <= pa) pb += 1.0;
        t.push(t.cur, pa, src.anchors[i]);
        t.step(src.samples[i], src.samples[(i + 1) % n], pa, pb, 0);
    }
    // close the loop: which starting branch did each track arrive at
    std::vector<int> sigma(d, -1);
    std::vector<char> used(d, 0);
    for (int j = 0; j < d; ++j) {
        double b1 = INFINITY;
        int bi = -1;
        for (int k = 0; k < d; ++k) {
            double dd = chordal_distance(t.cur[j], f0[k]);
            if (dd < b1) {
                b1 = dd;
                bi = k;
            }
        }
        if (bi < 0 || used[bi] || b1 > 1e-6)
            throw Error(ErrorKind::NearCriticalValue, "lifted branches do not close up");
        used[bi] = 1;
        sigma[j] = bi;
    }
    SingleLift out;
    out.refinements = t.refinements;
    std::vector<char> seen(d, 0);
    for (int j = 0; j < d; ++j) {
        if (seen[j]) continue;
        JordanCurve c;
        int k = j, len = 0;
        while (!seen[k]) {
            seen[k] = 1;
            ++len;
            c.samples.insert(c.samples.end(), t.pts[k].begin(), t.pts[k].end());
            c.params.insert(c.params.end(), t.prm[k].begin(), t.prm[k].end());
            c.anchors.insert(c.anchors.end(), t.anc[k].begin(), t.anc[k].end());
            k = sigma[k];
        }
        out.comps.push_back(std::move(c));
        out.degrees.push_back(len);
    }
    return out;
}

std::vector<int> anchor_permutation(const MultiCurve& m) {
    std::vector<int> perm;
    for (auto& c : m.components) {
        int base = static_cast<int>(perm.size());
        int cnt = 0;
        for (auto a : c.anchors) cnt += a ? 1 : 0;
        for (int i = 0; i < cnt; ++i) perm.push_back(base + (i + 1) % cnt);
    }
    return perm;
}

void check_clearance(const JordanCurve& curve, const std::vector<SpherePoint>& pc, const ToleranceConfig& tol) {
    if (!pc.empty() && min_distance(curve, pc) <= tol.eps_curve)
        throw Error(ErrorKind::CurveHitsPostcritical, "curve passes within eps_curve of a postcritical point");
}

}  // namespace

LiftResult lift_multi(const RationalMap& r, const MultiCurve& m, const std::vector<int>& degrees,
                      const ToleranceConfig& tol) {
    LiftResult res;
    res.curves.map_id = m.map_id;
    res.curves.level = m.level + 1;
    res.curves.source_id = m.source_id;
    for (size_t i = 0; i < m.components.size(); ++i) {
        auto s = lift_single(r, m.components[i], tol);
        res.refinements += s.refinements;
        for (size_t k = 0; k < s.comps.size(); ++k) {
            s.comps[k].name = m.source_id + "@" + std::to_string(m.level + 1);
            res.curves.components.push_back(std::move(s.comps[k]));
            res.covering_degrees.push_back(s.degrees[k] * (i < degrees.size() ? degrees[i] : 1));
        }
    }
    res.branch_permutation = anchor_permutation(res.curves);
    return res;
}

LiftResult lift(const RationalMap& r, const JordanCurve& curve, const ToleranceConfig& tol,
                const std::vector<SpherePoint>& postcritical) {
    return lift(IterateSpec{r, 1}, curve, tol, postcritical);
}

LiftResult lift(const IterateSpec& r, const JordanCurve& curve, const ToleranceConfig& tol,
                const std::vector<SpherePoint>& postcritical) {
    if (r.power < 1) throw Error(ErrorKind::Precondition, "lift power must be >= 1");
    check_clearance(curve, postcritical, tol);
    MultiCurve m;
    m.components = {curve};
    m.level = 0;
    m.source_id = curve.name;
    std::vector<int> deg{1};
    LiftResult res;
    int refinements = 0;
    for (int i = 0; i < r.power; ++i) {
        res = lift_multi(r.base, m, deg, tol);
        refinements += res.refinements;
        m = res.curves;
        deg = res.covering_degrees;
    }
    res.refinements = refinements;
    return res;
}

int winding_number(const JordanCurve& curve, const SpherePoint& p, const MoebiusTransform& chart) {
    SpherePoint q = moebius_apply(chart, p);
    if (q.is_infinity()) throw Error(ErrorKind::ChartDegenerate, "chart sends the point to infinity");
    auto pts = chart_coordinates(curve, chart);
    cplx z = q.value();
    const size_t n = pts.size();
    double total = 0, scale = 0;
    for (auto& w : pts) scale = std::max(scale, std::abs(w - z));
    for (size_t i = 0; i < n; ++i) {
        cplx a = pts[i] - z, b = pts[(i + 1) % n] - z;
        if (point_segment_distance(z, pts[i], pts[(i + 1) % n]) < 1e-9 * std::max(1.0, scale))
            throw Error(ErrorKind::PointOnCurve, "point lies on the curve");
        total += std::arg(b / a);
    }
    double w = total / (2.0 * M_PI);
    long r = std::lround(w);
    if (std::abs(w - r) > 0.05) throw Error(ErrorKind::PointOnCurve, "winding number did not round cleanly");
    return static_cast<int>(r);
}

SideAssignment side_partition(const JordanCurve& curve, const PostcriticalSet& points, const MoebiusTransform& chart) {
    SideAssignment s;
    s.chart = chart;
    for (size_t i = 0; i < points.size(); ++i) {
        SpherePoint q = moebius_apply(chart, points.points[i]);
        int w = 0;
        if (!q.is_infinity()) w = winding_number(curve, points.points[i], chart);
        s.winding.push_back(w);
        if (w != 0) s.inside.push_back(static_cast<int>(i));
        else s.outside.push_back(static_cast<int>(i));
    }
    return s;
}

MoebiusTransform default_chart(const JordanCurve& curve, const PostcriticalSet& points) {
    int best = -1;
    double bd = -1;
    for (size_t i = 0; i < points.size(); ++i) {
        double d = min_distance(curve, points.points[i]);
        if (d > bd + 1e-12) {
            bd = d;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) return MoebiusTransform::identity();
    return MoebiusTransform::send_to_infinity(points.points[best]);
}

}  // namespace unmate
