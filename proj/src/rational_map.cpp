#include "unmate/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace unmate {

RationalMap::RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::InvalidMap, "zero denominator");
    if (num_.is_zero()) throw Error(ErrorKind::InvalidMap, "zero numerator");
    degree_ = std::max(num_.degree(), den_.degree());
    if (degree_ < 1) throw Error(ErrorKind::InvalidMap, "constant map");
}

RationalMap RationalMap::from_moebius(const MoebiusTransform& m) {
    return RationalMap(Polynomial({m.b(), m.a()}), Polynomial({m.d(), m.c()}));
}

SpherePoint RationalMap::operator()(const SpherePoint& p) const {
    cplx P = num_.homogeneous(p.num(), p.den(), degree_);
    cplx Q = den_.homogeneous(p.num(), p.den(), degree_);
    double s = std::max(num_.scale(), den_.scale());
    if (std::abs(P) < 1e-14 * s && std::abs(Q) < 1e-14 * s)
        throw Error(ErrorKind::IndeterminatePoint, "numerator and denominator vanish together");
    return SpherePoint(P, Q);
}

double RationalMap::common_root_gap(const ToleranceConfig& tol) const {
    if (num_.degree() < 1 || den_.degree() < 1) return INFINITY;
    auto a = poly_roots(num_, tol);
    auto b = poly_roots(den_, tol);
    double g = INFINITY;
    for (auto x : a)
        for (auto y : b) g = std::min(g, chordal_distance(x, y));
    return g;
}

void RationalMap::validate(const ToleranceConfig& tol) const {
    if (common_root_gap(tol) <= 1e-9) throw Error(ErrorKind::InvalidMap, "numerator and denominator share a root");
}

int IterateSpec::degree() const {
    int d = 1;
    for (int i = 0; i < power; ++i) d *= base.degree();
    return d;
}

SpherePoint evaluate(const RationalMap& r, const SpherePoint& p) { return r(p); }

SpherePoint evaluate(const IterateSpec& r, const SpherePoint& p) {
    SpherePoint x = p;
    for (int i = 0; i < r.power; ++i) x = r.base(x);
    return x;
}

std::vector<SpherePoint> critical_points(const RationalMap& r, const ToleranceConfig& tol) {
    if (r.degree() < 2) throw Error(ErrorKind::Precondition, "critical points need degree >= 2");
    Polynomial w = r.num().derivative() * r.den() - r.num() * r.den().derivative();
    std::vector<SpherePoint> out;
    int finite = 0;
    if (w.degree() >= 1) {
        for (auto z : poly_roots(w, tol)) out.push_back(SpherePoint::finite(z));
        finite = w.degree();
    }
    for (int i = finite; i < 2 * r.degree() - 2; ++i) out.push_back(SpherePoint::infinity());
    return out;
}

std::vector<SpherePoint> fiber(const RationalMap& r, const SpherePoint& q, const ToleranceConfig& tol) {
    const int d = r.degree();
    std::vector<cplx> c(d + 1);
    for (int i = 0; i <= d; ++i) c[i] = q.den() * r.num().coeff(i) - q.num() * r.den().coeff(i);
    std::vector<SpherePoint> out;
    out.reserve(d);
    if (std::abs(c[d]) >= std::abs(c[0])) {
        int top = d;
        while (top > 0 && c[top] == cplx(0.0)) --top;
        if (top == 0) throw Error(ErrorKind::IndeterminatePoint, "fiber of a constant");
        std::vector<cplx> cc(c.begin(), c.begin() + top + 1);
        for (auto z : poly_roots(cc, tol)) out.push_back(SpherePoint::finite(z));
        for (int i = top; i < d; ++i) out.push_back(SpherePoint::infinity());
    } else {
        // solve in w = 1/z: sum c_i w^(d-i)
        std::vector<cplx> rc(c.rbegin(), c.rend());
        int top = d;
        while (top > 0 && rc[top] == cplx(0.0)) --top;
        std::vector<cplx> cc(rc.begin(), rc.begin() + top + 1);
        for (auto w : poly_roots(cc, tol)) out.push_back(SpherePoint(1.0, w));
        for (int i = top; i < d; ++i) out.push_back(SpherePoint::finite(0.0));
    }
    return out;
}

std::vector<SpherePoint> fiber(const IterateSpec& r, const SpherePoint& q, const ToleranceConfig& tol) {
    std::vector<SpherePoint> cur{q};
    for (int i = 0; i < r.power; ++i) {
        std::vector<SpherePoint> next;
        for (auto& p : cur) {
            auto f = fiber(r.base, p, tol);
            next.insert(next.end(), f.begin(), f.end());
        }
        cur.swap(next);
    }
    return cur;
}

int PostcriticalSet::find(const SpherePoint& p, double eps) const {
    int best = -1;
    double bd = eps;
    for (size_t i = 0; i < points.size(); ++i) {
        double d = chordal_distance(points[i], p);
        if (d <= bd) {
            bd = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

FunctionalGraph FunctionalGraph::power(int n) const {
    FunctionalGraph g;
    g.successor.resize(successor.size());
    for (size_t i = 0; i < successor.size(); ++i) {
        int x = static_cast<int>(i);
        for (int k = 0; k < n; ++k) x = successor[x];
        g.successor[i] = x;
    }
    return g;
}

std::string format_point(const SpherePoint& p, int digits) {
    if (p.is_infinity()) return "inf";
    cplx z = p.value();
    char buf[96];
    double re = std::abs(z.real()) < 0.5 * std::pow(10.0, -digits) ? 0.0 : z.real();
    double im = std::abs(z.imag()) < 0.5 * std::pow(10.0, -digits) ? 0.0 : z.imag();
    if (im == 0.0) std::snprintf(buf, sizeof buf, "%.*g", digits, re);
    else std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, re, digits, im);
    return buf;
}

namespace {

// round-off leaves poles as huge finite values; pin them to the exact point
SpherePoint snap(const SpherePoint& p) {
    if (std::abs(p.den()) < 1e-13) return SpherePoint::infinity();
    if (std::abs(p.num()) < 1e-13) return SpherePoint::finite(0.0);
    return p;
}

}  // namespace

PostcriticalResult postcritical_set(const RationalMap& r, const ToleranceConfig& tol) {
    PostcriticalResult res;
    res.critical = critical_points(r, tol);
    auto& P = res.set;
    std::vector<int> succ;
    for (auto& c : res.critical) {
        SpherePoint cur = snap(r(c));
        int prev = -1;
        int steps = 0;
        while (true) {
            int idx = P.find(cur, tol.eps_orbit);
            bool fresh = idx < 0;
            if (fresh) {
                P.points.push_back(cur);
                succ.push_back(-1);
                idx = static_cast<int>(P.points.size()) - 1;
            }
            if (prev >= 0) succ[prev] = idx;
            if (!fresh) break;
            if (++steps > tol.max_iter)
                throw Error(ErrorKind::OrbitBudgetExceeded, "critical orbit did not close within budget");
            prev = idx;
            cur = snap(r(cur));
        }
    }
    // second confirmation: images and second images land on the recorded successors
    for (size_t i = 0; i < P.points.size(); ++i) {
        SpherePoint img = r(P.points[i]);
        if (chordal_distance(img, P.points[succ[i]]) > tol.eps_orbit)
            throw Error(ErrorKind::OrbitBudgetExceeded, "orbit closure not confirmed");
        SpherePoint img2 = r(img);
        if (chordal_distance(img2, P.points[succ[succ[i]]]) > tol.eps_orbit)
            throw Error(ErrorKind::OrbitBudgetExceeded, "orbit closure not confirmed");
    }
    P.finite = true;
    for (auto& p : P.points) P.labels.push_back(format_point(p));
    res.graph.successor = succ;
    return res;
}

namespace {

Polynomial poly_pow(const Polynomial& p, int k) {
    Polynomial r({1.0});
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

}  // namespace

RationalMap compose(const RationalMap& r1, const RationalMap& r2, const ToleranceConfig& tol) {
    const int d1 = r1.degree(), d2 = r2.degree();
    if (d1 * d2 > 64) throw Error(ErrorKind::DegreeBudgetExceeded, "composition degree above 64");
    Polynomial N, D;
    for (int i = 0; i <= d1; ++i) {
        Polynomial t = poly_pow(r2.num(), i) * poly_pow(r2.den(), d1 - i);
        N = N + t * r1.num().coeff(i);
        D = D + t * r1.den().coeff(i);
    }
    if (N.degree() < 1 || D.degree() < 1) return RationalMap(N, D);
    // cancel numerically shared roots
    auto a = poly_roots(N, tol);
    auto b = poly_roots(D, tol);
    double s = 1e-7;
    std::vector<bool> ua(a.size(), false), ub(b.size(), false);
    bool any = false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (!ua[i] && !ub[j] && chordal_distance(a[i], b[j]) < s) {
                ua[i] = ub[j] = true;
                any = true;
            }
    if (!any) return RationalMap(N, D);
    std::vector<cplx> ra, rb;
    for (size_t i = 0; i < a.size(); ++i)
        if (!ua[i]) ra.push_back(a[i]);
    for (size_t j = 0; j < b.size(); ++j)
        if (!ub[j]) rb.push_back(b[j]);
    return RationalMap(Polynomial::from_roots(ra, N.leading()), Polynomial::from_roots(rb, D.leading()));
}

}  // namespace unmate
