#include "unmate/families.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <map>
#include <sstream>

namespace unmate {

namespace {

cplx cpow(cplx z, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

BicriticalParams normalized(cplx a, cplx b, cplx c, cplx d, int k) {
    cplx s = 1.0 / std::sqrt(a * d - b * c);
    return {a * s, b * s, c * s, d * s, k};
}

}  // namespace

void BicriticalParams::validate() const {
    if (k < 2) throw Error(ErrorKind::Precondition, "bicritical exponent must be >= 2");
    if (std::abs(a * d - b * c - 1.0) > 1e-10) throw Error(ErrorKind::Precondition, "ad - bc must equal 1");
}

RationalMap bicritical_map(const BicriticalParams& p) {
    p.validate();
    std::vector<cplx> n(p.k + 1, 0.0), d(p.k + 1, 0.0);
    n[0] = p.b;
    n[p.k] = p.a;
    d[0] = p.d;
    d[p.k] = p.c;
    return RationalMap(Polynomial(n), Polynomial(d));
}

OmegaMembership omega_membership(const BicriticalParams& p) {
    const int k = p.k;
    double m = std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c), std::abs(p.d)});
    double t1 = 1e-9 * std::pow(m, k + 1), t2 = 1e-9 * std::pow(m, k);
    OmegaMembership o;
    o.in_omega1 = std::abs(p.c * cpow(p.b, k) + cpow(p.d, k + 1)) <= t1;
    o.in_omega2 = std::abs(cpow(p.a, k + 1) + p.b * cpow(p.c, k)) <= t1;
    o.in_omega3 = std::abs(p.a * cpow(p.b, k - 1) + cpow(p.d, k)) <= t2;
    o.in_omega4 = std::abs(cpow(p.a, k) + p.d * cpow(p.c, k - 1)) <= t2;
    o.plus_simplified = o.in_omega1 && o.in_omega2;
    o.minus_simplified = o.in_omega3 && o.in_omega4;
    o.in_omega_plus = o.plus_simplified && !(o.in_omega3 || o.in_omega4);
    o.in_omega_minus = o.minus_simplified && !(o.in_omega1 || o.in_omega2);
    return o;
}

cplx beta3() { return std::polar(1.0, 2.0 * M_PI / 3.0); }

BicriticalParams omega_plus_2() {
    cplx s = 1.0 / std::sqrt(beta3() - 1.0);
    return {s, -s, -s, beta3() * s, 2};
}

BicriticalParams omega_plus_3() {
    double s = 1.0 / std::sqrt(2.0);
    return {s, -s, s, s, 3};
}

BicriticalParams omega_minus_3() {
    double s = 1.0 / std::sqrt(2.0);
    cplx i(0.0, 1.0);
    return {-s, i * s, i * s, -s, 3};
}

BicriticalParams omega_minus_4() {
    cplx s = 1.0 / std::sqrt(beta3() - 1.0);
    return {s, -beta3() * s, s, -s, 4};
}

BicriticalParams omega_minus_2(cplx b) { return {0.0, b, -1.0 / b, 0.0, 2}; }

BicriticalParams omega_plus_sample(int k, int j) {
    if (k < 2 || j < 1 || j > k) throw Error(ErrorKind::Precondition, "omega_plus_sample needs k >= 2, 1 <= j <= k");
    cplx zeta = std::polar(1.0, 2.0 * M_PI * j / (k + 1));
    return normalized(1.0, -1.0, 1.0, -zeta, k);
}

BicriticalParams omega_minus_sample(int k) {
    if (k < 3) throw Error(ErrorKind::Precondition, "omega_minus_sample needs k >= 3");
    for (int m = 0; m < k - 1; ++m) {
        cplx b = std::polar(1.0, M_PI * ((k + 1) + 2.0 * m) / (k - 1));
        if (std::abs(b + 1.0) > 1e-6) return normalized(1.0, b, 1.0, -1.0, k);
    }
    throw Error(ErrorKind::Precondition, "no admissible parameter");
}

// ---- exact integer polynomials

IntPoly::IntPoly(std::vector<BigInt> c) : c_(std::move(c)) { trim(); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (auto& c : c_) g = boost::multiprecision::gcd(g, c);
    return g;
}

IntPoly IntPoly::primitive() const {
    if (c_.empty()) return *this;
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> r = c_;
    for (auto& c : r) c /= g;
    return IntPoly(r);
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<BigInt> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<int>(i);
    return IntPoly(r);
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(r);
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + o * BigInt(-1); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c_.empty() || o.c_.empty()) return IntPoly();
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(r);
}

IntPoly IntPoly::operator*(const BigInt& s) const {
    std::vector<BigInt> r = c_;
    for (auto& c : r) c *= s;
    return IntPoly(r);
}

cplx IntPoly::eval(cplx a) const {
    cplx s = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * a + static_cast<double>(*it);
    return s;
}

std::vector<cplx> IntPoly::to_complex() const {
    std::vector<cplx> r;
    for (auto& c : c_) r.emplace_back(static_cast<double>(c), 0.0);
    return r;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        BigInt c = c_[i];
        if (c == 0) continue;
        bool neg = c < 0;
        BigInt m = neg ? BigInt(-c) : c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (m != 1 || i == 0) os << m;
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

namespace {

// pseudo-remainder of a by b
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    const int db = b.degree();
    BigInt lb = b.coeffs().back();
    while (!a.is_zero() && a.degree() >= db) {
        int shift = a.degree() - db;
        BigInt la = a.coeffs().back();
        std::vector<BigInt> t(shift + 1, 0);
        t[shift] = la;
        a = a * lb - b * IntPoly(t);
    }
    return a;
}

}  // namespace

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::Precondition, "division by zero polynomial");
    std::vector<BigInt> rem = a.coeffs();
    const int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) {
        if (a.is_zero()) return IntPoly();
        throw Error(ErrorKind::Precondition, "inexact polynomial division");
    }
    std::vector<BigInt> q(dq + 1, 0);
    BigInt lb = b.coeffs().back();
    for (int i = dq; i >= 0; --i) {
        BigInt num = rem[i + db];
        if (num % lb != 0) throw Error(ErrorKind::Precondition, "inexact polynomial division");
        q[i] = num / lb;
        for (int j = 0; j <= db; ++j) rem[i + j] -= q[i] * b.coeffs()[j];
    }
    for (auto& r : rem)
        if (r != 0) throw Error(ErrorKind::Precondition, "inexact polynomial division");
    return IntPoly(q);
}

IntPoly poly_gcd(const IntPoly& a0, const IntPoly& b0) {
    IntPoly a = a0.primitive(), b = b0.primitive();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    BigInt g = boost::multiprecision::gcd(a0.content(), b0.content());
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b);
        a = b;
        b = r.is_zero() ? r : r.primitive();
    }
    return a.primitive() * g;
}

cplx RationalInParam::eval(cplx a) const { return num_a.eval(a) / den_a.eval(a); }

RationalInParam capture_value_symbolic(int j) {
    if (j < 1 || j > 8) throw Error(ErrorKind::Precondition, "capture_value_symbolic needs 1 <= j <= 8");
    IntPoly A({0, 1});
    RationalInParam v{IntPoly({0, -1}), IntPoly({1})};
    for (int s = 1; s < j; ++s) {
        IntPoly n = A * v.den_a * v.den_a;
        IntPoly d = v.num_a * (v.num_a + v.den_a * BigInt(2));
        IntPoly g = poly_gcd(n, d);
        if (g.degree() > 0 || g.coeffs()[0] != 1) {
            n = exact_div(n, g);
            d = exact_div(d, g);
        }
        if (d.coeffs().back() < 0) {
            n = n * BigInt(-1);
            d = d * BigInt(-1);
        }
        v = {n, d};
    }
    return v;
}

IntPoly capture_equation(int k) {
    if (k < 2 || k > 8) throw Error(ErrorKind::Precondition, "capture generation must be in 2..8");
    RationalInParam v = capture_value_symbolic(k - 1);
    IntPoly e = (v.num_a + v.den_a * BigInt(2)).primitive();
    // drop repeated factors and the degenerate parameter a = 0
    IntPoly g = poly_gcd(e, e.derivative());
    if (g.degree() > 0) e = exact_div(e, g).primitive();
    while (e.degree() > 0 && e.coeffs()[0] == 0) e = exact_div(e, IntPoly({0, 1}));
    return e;
}

namespace {

using mp_complex = boost::multiprecision::cpp_complex_50;

mp_complex eval_mp(const IntPoly& p, const mp_complex& a) {
    mp_complex s = 0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        s = s * a + mp_complex(boost::multiprecision::cpp_bin_float_50(*it));
    return s;
}

cplx polish(const IntPoly& p, cplx r0) {
    IntPoly dp = p.derivative();
    mp_complex r(r0.real(), r0.imag());
    for (int i = 0; i < 8; ++i) {
        mp_complex f = eval_mp(p, r), df = eval_mp(dp, r);
        if (abs(df) == 0) break;
        r -= f / df;
    }
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

}  // namespace

std::vector<cplx> capture_parameters(int k, const ToleranceConfig& tol) {
    IntPoly e = capture_equation(k);
    std::vector<cplx> out;
    if (e.degree() < 1) return out;
    std::vector<RationalInParam> vals;
    for (int j = 1; j <= k - 1; ++j) vals.push_back(capture_value_symbolic(j));
    for (auto r : poly_roots(e.to_complex(), tol)) {
        cplx a = polish(e, r);
        if (std::abs(a) < 1e-12) continue;
        bool keep = true;
        for (int j = 1; j <= k - 1 && keep; ++j) {
            cplx den = vals[j - 1].den_a.eval(a);
            if (std::abs(den) < 1e-10) keep = false;
            else if (j < k - 1 && std::abs(vals[j - 1].eval(a) + 2.0) < 1e-8) keep = false;
        }
        if (keep) out.push_back(a);
    }
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
        double ix = std::abs(x.imag()) < 1e-12 ? 0.0 : std::abs(x.imag());
        double iy = std::abs(y.imag()) < 1e-12 ? 0.0 : std::abs(y.imag());
        if (std::abs(ix - iy) > 1e-9) return ix < iy;
        if (std::abs(x.imag() - y.imag()) > 1e-9) return x.imag() < y.imag();
        return x.real() < y.real();
    });
    for (auto& a : out)
        if (std::abs(a.imag()) < 1e-12) a = a.real();
    return out;
}

RationalMap capture_map(cplx a) { return RationalMap(Polynomial({a}), Polynomial({0.0, 2.0, 1.0})); }

// ---- catalogs

namespace {

SpherePoint F(cplx z) { return SpherePoint::finite(z); }
const SpherePoint INF = SpherePoint::infinity();

CatalogEntry bicritical_entry(const std::string& name, const std::string& src, const BicriticalParams& p) {
    CatalogEntry e{name, src, bicritical_map(p), {}, {}, {F(0.0), INF}};
    cplx bd = p.b / p.d, ac = p.a / p.c;
    auto om = omega_membership(p);
    e.points = {{"0", F(0.0)}, {"b/d", F(bd)}, {"inf", INF}, {"a/c", F(ac)}};
    if (om.in_omega_plus) e.successor = {1, 2, 3, 0};
    else e.successor = {1, 0, 3, 2};
    return e;
}

CatalogEntry capture_entry(const std::string& name, const std::string& src, cplx a, int k) {
    CatalogEntry e{name, src, capture_map(a), {}, {}, {F(-1.0), INF}};
    for (int j = 1; j <= k - 2; ++j) {
        cplx v = capture_value_symbolic(j).eval(a);
        e.points.push_back({"R^" + std::to_string(j) + "(-1)", F(v)});
    }
    e.points.push_back({"-2", F(-2.0)});
    e.points.push_back({"inf", INF});
    e.points.push_back({"0", F(0.0)});
    int m = static_cast<int>(e.points.size());
    for (int i = 0; i < m - 1; ++i) e.successor.push_back(i + 1);
    e.successor.push_back(m - 2);
    return e;
}

RationalMap rm(std::vector<cplx> n, std::vector<cplx> d) { return RationalMap(Polynomial(n), Polynomial(d)); }

}  // namespace

std::vector<CatalogEntry> realization_catalog() {
    std::vector<CatalogEntry> out;
    const cplx I(0.0, 1.0);
    auto pts01i = [](std::vector<int> succ_0_1_inf) {
        return std::make_pair(std::vector<LabeledPoint>{{"0", F(0.0)}, {"1", F(1.0)}, {"inf", INF}}, succ_0_1_inf);
    };
    auto add = [&](const std::string& name, const std::string& src, RationalMap m, std::vector<int> succ,
                   std::vector<SpherePoint> crit) {
        auto [pts, s] = pts01i(succ);
        out.push_back({name, src, std::move(m), pts, s, std::move(crit)});
    };
    // successor lists index the points 0, 1, inf
    add("realize:A", "map A", rm({-1.0, 0.0, 1.0}, {0.0, 0.0, 1.0}), {2, 0, 1}, {F(0.0), INF});
    {
        cplx al = std::polar(1.0, M_PI / 3.0);
        Polynomial n = Polynomial::from_roots({al, al, al});
        Polynomial d = Polynomial::from_roots({1.0 - al, 1.0 - al, 1.0 - al});
        add("realize:B", "map B", RationalMap(n, d), {1, 1, 1}, {F(al), F(1.0 - al)});
    }
    for (int j = 1; j <= 2; ++j) {
        cplx al = (8.0 + (j == 1 ? 1.0 : -1.0) * 4.0 * std::sqrt(5.0) * I) / 9.0;
        cplx c = (4.0 - 3.0 * al) / 4.0;
        cplx g = c * (c - 1.0) * (c - 1.0) / std::pow(c - al, 5);
        Polynomial n = Polynomial::from_roots({al, al, al, al, al}, g);
        Polynomial d = Polynomial::from_roots({0.0, 1.0, 1.0});
        add("realize:B_a" + std::to_string(j), "map B, hyperbolic companion", RationalMap(n, d), {2, 2, 2},
            {F(1.0), F(c), F(al), INF});
    }
    add("realize:C", "map C", rm({0.0, 0.0, 3.0, -2.0}, {1.0}), {0, 1, 2}, {F(0.0), F(1.0), INF});
    RationalMap Ea = RationalMap(Polynomial::from_roots({1.0, 1.0, 1.0}), Polynomial({-1.0, 3.0}));
    add("realize:C_a", "map C, E_a composed with itself", compose(Ea, Ea), {0, 1, 2}, {});
    add("realize:D", "map D", rm({4.0, -4.0, 1.0}, {0.0, 0.0, 1.0}), {2, 1, 1}, {F(2.0), F(0.0)});
    {
        Polynomial n = Polynomial::from_roots({-8.0, 1.0, 1.0}, -1.0);
        add("realize:D_a", "map D, atomic companion", RationalMap(n, Polynomial({0.0, 27.0})), {2, 0, 2},
            {F(1.0), INF, F(-2.0), F(-2.0)});
    }
    add("realize:E", "map E", rm({1.0, 0.0, -1.0}, {1.0}), {1, 0, 2}, {F(0.0), INF});
    add("realize:E_a", "map E, atomic companion", Ea, {1, 0, 2}, {F(1.0), INF, F(0.0)});
    add("realize:F", "map F", rm({1.0, -4.0, 4.0}, {0.0, -4.0, 4.0}), {2, 2, 1}, {F(0.5), INF});
    {
        cplx al = 0.75;
        cplx a3 = al * al * al;
        add("realize:F_m", "map F, non-hyperbolic companion",
            RationalMap(Polynomial({-a3, a3}), Polynomial::from_roots({al, al, al})), {1, 0, 0},
            {F(al), F((3.0 - al) / 2.0), INF});
    }
    add("realize:G", "map G", rm({1.0, -4.0, 4.0}, {1.0}), {1, 1, 2}, {F(0.5), INF});
    {
        Polynomial n = Polynomial::from_roots({0.0, 0.0, 1.0, 1.0}, -4.0);
        Polynomial d = Polynomial::from_roots({0.5, 0.5}, 4.0);
        add("realize:G_a", "map G, atomic companion", RationalMap(n, d), {0, 0, 2}, {});
    }
    return out;
}

RationalMap literal_D_a() {
    return RationalMap(Polynomial::from_roots({-4.0, 1.0, 1.0}, -1.0), Polynomial({0.0, 9.0}));
}

std::vector<RationalMap> literal_F_m() {
    std::vector<RationalMap> out;
    for (int j = 1; j <= 2; ++j) {
        cplx al = (-5.0 + (j == 1 ? 1.0 : -1.0) * std::sqrt(23.0) * cplx(0.0, 1.0)) / 8.0;
        cplx a3 = al * al * al;
        out.emplace_back(Polynomial({-a3, a3}), Polynomial::from_roots({al, al, al}));
    }
    return out;
}

std::vector<CatalogEntry> dynamics_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back(bicritical_entry("omega+2", "bicritical plus family, k = 2", omega_plus_2()));
    out.push_back(bicritical_entry("omega+3", "bicritical plus family, k = 3", omega_plus_3()));
    out.push_back(bicritical_entry("omega-3", "bicritical minus family, k = 3", omega_minus_3()));
    out.push_back(bicritical_entry("omega-4", "bicritical minus family, k = 4", omega_minus_4()));
    for (int b : {1, 2}) {
        auto p = omega_minus_2(static_cast<double>(b));
        CatalogEntry e{"omega-2:b" + std::to_string(b), "bicritical minus family, k = 2", bicritical_map(p),
                       {{"0", F(0.0)}, {"inf", INF}}, {1, 0}, {F(0.0), INF}};
        out.push_back(e);
    }
    out.push_back(capture_entry("capture:2", "generation-2 capture", 2.0, 2));
    out.push_back(capture_entry("capture:3/2", "generation-3 capture", 1.5, 3));
    for (int k : {4, 5}) {
        auto roots = capture_parameters(k);
        for (size_t j = 0; j < roots.size(); ++j)
            out.push_back(capture_entry("capture:" + std::to_string(k) + "." + std::to_string(j + 1),
                                        "generation-" + std::to_string(k) + " capture", roots[j], k));
    }
    return out;
}

std::vector<CatalogEntry> full_catalog() {
    auto a = dynamics_catalog();
    auto b = realization_catalog();
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<std::string> catalog_ids() {
    std::vector<std::string> ids;
    for (auto& e : full_catalog()) ids.push_back(e.name);
    ids.push_back("omega-2");
    return ids;
}

CatalogEntry catalog_entry(const std::string& id0) {
    std::string id = id0;
    if (id == "omega-2") id = "omega-2:b1";
    if (id == "capture:3") id = "capture:3/2";
    if (id == "capture:4") id = "capture:4.1";
    if (id == "capture:5") id = "capture:5.1";
    if (id == "realize:B_a") id = "realize:B_a1";
    for (auto& e : full_catalog())
        if (e.name == id) return e;
    throw Error(ErrorKind::Usage, "unknown catalog id '" + id0 + "'");
}

GraphMatch match_expected_graph(const CatalogEntry& e, const PostcriticalResult& r, double eps) {
    GraphMatch g;
    const auto& P = r.set.points;
    if (P.size() != e.points.size()) {
        g.detail = "expected " + std::to_string(e.points.size()) + " postcritical points, found " +
                   std::to_string(P.size());
        return g;
    }
    g.mapping.assign(P.size(), -1);
    std::vector<bool> used(P.size(), false);
    for (size_t i = 0; i < P.size(); ++i) {
        int best = -1;
        double bd = INFINITY;
        for (size_t j = 0; j < e.points.size(); ++j) {
            double d = chordal_distance(P[i], e.points[j].point);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(j);
            }
        }
        g.max_point_error = std::max(g.max_point_error, bd);
        if (bd > eps || used[best]) {
            g.detail = "point " + format_point(P[i], 12) + " does not land on an expected point";
            return g;
        }
        used[best] = true;
        g.mapping[i] = best;
    }
    for (size_t i = 0; i < P.size(); ++i) {
        int s = r.graph.successor[i];
        if (g.mapping[s] != e.successor[g.mapping[i]]) {
            g.detail = "edge from " + e.points[g.mapping[i]].label + " differs";
            return g;
        }
    }
    g.ok = true;
    g.detail = "match";
    return g;
}

}  // namespace unmate
