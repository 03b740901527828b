#include "unmate/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace unmate {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::IndeterminatePoint: return "IndeterminatePoint";
        case ErrorKind::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
        case ErrorKind::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
        case ErrorKind::InvalidMap: return "InvalidMap";
        case ErrorKind::SelfIntersecting: return "SelfIntersecting";
        case ErrorKind::GapTooLarge: return "GapTooLarge";
        case ErrorKind::NearCriticalValue: return "NearCriticalValue";
        case ErrorKind::CurveHitsPostcritical: return "CurveHitsPostcritical";
        case ErrorKind::PointOnCurve: return "PointOnCurve";
        case ErrorKind::ChartDegenerate: return "ChartDegenerate";
        case ErrorKind::ChartSearchFailed: return "ChartSearchFailed";
        case ErrorKind::TangentCrossing: return "TangentCrossing";
        case ErrorKind::ChartMismatch: return "ChartMismatch";
        case ErrorKind::NoSeparatingCurveFound: return "NoSeparatingCurveFound";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::SizeGuard: return "SizeGuard";
        case ErrorKind::NoSubsetFound: return "NoSubsetFound";
        case ErrorKind::Precondition: return "Precondition";
        case ErrorKind::Usage: return "Usage";
    }
    return "Error";
}

void ToleranceConfig::validate() const {
    if (!(eps_root > 0 && eps_orbit > 0 && eps_curve > 0) || max_iter < 1 || max_refine_depth < 1)
        throw Error(ErrorKind::Precondition, "tolerances must be positive");
}

SpherePoint::SpherePoint(cplx z, cplx w) {
    double az = std::abs(z), aw = std::abs(w);
    if (!(std::max(az, aw) > 0) || !std::isfinite(az) || !std::isfinite(aw))
        throw Error(ErrorKind::IndeterminatePoint, "[0:0] is not a point");
    if (aw >= az) {
        z_ = z / w;
        w_ = 1.0;
    } else {
        z_ = 1.0;
        w_ = w / z;
    }
}

cplx SpherePoint::value() const {
    if (is_infinity()) return cplx(1e300, 0.0);
    return z_ / w_;
}

std::array<double, 3> SpherePoint::unit_vector() const {
    // stereographic image of z/w on the unit sphere
    double zz = std::norm(z_), ww = std::norm(w_);
    double s = zz + ww;
    cplx zw = z_ * std::conj(w_);
    return {2.0 * zw.real() / s, 2.0 * zw.imag() / s, (zz - ww) / s};
}

SpherePoint SpherePoint::from_unit_vector(const std::array<double, 3>& v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    double x = v[0] / n, y = v[1] / n, h = v[2] / n;
    if (h <= 0) return SpherePoint(cplx(x, y), 1.0 - h);
    return SpherePoint(1.0 + h, cplx(x, -y));
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    double num = std::abs(p.num() * q.den() - q.num() * p.den());
    double den = std::sqrt(std::norm(p.num()) + std::norm(p.den())) *
                 std::sqrt(std::norm(q.num()) + std::norm(q.den()));
    return std::min(2.0, 2.0 * num / den);
}

double chordal_distance(cplx z, cplx w) {
    return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

SpherePoint sphere_midpoint(const SpherePoint& p, const SpherePoint& q) {
    auto a = p.unit_vector(), b = q.unit_vector();
    std::array<double, 3> m{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    if (std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) < 1e-12)
        throw Error(ErrorKind::Precondition, "antipodal midpoint");
    return SpherePoint::from_unit_vector(m);
}

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

Polynomial Polynomial::monomial(int k, cplx c) {
    std::vector<cplx> v(k + 1, 0.0);
    v[k] = c;
    return Polynomial(v);
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx lead) {
    Polynomial p({lead});
    for (auto r : roots) p = p * Polynomial({-r, 1.0});
    return p;
}

double Polynomial::scale() const {
    double s = 0;
    for (auto c : c_) s = std::max(s, std::abs(c));
    return s;
}

cplx Polynomial::operator()(cplx z) const {
    cplx s = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * z + *it;
    return s;
}

cplx Polynomial::homogeneous(cplx z, cplx w, int D) const {
    if (std::abs(w) >= std::abs(z)) {
        cplx t = z / w;
        return (*this)(t) * std::pow(w, D);
    }
    cplx t = w / z, s = 0.0;
    for (int i = 0; i <= D; ++i) s = s * t + coeff(i);
    return s * std::pow(z, D);
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<cplx> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(d);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Polynomial(r);
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial();
    std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(r);
}

Polynomial Polynomial::operator*(cplx s) const {
    std::vector<cplx> r = c_;
    for (auto& c : r) c *= s;
    return Polynomial(r);
}

namespace {

struct EvalPair {
    cplx p, dp;
    double absbound;
};

EvalPair eval_with_derivative(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    double b = 0.0, az = std::abs(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
        b = b * az + std::abs(*it);
    }
    return {p, dp, b};
}

// Aberth-Ehrlich iteration on a polynomial with nonzero c0 and c_n
std::vector<cplx> aberth(const std::vector<cplx>& c, const ToleranceConfig& tol) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 1) return {-c[0] / c[1]};
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
    double radius = 1.0 + bound;

    std::mt19937_64 rng(0x5eed1234abcdULL);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    const double eps = std::max(tol.eps_root, 1e-15);
    for (int attempt = 0; attempt < 6; ++attempt) {
        std::vector<cplx> z(n);
        for (int k = 0; k < n; ++k) {
            double ang = 2.0 * M_PI * k / n + 0.4 + attempt * 0.7071;
            double r = radius * (attempt == 0 ? 1.0 : 1.0 + 0.3 * uni(rng));
            z[k] = std::polar(r, ang);
        }
        std::vector<bool> done(n, false);
        int sweeps = 0;
        bool converged = false;
        for (; sweeps < tol.max_iter; ++sweeps) {
            int active = 0;
            for (int i = 0; i < n; ++i) {
                if (done[i]) continue;
                auto e = eval_with_derivative(c, z[i]);
                if (std::abs(e.p) <= 1e-16 * e.absbound) {
                    done[i] = true;
                    continue;
                }
                cplx ratio = e.p / e.dp;
                cplx s = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != i) s += 1.0 / (z[i] - z[j]);
                cplx w = ratio / (1.0 - ratio * s);
                if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                    w = ratio;
                    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = cplx(uni(rng), uni(rng)) * 1e-3;
                }
                z[i] -= w;
                if (std::abs(w) <= 4e-16 * std::abs(z[i]) || std::abs(w) < 1e-300) done[i] = true;
                else ++active;
            }
            if (active == 0) {
                converged = true;
                break;
            }
        }
        // residual test relative to the coefficient magnitude sum at |r|
        bool ok = converged || sweeps >= tol.max_iter;
        for (int i = 0; i < n && ok; ++i) {
            auto e = eval_with_derivative(c, z[i]);
            if (!std::isfinite(std::abs(z[i])) || std::abs(e.p) > eps * 64.0 * n * e.absbound) ok = false;
        }
        if (ok) return z;
    }
    throw Error(ErrorKind::NonConvergence, "root iteration stalled");
}

}  // namespace

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs_in, const ToleranceConfig& tol) {
    std::vector<cplx> c = coeffs_in;
    while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
    if (c.size() < 2) throw Error(ErrorKind::Precondition, "poly_roots needs degree >= 1");
    std::vector<cplx> roots;
    size_t lo = 0;
    while (c[lo] == cplx(0.0)) {
        roots.push_back(0.0);
        ++lo;
    }
    std::vector<cplx> core(c.begin() + lo, c.end());
    if (core.size() >= 2) {
        auto r = aberth(core, tol);
        roots.insert(roots.end(), r.begin(), r.end());
    }
    return roots;
}

std::vector<cplx> poly_roots(const Polynomial& p, const ToleranceConfig& tol) {
    if (p.degree() < 1) throw Error(ErrorKind::Precondition, "poly_roots needs degree >= 1");
    return poly_roots(p.coeffs(), tol);
}

MoebiusTransform::MoebiusTransform(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    if (std::abs(det) == 0.0) throw Error(ErrorKind::Precondition, "singular Moebius transform");
    cplx s = 1.0 / std::sqrt(det);
    a_ = a * s;
    b_ = b * s;
    c_ = c * s;
    d_ = d * s;
    if (std::abs(a_ * d_ - b_ * c_) < 1e-12) throw Error(ErrorKind::Precondition, "degenerate Moebius transform");
}

MoebiusTransform MoebiusTransform::send_to_infinity(const SpherePoint& q) {
    if (q.is_infinity()) return identity();
    // [z:w] -> [w : z - q w]
    return MoebiusTransform(0.0, 1.0, 1.0, -q.value());
}

MoebiusTransform MoebiusTransform::rotation(double theta) {
    cplx e = std::polar(1.0, theta / 2);
    return MoebiusTransform(e, 0.0, 0.0, 1.0 / e);
}

MoebiusTransform MoebiusTransform::inverse() const { return MoebiusTransform(d_, -b_, -c_, a_); }

MoebiusTransform MoebiusTransform::operator*(const MoebiusTransform& o) const {
    return MoebiusTransform(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                            c_ * o.b_ + d_ * o.d_);
}

bool MoebiusTransform::is_identity() const {
    return std::abs(b_) < 1e-15 && std::abs(c_) < 1e-15 && std::abs(a_ - d_) < 1e-15;
}

SpherePoint moebius_apply(const MoebiusTransform& m, const SpherePoint& p) {
    return SpherePoint(m.a() * p.num() + m.b() * p.den(), m.c() * p.num() + m.d() * p.den());
}

}  // namespace unmate
