#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace unmate {

using cplx = std::complex<double>;

enum class ErrorKind {
    NonConvergence,
    IndeterminatePoint,
    OrbitBudgetExceeded,
    DegreeBudgetExceeded,
    InvalidMap,
    SelfIntersecting,
    GapTooLarge,
    NearCriticalValue,
    CurveHitsPostcritical,
    PointOnCurve,
    ChartDegenerate,
    ChartSearchFailed,
    TangentCrossing,
    ChartMismatch,
    NoSeparatingCurveFound,
    SizeMismatch,
    SizeGuard,
    NoSubsetFound,
    Precondition,
    Usage
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ToleranceConfig {
    double eps_root = 1e-12;
    double eps_orbit = 1e-9;
    double eps_curve = 1e-3;
    int max_iter = 500;
    int max_refine_depth = 24;

    void validate() const;
};

// Point of the Riemann sphere as [z : w], scaled so max(|z|,|w|) = 1.
class SpherePoint {
public:
    SpherePoint() : z_(0.0), w_(1.0) {}
    SpherePoint(cplx z, cplx w);
    static SpherePoint finite(cplx z) { return SpherePoint(z, 1.0); }
    static SpherePoint infinity() { return SpherePoint(1.0, 0.0); }

    cplx num() const { return z_; }
    cplx den() const { return w_; }
    bool is_infinity() const { return w_ == cplx(0.0); }
    // affine value; huge for points near infinity
    cplx value() const;
    std::array<double, 3> unit_vector() const;
    static SpherePoint from_unit_vector(const std::array<double, 3>& v);

private:
    cplx z_, w_;
};

double chordal_distance(const SpherePoint& p, const SpherePoint& q);
double chordal_distance(cplx z, cplx w);
SpherePoint sphere_midpoint(const SpherePoint& p, const SpherePoint& q);

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    static Polynomial monomial(int k, cplx c = 1.0);
    static Polynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

    const std::vector<cplx>& coeffs() const { return c_; }
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    cplx coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : cplx(0.0); }
    cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }
    double scale() const;

    cplx operator()(cplx z) const;
    // sum c_i z^i w^(D-i)
    cplx homogeneous(cplx z, cplx w, int D) const;
    Polynomial derivative() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(cplx s) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

private:
    std::vector<cplx> c_;
    void trim();
};

std::vector<cplx> poly_roots(const Polynomial& p, const ToleranceConfig& tol = {});
// coefficients lowest first; exact zero leading/trailing coefficients allowed
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs, const ToleranceConfig& tol = {});

class MoebiusTransform {
public:
    MoebiusTransform() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}
    MoebiusTransform(cplx a, cplx b, cplx c, cplx d);
    static MoebiusTransform identity() { return {}; }
    // z -> 1/(z - q), or identity when q is infinity
    static MoebiusTransform send_to_infinity(const SpherePoint& q);
    static MoebiusTransform rotation(double theta);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }

    MoebiusTransform inverse() const;
    MoebiusTransform operator*(const MoebiusTransform& o) const;
    bool is_identity() const;

private:
    cplx a_, b_, c_, d_;
};

SpherePoint moebius_apply(const MoebiusTransform& m, const SpherePoint& p);

}  // namespace unmate
