#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "unmate/rational_map.hpp"

namespace unmate {

// (a z^k + b) / (c z^k + d) with ad - bc = 1
struct BicriticalParams {
    cplx a, b, c, d;
    int k = 2;
    void validate() const;
    BicriticalParams negated() const { return {-a, -b, -c, -d, k}; }
};

RationalMap bicritical_map(const BicriticalParams& p);

struct OmegaMembership {
    bool in_omega1 = false, in_omega2 = false, in_omega3 = false, in_omega4 = false;
    bool in_omega_plus = false, in_omega_minus = false;
    // intersections without the exclusions
    bool plus_simplified = false, minus_simplified = false;
};

OmegaMembership omega_membership(const BicriticalParams& p);

cplx beta3();
BicriticalParams omega_plus_2();
BicriticalParams omega_plus_3();
BicriticalParams omega_minus_3();
BicriticalParams omega_minus_4();
BicriticalParams omega_minus_2(cplx b);
// further members of the plus family for any k >= 2, j = 1..k
BicriticalParams omega_plus_sample(int k, int j);
// members of the minus family for k >= 3 (k = 2 uses omega_minus_2)
BicriticalParams omega_minus_sample(int k);

using BigInt = boost::multiprecision::cpp_int;

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> c);
    const std::vector<BigInt>& coeffs() const { return c_; }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    BigInt coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : BigInt(0); }
    BigInt content() const;
    IntPoly primitive() const;
    IntPoly derivative() const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const BigInt& s) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    cplx eval(cplx a) const;
    std::vector<cplx> to_complex() const;
    std::string to_string(const std::string& var = "a") const;

private:
    std::vector<BigInt> c_;
    void trim();
};

// exact division, throws if not exact
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
// primitive gcd with positive leading coefficient
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

struct RationalInParam {
    IntPoly num_a, den_a;
    cplx eval(cplx a) const;
};

RationalInParam capture_value_symbolic(int j);
// num + 2 den of R_a^(k-1)(-1), reduced to its squarefree primitive part
IntPoly capture_equation(int k);
std::vector<cplx> capture_parameters(int k, const ToleranceConfig& tol = {});
RationalMap capture_map(cplx a);

struct LabeledPoint {
    std::string label;
    SpherePoint point;
};

struct CatalogEntry {
    std::string name;
    std::string source;
    RationalMap map;
    std::vector<LabeledPoint> points;
    std::vector<int> successor;
    std::vector<SpherePoint> expected_critical;
};

std::vector<CatalogEntry> realization_catalog();
// the D and F companion formulas taken literally; not postcritically finite
RationalMap literal_D_a();
std::vector<RationalMap> literal_F_m();
std::vector<CatalogEntry> dynamics_catalog();
std::vector<CatalogEntry> full_catalog();
CatalogEntry catalog_entry(const std::string& id);
std::vector<std::string> catalog_ids();

struct GraphMatch {
    bool ok = false;
    std::string detail;
    // computed index -> expected index
    std::vector<int> mapping;
    double max_point_error = 0;
};

GraphMatch match_expected_graph(const CatalogEntry& e, const PostcriticalResult& r, double eps = 1e-9);

}  // namespace unmate
