#pragma once

#include <string>
#include <vector>

#include "unmate/numeric.hpp"

namespace unmate {

class RationalMap {
public:
    RationalMap() : RationalMap(Polynomial({0.0, 1.0}), Polynomial({1.0})) {}
    RationalMap(Polynomial num, Polynomial den);
    static RationalMap from_moebius(const MoebiusTransform& m);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int degree() const { return degree_; }

    SpherePoint operator()(const SpherePoint& p) const;
    // smallest distance between a zero of num and a zero of den
    double common_root_gap(const ToleranceConfig& tol = {}) const;
    void validate(const ToleranceConfig& tol = {}) const;

private:
    Polynomial num_, den_;
    int degree_;
};

// R^power, never expanded
struct IterateSpec {
    RationalMap base;
    int power = 1;
    int degree() const;
};

SpherePoint evaluate(const RationalMap& r, const SpherePoint& p);
SpherePoint evaluate(const IterateSpec& r, const SpherePoint& p);

std::vector<SpherePoint> critical_points(const RationalMap& r, const ToleranceConfig& tol = {});

std::vector<SpherePoint> fiber(const RationalMap& r, const SpherePoint& q, const ToleranceConfig& tol = {});
std::vector<SpherePoint> fiber(const IterateSpec& r, const SpherePoint& q, const ToleranceConfig& tol = {});

struct PostcriticalSet {
    std::vector<SpherePoint> points;
    std::vector<std::string> labels;
    bool finite = false;

    size_t size() const { return points.size(); }
    // index of the stored point within eps, or -1
    int find(const SpherePoint& p, double eps) const;
};

struct FunctionalGraph {
    std::vector<int> successor;

    int node_count() const { return static_cast<int>(successor.size()); }
    FunctionalGraph power(int n) const;
    bool operator==(const FunctionalGraph& o) const { return successor == o.successor; }
};

struct PostcriticalResult {
    PostcriticalSet set;
    FunctionalGraph graph;
    std::vector<SpherePoint> critical;
};

PostcriticalResult postcritical_set(const RationalMap& r, const ToleranceConfig& tol = {});

RationalMap compose(const RationalMap& r1, const RationalMap& r2, const ToleranceConfig& tol = {});

std::string format_point(const SpherePoint& p, int digits = 6);

}  // namespace unmate
