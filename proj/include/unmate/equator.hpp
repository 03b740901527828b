#pragma once

#include <string>
#include <vector>

#include "unmate/isotopy.hpp"

namespace unmate {

// canonical form keeps index 0 in white
struct Bipartition {
    std::vector<int> white, black;

    bool operator==(const Bipartition& o) const { return white == o.white && black == o.black; }
    std::string to_string(const PostcriticalSet& P) const;
};

Bipartition make_bipartition(std::vector<int> side, int m);
std::vector<Bipartition> enumerate_bipartitions(int m);
std::vector<Bipartition> enumerate_bipartitions(const PostcriticalSet& P);

enum class DynStatus { Immune, Swapping, Neither };
const char* dyn_status_name(DynStatus s);

struct PartitionDynamics {
    std::vector<DynStatus> status;  // status[n - 1]
    DynStatus at(int n) const { return status.at(n - 1); }
};

PartitionDynamics partition_dynamics(const FunctionalGraph& g, const Bipartition& b, int N);

enum class Outcome { Equator, OREquator, Splits, NotIsotopic, Inessential, PartitionIncompatible };
const char* outcome_name(Outcome o);

struct EquatorVerdict {
    Outcome outcome = Outcome::NotIsotopic;
    int level = 1;
    int components = 0;
    std::vector<int> covering_degrees;
    Bipartition partition;
    DynStatus status = DynStatus::Neither;
    std::string source_word, lift_word;
    std::string isotopy;  // raw isotopy verdict before the dynamics cross-check
    int chart_infinity = -1;
    bool consistent = true;
    std::string diagnostic;
    int refinements = 0;
    double seconds = 0;

    std::string label() const;  // e.g. "Splits(2)"
};

// the curve must avoid P(R); pc may be supplied to skip recomputation
EquatorVerdict classify_curve(const RationalMap& r, int n, const JordanCurve& curve, const ToleranceConfig& tol = {},
                              const PostcriticalResult* pc = nullptr);

// side assignment of a curve in its default chart, as a canonical bipartition
Bipartition induced_bipartition(const JordanCurve& curve, const PostcriticalSet& P);

struct CandidateOptions {
    int resolution = 512;
    std::vector<JordanCurve> user;
};

std::vector<JordanCurve> candidate_curves(const PostcriticalSet& P, const Bipartition& b,
                                          const CandidateOptions& opt = {}, const ToleranceConfig& tol = {});

enum class Conclusion { MatingAtFold, ORMatingEvidence, NoEquatorFoundUpTo };
const char* conclusion_name(Conclusion c);

struct LevelFinding {
    int level = 1;
    std::string curve;
    Bipartition partition;
    DynStatus status = DynStatus::Neither;
    bool ok = true;
    EquatorVerdict verdict;
    std::string error;
};

struct ORCheck {
    int level = 1;
    std::string curve;
    bool reverified = false;  // Equator at twice the level
    std::string doubled;      // outcome label at 2n, empty if 2n > N
};

struct UnmatabilityReport {
    std::string map_id;
    int depth = 0;
    bool hyperbolic_asserted = true;
    std::vector<LevelFinding> findings;
    std::vector<ORCheck> or_evidence;
    Conclusion conclusion = Conclusion::NoEquatorFoundUpTo;
    int fold = 0;
    std::string equator_curve;
    double eps_orbit = 0;

    std::string label() const;
};

struct FoldOptions {
    int resolution = 512;
    // injected before generated candidates, tried in order
    std::vector<JordanCurve> curves;
    std::string map_id;
};

UnmatabilityReport fold_report(const RationalMap& r, int N, const FoldOptions& opt = {},
                               const ToleranceConfig& tol = {});

}  // namespace unmate
