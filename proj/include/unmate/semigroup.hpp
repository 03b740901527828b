#pragma once

#include <string>
#include <vector>

#include "unmate/rational_map.hpp"

namespace unmate {

struct FiniteSelfMap {
    std::vector<int> image;

    int k() const { return static_cast<int>(image.size()); }
    bool operator==(const FiniteSelfMap& o) const { return image == o.image; }
    bool operator<(const FiniteSelfMap& o) const { return image < o.image; }
    // "p1->p2 p2->p3 ..." with 1-based points
    std::string to_string() const;
    // index in 0..k^k-1, image[0] most significant
    int code() const;

    static FiniteSelfMap identity(int k);
    static FiniteSelfMap from_code(int code, int k);
    // accepts "2,3,4,1" (1-based images) or "p1->p2 p2->p3 ..."
    static FiniteSelfMap parse(const std::string& s, int k = 0);
};

FiniteSelfMap compose_fm(const FiniteSelfMap& f, const FiniteSelfMap& g);  // f after g
FiniteSelfMap power(const FiniteSelfMap& f, int n);
bool is_periodic(const FiniteSelfMap& f);

struct SeriesLabel {
    std::string name;       // empty when k != 4
    std::string canonical;  // functional-graph invariant
};

SeriesLabel classify_series(const FiniteSelfMap& f);
std::string canonical_structure(const FiniteSelfMap& f);
std::vector<std::string> series_names();  // the 20 names for k = 4, table order

// named maps on four points
FiniteSelfMap named_map(const std::string& name);

std::vector<FiniteSelfMap> all_maps(int k);

struct ClosureResult {
    std::vector<FiniteSelfMap> generators;
    std::vector<FiniteSelfMap> closure;  // sorted
    size_t size() const { return closure.size(); }
    bool closed = false;  // verified by a full composition pass
};

ClosureResult closure(const std::vector<FiniteSelfMap>& gens, bool verify = true);

struct SAGenerating {
    std::vector<std::pair<FiniteSelfMap, FiniteSelfMap>> pairs;  // (f, f^2)
    std::vector<FiniteSelfMap> chosen;
    ClosureResult result;
    int selections_tried = 0;
};

SAGenerating verify_sa_generating();

struct PairSearch {
    long pairs_tested = 0;
    size_t largest = 0;
    bool any_full = false;
};

PairSearch exhaustive_pair_search(int k = 4);

struct CensusRow {
    std::string series;
    std::string family;  // periodic, one-orbit, two-orbit, three-orbit
    int count = 0;
};

std::vector<CensusRow> census(int k = 4);
std::string census_csv(const std::vector<CensusRow>& rows);

struct CompositiveReport {
    std::vector<SpherePoint> p1, p2, p12;
    bool containment = false;  // P(R1 o R2) inside P(R1) u P(R2)
    bool hypothesis = false;   // P(R2) inside P(R1) = V(R1), R2 sub-preserves P(R1)
    bool equality = false;
    bool sub_preserved = false;  // R1 and R2 both map P(R1) u P(R2) into itself     // P(R1 o R2) = V(R1 o R2) = P(R1), meaningful when hypothesis holds
    std::string detail;
};

CompositiveReport compositive_trick_check(const RationalMap& r1, const RationalMap& r2,
                                          const ToleranceConfig& tol = {});

struct CompositivePair {
    std::string first, second;  // catalog ids, composition first o second
    CompositiveReport report;
    std::string error;
};

struct CompositiveSurvey {
    size_t eligible = 0;  // ordered catalog pairs meeting the hypothesis
    std::vector<CompositivePair> sampled;
};

// samples catalog pairs with degree product <= 64 whose union of postcritical sets is sub-preserved
CompositiveSurvey compositive_survey(int count, unsigned long long seed, const ToleranceConfig& tol = {});

}  // namespace unmate
