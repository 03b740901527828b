#pragma once

#include <string>
#include <vector>

#include "unmate/curve.hpp"

namespace unmate {

struct PunctureChart {
    MoebiusTransform chart;
    int infinity_index = -1;  // postcritical index sent to infinity
    // postcritical index of generator g_{j+1}
    std::vector<int> generator_point;
    std::vector<cplx> punctures;  // chart coordinates, same order
    double rotation = 0.0;
    int attempts = 0;

    std::string id() const;
};

// letters: +j is g_j, -j is g_j^-1 (j >= 1)
struct CurveWord {
    std::vector<int> letters;
    bool cyclically_reduced = false;
    // identifies the chart the word was read in; empty for hand-written words
    std::string chart_id;

    bool empty() const { return letters.empty(); }
    CurveWord inverse() const;
    std::string to_string() const;
    bool operator==(const CurveWord& o) const { return letters == o.letters; }
};

CurveWord free_reduce(std::vector<int> letters);
CurveWord cyclic_reduce(const CurveWord& w);
// least rotation of a cyclically reduced word
std::vector<int> canonical_rotation(const std::vector<int>& letters);
bool conjugate(const CurveWord& a, const CurveWord& b);
CurveWord parse_word(const std::string& s);

PunctureChart build_chart(const PostcriticalSet& P, const std::vector<JordanCurve>& curves);
PunctureChart build_chart(const PostcriticalSet& P, const std::vector<const JordanCurve*>& curves);
CurveWord curve_word(const PunctureChart& chart, const JordanCurve& curve);

enum class IsotopyVerdict { OrientationPreserving, OrientationReversing, NotIsotopic, Inessential };
const char* isotopy_verdict_name(IsotopyVerdict v);
IsotopyVerdict classify_isotopy(const CurveWord& w1, const CurveWord& w2);

}  // namespace unmate
