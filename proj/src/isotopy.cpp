#include "unmate/isotopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unmate {

CurveWord CurveWord::inverse() const {
    CurveWord w;
    w.letters.assign(letters.rbegin(), letters.rend());
    for (auto& x : w.letters) x = -x;
    w.cyclically_reduced = cyclically_reduced;
    return w;
}

std::string CurveWord::to_string() const {
    if (letters.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ' ';
        os << 'g' << std::abs(letters[i]);
        if (letters[i] < 0) os << "^-1";
    }
    return os.str();
}

std::string PunctureChart::id() const {
    std::ostringstream os;
    os << infinity_index << '@' << rotation;
    return os.str();
}

CurveWord free_reduce(std::vector<int> letters) {
    std::vector<int> st;
    for (int x : letters) {
        if (!st.empty() && st.back() == -x) st.pop_back();
        else st.push_back(x);
    }
    CurveWord w;
    w.letters = std::move(st);
    return w;
}

CurveWord cyclic_reduce(const CurveWord& in) {
    CurveWord w = free_reduce(in.letters);
    size_t i = 0, j = w.letters.size();
    while (j - i >= 2 && w.letters[i] == -w.letters[j - 1]) {
        ++i;
        --j;
    }
    CurveWord r;
    r.letters.assign(w.letters.begin() + i, w.letters.begin() + j);
    r.cyclically_reduced = true;
    return r;
}

std::vector<int> canonical_rotation(const std::vector<int>& s) {
    const size_t n = s.size();
    if (n == 0) return s;
    size_t best = 0;
    for (size_t k = 1; k < n; ++k) {
        for (size_t t = 0; t < n; ++t) {
            int a = s[(k + t) % n], b = s[(best + t) % n];
            if (a != b) {
                if (a < b) best = k;
                break;
            }
        }
    }
    std::vector<int> r(n);
    for (size_t t = 0; t < n; ++t) r[t] = s[(best + t) % n];
    return r;
}

bool conjugate(const CurveWord& a, const CurveWord& b) {
    auto x = cyclic_reduce(a), y = cyclic_reduce(b);
    if (x.letters.size() != y.letters.size()) return false;
    return canonical_rotation(x.letters) == canonical_rotation(y.letters);
}

CurveWord parse_word(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    std::vector<int> letters;
    while (is >> tok) {
        if (tok == "1") continue;
        if (tok.size() < 2 || tok[0] != 'g') throw Error(ErrorKind::Usage, "bad word token '" + tok + "'");
        auto caret = tok.find('^');
        int j = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        for (int k = 0; k < std::abs(e); ++k) letters.push_back(e > 0 ? j : -j);
    }
    return free_reduce(letters);
}

namespace {

bool chart_ok(const std::vector<cplx>& punct, const std::vector<std::vector<cplx>>& curves) {
    for (size_t i = 0; i < punct.size(); ++i)
        for (size_t j = i + 1; j < punct.size(); ++j)
            if (std::abs(punct[i].real() - punct[j].real()) <= 1e-6) return false;
    // no vertex sits on a ray, so every crossing is transverse under the half-open rule
    for (auto& pts : curves)
        for (auto& z : pts)
            for (auto& p : punct)
                if (z.imag() > p.imag() && std::abs(z.real() - p.real()) < 1e-12 * std::max(1.0, std::abs(z)))
                    return false;
    return true;
}

}  // namespace

PunctureChart build_chart(const PostcriticalSet& P, const std::vector<const JordanCurve*>& curves) {
    if (P.size() < 2) throw Error(ErrorKind::Precondition, "a puncture chart needs at least two points");
    PunctureChart pc;
    double best = -1;
    for (size_t i = 0; i < P.size(); ++i) {
        double d = INFINITY;
        for (auto* c : curves) d = std::min(d, min_distance(*c, P.points[i]));
        if (d > best + 1e-12) {
            best = d;
            pc.infinity_index = static_cast<int>(i);
        }
    }
    const MoebiusTransform base = MoebiusTransform::send_to_infinity(P.points[pc.infinity_index]);
    std::vector<std::vector<cplx>> coords;
    for (auto* c : curves) coords.push_back(chart_coordinates(*c, base));
    for (int attempt = 0; attempt < 100; ++attempt) {
        double theta = attempt == 0 ? 0.0 : 0.1 + 0.6180339887 * attempt;
        MoebiusTransform rot = MoebiusTransform::rotation(theta);
        cplx e = std::polar(1.0, theta);
        std::vector<cplx> punct;
        std::vector<int> gp;
        for (size_t i = 0; i < P.size(); ++i) {
            if (static_cast<int>(i) == pc.infinity_index) continue;
            punct.push_back(moebius_apply(base, P.points[i]).value() * e);
            gp.push_back(static_cast<int>(i));
        }
        std::vector<std::vector<cplx>> rc = coords;
        for (auto& v : rc)
            for (auto& z : v) z *= e;
        if (chart_ok(punct, rc)) {
            pc.chart = rot * base;
            pc.generator_point = gp;
            pc.punctures = punct;
            pc.rotation = theta;
            pc.attempts = attempt + 1;
            return pc;
        }
    }
    throw Error(ErrorKind::ChartSearchFailed, "no rotation gives distinct transverse rays");
}

PunctureChart build_chart(const PostcriticalSet& P, const std::vector<JordanCurve>& curves) {
    std::vector<const JordanCurve*> ptrs;
    for (auto& c : curves) ptrs.push_back(&c);
    return build_chart(P, ptrs);
}

CurveWord curve_word(const PunctureChart& chart, const JordanCurve& curve) {
    auto pts = chart_coordinates(curve, chart.chart);
    const size_t n = pts.size();
    std::vector<int> letters;
    for (size_t k = 0; k < n; ++k) {
        cplx a = pts[k], b = pts[(k + 1) % n];
        for (size_t i = 0; i < chart.punctures.size(); ++i) {
            cplx p = chart.punctures[i];
            bool la = a.real() < p.real(), lb = b.real() < p.real();
            if (la == lb) continue;
            double s = (p.real() - a.real()) / (b.real() - a.real());
            double y = a.imag() + s * (b.imag() - a.imag());
            if (std::abs(y - p.imag()) < 1e-9 * std::max(1.0, std::abs(p)))
                throw Error(ErrorKind::TangentCrossing, "curve passes through a puncture");
            if (y <= p.imag()) continue;
            // counterclockwise about the puncture crosses its ray leftwards
            int g = static_cast<int>(i) + 1;
            letters.push_back(lb ? g : -g);
        }
    }
    CurveWord w = cyclic_reduce(free_reduce(letters));
    w.chart_id = chart.id();
    return w;
}

const char* isotopy_verdict_name(IsotopyVerdict v) {
    switch (v) {
        case IsotopyVerdict::OrientationPreserving: return "OrientationPreserving";
        case IsotopyVerdict::OrientationReversing: return "OrientationReversing";
        case IsotopyVerdict::NotIsotopic: return "NotIsotopic";
        case IsotopyVerdict::Inessential: return "Inessential";
    }
    return "?";
}

IsotopyVerdict classify_isotopy(const CurveWord& w1, const CurveWord& w2) {
    if (!w1.chart_id.empty() && !w2.chart_id.empty() && w1.chart_id != w2.chart_id)
        throw Error(ErrorKind::ChartMismatch, "words come from different charts");
    auto a = cyclic_reduce(w1), b = cyclic_reduce(w2);
    if (a.empty() || b.empty()) return IsotopyVerdict::Inessential;
    if (conjugate(a, b)) return IsotopyVerdict::OrientationPreserving;
    if (conjugate(a, b.inverse())) return IsotopyVerdict::OrientationReversing;
    return IsotopyVerdict::NotIsotopic;
}

}  // namespace unmate
