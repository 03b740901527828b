#include "unmate/equator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

namespace unmate {

std::string Bipartition::to_string(const PostcriticalSet& P) const {
    auto side = [&](const std::vector<int>& s) {
        std::string out = "{";
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) out += ", ";
            out += s[i] < static_cast<int>(P.labels.size()) ? P.labels[s[i]] : std::to_string(s[i]);
        }
        return out + "}";
    };
    return side(white) + " | " + side(black);
}

Bipartition make_bipartition(std::vector<int> side, int m) {
    std::sort(side.begin(), side.end());
    side.erase(std::unique(side.begin(), side.end()), side.end());
    std::vector<int> rest;
    for (int i = 0; i < m; ++i)
        if (!std::binary_search(side.begin(), side.end(), i)) rest.push_back(i);
    Bipartition b;
    if (std::binary_search(side.begin(), side.end(), 0)) {
        b.white = side;
        b.black = rest;
    } else {
        b.white = rest;
        b.black = side;
    }
    return b;
}

std::vector<Bipartition> enumerate_bipartitions(int m) {
    if (m < 2) throw Error(ErrorKind::Precondition, "bipartitions need at least two points");
    if (m > 20) throw Error(ErrorKind::SizeGuard, "too many postcritical points to enumerate");
    std::vector<Bipartition> out;
    // masks over points 1..m-1 that go black; point 0 stays white
    for (unsigned mask = 1; mask < (1u << (m - 1)); ++mask) {
        std::vector<int> black;
        for (int i = 1; i < m; ++i)
            if (mask & (1u << (i - 1))) black.push_back(i);
        out.push_back(make_bipartition(black, m));
    }
    std::sort(out.begin(), out.end(), [](const Bipartition& a, const Bipartition& b) {
        if (a.white.size() != b.white.size()) return a.white.size() < b.white.size();
        return a.white < b.white;
    });
    return out;
}

std::vector<Bipartition> enumerate_bipartitions(const PostcriticalSet& P) {
    return enumerate_bipartitions(static_cast<int>(P.size()));
}

const char* dyn_status_name(DynStatus s) {
    switch (s) {
        case DynStatus::Immune: return "Immune";
        case DynStatus::Swapping: return "Swapping";
        case DynStatus::Neither: return "Neither";
    }
    return "?";
}

PartitionDynamics partition_dynamics(const FunctionalGraph& g, const Bipartition& b, int N) {
    const int m = g.node_count();
    std::vector<int> color(m, -1);
    for (int i : b.white) color.at(i) = 0;
    for (int i : b.black) color.at(i) = 1;
    PartitionDynamics d;
    for (int n = 1; n <= N; ++n) {
        auto gn = g.power(n);
        bool immune = true, swapping = true;
        for (int i = 0; i < m; ++i) {
            if (color[i] < 0) continue;
            int c = color[gn.successor[i]];
            if (c != color[i]) immune = false;
            if (c == color[i]) swapping = false;
        }
        d.status.push_back(immune ? DynStatus::Immune : swapping ? DynStatus::Swapping : DynStatus::Neither);
    }
    return d;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Equator: return "Equator";
        case Outcome::OREquator: return "OREquator";
        case Outcome::Splits: return "Splits";
        case Outcome::NotIsotopic: return "NotIsotopic";
        case Outcome::Inessential: return "Inessential";
        case Outcome::PartitionIncompatible: return "PartitionIncompatible";
    }
    return "?";
}

std::string EquatorVerdict::label() const {
    if (outcome == Outcome::Splits) return "Splits(" + std::to_string(components) + ")";
    return outcome_name(outcome);
}

Bipartition induced_bipartition(const JordanCurve& curve, const PostcriticalSet& P) {
    auto sides = side_partition(curve, P, default_chart(curve, P));
    return make_bipartition(sides.inside, static_cast<int>(P.size()));
}

EquatorVerdict classify_curve(const RationalMap& r, int n, const JordanCurve& curve, const ToleranceConfig& tol,
                              const PostcriticalResult* pc) {
    auto t0 = std::chrono::steady_clock::now();
    if (n < 1) throw Error(ErrorKind::Precondition, "level must be >= 1");
    PostcriticalResult own;
    if (!pc) {
        own = postcritical_set(r, tol);
        pc = &own;
    }
    const auto& P = pc->set;
    if (min_distance(curve, P.points) <= tol.eps_curve)
        throw Error(ErrorKind::CurveHitsPostcritical, "curve passes within eps_curve of a postcritical point");
    EquatorVerdict v;
    v.level = n;
    v.partition = induced_bipartition(curve, P);
    auto finish = [&]() {
        v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return v;
    };
    if (v.partition.black.empty()) {
        v.outcome = Outcome::Inessential;
        v.diagnostic = "curve does not separate the postcritical set";
        return finish();
    }
    v.status = partition_dynamics(pc->graph, v.partition, n).at(n);
    if (v.status == DynStatus::Neither) {
        v.outcome = Outcome::PartitionIncompatible;
        return finish();
    }
    LiftResult L = lift(IterateSpec{r, n}, curve, tol, P.points);
    v.components = static_cast<int>(L.curves.components.size());
    v.covering_degrees = L.covering_degrees;
    v.refinements = L.refinements;
    if (v.components > 1) {
        v.outcome = Outcome::Splits;
        return finish();
    }
    const JordanCurve& up = L.curves.components[0];
    PunctureChart chart = build_chart(P, std::vector<const JordanCurve*>{&curve, &up});
    v.chart_infinity = chart.infinity_index;
    CurveWord ws = curve_word(chart, curve), wl = curve_word(chart, up);
    v.source_word = ws.to_string();
    v.lift_word = wl.to_string();
    IsotopyVerdict iso = classify_isotopy(ws, wl);
    v.isotopy = isotopy_verdict_name(iso);
    switch (iso) {
        case IsotopyVerdict::OrientationPreserving: v.outcome = Outcome::Equator; break;
        case IsotopyVerdict::OrientationReversing: v.outcome = Outcome::OREquator; break;
        case IsotopyVerdict::NotIsotopic: v.outcome = Outcome::NotIsotopic; break;
        case IsotopyVerdict::Inessential: v.outcome = Outcome::Inessential; break;
    }
    if (v.outcome == Outcome::Equator && v.status != DynStatus::Immune) {
        v.consistent = false;
        v.diagnostic = "orientation-preserving lift on a non-immune partition";
        v.outcome = Outcome::NotIsotopic;
    } else if (v.outcome == Outcome::OREquator && v.status != DynStatus::Swapping) {
        v.consistent = false;
        v.diagnostic = "orientation-reversing lift on a non-swapping partition";
        v.outcome = Outcome::NotIsotopic;
    }
    return finish();
}

// ---- candidates

namespace {

JordanCurve from_chart(const CurveSpec& spec, const MoebiusTransform& chart, int resolution, const std::string& name) {
    const MoebiusTransform inv = chart.inverse();
    for (int res = resolution; res <= 32768; res *= 2) {
        JordanCurve planar = sample_parametric(spec, res);
        JordanCurve c = planar;
        c.spec.reset();
        c.name = name;
        bool ok = true;
        for (auto& s : c.samples) s = moebius_apply(inv, s);
        for (size_t i = 0; i < c.size() && ok; ++i)
            if (chordal_distance(c.samples[i], c.samples[(i + 1) % c.size()]) >= 0.1) ok = false;
        if (!ok) continue;
        if (chart.is_identity()) c.spec = spec;
        validate_jordan(c);
        return c;
    }
    throw Error(ErrorKind::GapTooLarge, "candidate needs more than 32768 samples");
}

std::vector<cplx> convex_hull(std::vector<cplx> p) {
    std::sort(p.begin(), p.end(), [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    auto cr = [](cplx o, cplx a, cplx b) { return (a - o).real() * (b - o).imag() - (a - o).imag() * (b - o).real(); };
    std::vector<cplx> h(2 * p.size());
    size_t k = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cr(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cr(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

double seg_dist(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double l2 = std::norm(ab);
    double t = l2 > 0 ? std::clamp(((p - a) * std::conj(ab)).real() / l2, 0.0, 1.0) : 0.0;
    return std::abs(p - (a + t * ab));
}

bool inside_hull(cplx p, const std::vector<cplx>& h) {
    if (h.size() < 3) return false;
    for (size_t i = 0; i < h.size(); ++i) {
        cplx a = h[i], b = h[(i + 1) % h.size()];
        if ((b - a).real() * (p - a).imag() - (b - a).imag() * (p - a).real() < 0) return false;
    }
    return true;
}

double hull_distance(cplx p, const std::vector<cplx>& h) {
    if (h.size() == 1) return std::abs(p - h[0]);
    if (inside_hull(p, h)) return 0.0;
    double d = INFINITY;
    for (size_t i = 0; i < h.size(); ++i) d = std::min(d, seg_dist(p, h[i], h[(i + 1) % h.size()]));
    return d;
}

CurveSpec fattened_hull(const std::vector<cplx>& h, double delta) {
    if (h.size() == 1) return CurveSpec::circle(h[0], delta);
    const size_t k = h.size();
    std::vector<cplx> nrm(k);
    for (size_t i = 0; i < k; ++i) {
        cplx e = h[(i + 1) % k] - h[i];
        nrm[i] = cplx(e.imag(), -e.real()) / std::abs(e);
    }
    std::vector<CurvePiece> pieces;
    for (size_t i = 0; i < k; ++i) {
        cplx prev = nrm[(i + k - 1) % k], cur = nrm[i];
        double a0 = std::arg(prev) / (2 * M_PI);
        double turn = std::arg(cur / prev) / (2 * M_PI);
        if (turn <= 0) turn += 1.0;
        pieces.push_back(CurvePiece::arc(h[i], delta, a0, a0 + turn));
        cplx s = pieces.back().end();
        pieces.push_back(CurvePiece::segment(s, h[(i + 1) % k] + delta * cur));
    }
    return CurveSpec::chain(std::move(pieces));
}

// boundary of a thin neighbourhood of the circular arc from a to b bulging by h
CurveSpec arc_capsule(cplx a, cplx b, double h, double delta, bool& ok) {
    cplx mid = 0.5 * (a + b), dir = (b - a) / std::abs(b - a);
    double half = 0.5 * std::abs(b - a);
    // circle through a, b and mid + i h dir
    double R = (half * half + h * h) / (2 * std::abs(h));
    cplx C = mid + cplx(0, 1) * dir * (h > 0 ? h - R : h + R);
    double t1 = std::arg(a - C) / (2 * M_PI), t2 = std::arg(b - C) / (2 * M_PI);
    // sweep through the apex
    double d = t2 - t1;
    double apex = std::arg(mid + cplx(0, 1) * dir * h - C) / (2 * M_PI);
    auto between = [](double from, double span, double x) {
        double u = x - from;
        u -= std::floor(u);
        if (span >= 0) return u <= span;
        return u >= 1 + span;
    };
    d -= std::floor(d);
    if (!between(t1, d, apex)) d -= 1.0;
    ok = delta < 0.9 * R;
    t2 = t1 + d;
    double s = d > 0 ? 0.5 : -0.5;
    return CurveSpec::chain({CurvePiece::arc(C, R + delta, t1, t2), CurvePiece::arc(b, delta, t2, t2 + s),
                             CurvePiece::arc(C, R - delta, t2, t1), CurvePiece::arc(a, delta, t1 + s, t1 + 2 * s)});
}

void add_family(const PostcriticalSet& P, const std::vector<int>& inner, const std::vector<int>& outer, int at_inf,
                const char* tag, const CandidateOptions& opt, const ToleranceConfig& tol, const Bipartition& b,
                std::vector<JordanCurve>& out) {
    const MoebiusTransform chart = MoebiusTransform::send_to_infinity(P.points[at_inf]);
    std::vector<cplx> in, far;
    for (int i : inner) in.push_back(moebius_apply(chart, P.points[i]).value());
    for (int i : outer)
        if (i != at_inf) far.push_back(moebius_apply(chart, P.points[i]).value());
    cplx c = std::accumulate(in.begin(), in.end(), cplx(0.0)) / static_cast<double>(in.size());
    double rw = 0;
    for (auto z : in) rw = std::max(rw, std::abs(z - c));
    double rb = INFINITY;
    for (auto z : far) rb = std::min(rb, std::abs(z - c));
    if (!std::isfinite(rb)) rb = 2.0 * rw + 2.0;
    auto accept = [&](JordanCurve cv) {
        if (min_distance(cv, P.points) <= 4 * tol.eps_curve) return;
        if (!(induced_bipartition(cv, P) == b)) return;
        out.push_back(std::move(cv));
    };
    const std::string base = std::string(tag) + std::to_string(at_inf);
    if (rb > rw) {
        for (double t : {0.5, 0.25, 0.75}) {
            try {
                accept(from_chart(CurveSpec::circle(c, rw + t * (rb - rw)), chart, opt.resolution,
                                  "circle:" + base + ":" + std::to_string(t).substr(0, 4)));
            } catch (const Error&) {
            }
        }
    }
    if (in.size() == 2) {
        double len = std::abs(in[1] - in[0]);
        for (double frac : {0.5, -0.5, 1.0, -1.0}) {
            bool ok = false;
            CurveSpec probe = arc_capsule(in[0], in[1], frac * len, 0.0, ok);
            double gap = INFINITY;
            for (auto z : far)
                for (int k = 0; k <= 64; ++k) gap = std::min(gap, std::abs(z - probe.pieces[0].at(k / 64.0)));
            double delta = std::min(0.5 * gap, 0.25 * len);
            CurveSpec cap = arc_capsule(in[0], in[1], frac * len, delta, ok);
            if (!ok || delta <= 0) continue;
            try {
                accept(from_chart(cap, chart, opt.resolution, "arc:" + base + ":" + std::to_string(frac).substr(0, 5)));
            } catch (const Error&) {
            }
        }
    }
    auto h = convex_hull(in);
    double dmin = INFINITY;
    for (auto z : far) dmin = std::min(dmin, hull_distance(z, h));
    if (!std::isfinite(dmin)) dmin = std::max(1.0, rw);
    if (dmin <= 0) return;
    for (int k = 1; k <= 3; ++k) {
        try {
            accept(from_chart(fattened_hull(h, dmin * k / 4.0), chart, opt.resolution,
                              "hull:" + base + ":" + std::to_string(k)));
        } catch (const Error&) {
        }
    }
}

}  // namespace

std::vector<JordanCurve> candidate_curves(const PostcriticalSet& P, const Bipartition& b, const CandidateOptions& opt,
                                          const ToleranceConfig& tol) {
    std::vector<JordanCurve> out;
    for (auto& u : opt.user) {
        try {
            if (induced_bipartition(u, P) == b) out.push_back(u);
        } catch (const Error&) {
        }
    }
    for (int k : b.black) add_family(P, b.white, b.black, k, "b", opt, tol, b, out);
    for (int k : b.white) add_family(P, b.black, b.white, k, "w", opt, tol, b, out);
    if (out.empty()) throw Error(ErrorKind::NoSeparatingCurveFound, "no candidate induces the requested bipartition");
    return out;
}

// ---- fold reports

const char* conclusion_name(Conclusion c) {
    switch (c) {
        case Conclusion::MatingAtFold: return "MatingAtFold";
        case Conclusion::ORMatingEvidence: return "ORMatingEvidence";
        case Conclusion::NoEquatorFoundUpTo: return "NoEquatorFoundUpTo";
    }
    return "?";
}

std::string UnmatabilityReport::label() const {
    switch (conclusion) {
        case Conclusion::MatingAtFold: return "MatingAtFold(" + std::to_string(fold) + ")";
        case Conclusion::ORMatingEvidence: return "ORMatingEvidence";
        case Conclusion::NoEquatorFoundUpTo: return "NoEquatorFoundUpTo(" + std::to_string(depth) + ")";
    }
    return "?";
}

UnmatabilityReport fold_report(const RationalMap& r, int N, const FoldOptions& opt, const ToleranceConfig& tol) {
    if (N < 1) throw Error(ErrorKind::Precondition, "search depth must be >= 1");
    UnmatabilityReport rep;
    rep.map_id = opt.map_id;
    rep.depth = N;
    rep.eps_orbit = tol.eps_orbit;
    const PostcriticalResult pc = postcritical_set(r, tol);
    const auto& P = pc.set;
    const auto bips = enumerate_bipartitions(P);
    // hyperbolic: every postcritical cycle passes through a critical point
    for (int v = 0; v < static_cast<int>(P.size()); ++v) {
        int x = pc.graph.successor[v];
        bool periodic = false;
        for (size_t k = 0; k < P.size() && !periodic; ++k, x = pc.graph.successor[x]) periodic = x == v;
        if (!periodic) continue;
        bool critical = false;
        int y = v;
        do {
            for (auto& c : pc.critical)
                if (chordal_distance(c, P.points[y]) < 1e-6) critical = true;
            y = pc.graph.successor[y];
        } while (y != v);
        if (!critical) rep.hyperbolic_asserted = false;
    }

    std::vector<Bipartition> injected_b(opt.curves.size());
    std::vector<char> injected_ok(opt.curves.size(), 0);
    for (size_t i = 0; i < opt.curves.size(); ++i) {
        try {
            injected_b[i] = induced_bipartition(opt.curves[i], P);
            injected_ok[i] = 1;
        } catch (const Error&) {
        }
    }
    std::map<size_t, std::vector<JordanCurve>> generated;
    auto candidates = [&](size_t bi) -> const std::vector<JordanCurve>& {
        auto it = generated.find(bi);
        if (it != generated.end()) return it->second;
        CandidateOptions co;
        co.resolution = opt.resolution;
        std::vector<JordanCurve> cs;
        try {
            cs = candidate_curves(P, bips[bi], co, tol);
        } catch (const Error&) {
        }
        return generated.emplace(bi, std::move(cs)).first->second;
    };

    for (int n = 1; n <= N && rep.fold == 0; ++n) {
        for (size_t bi = 0; bi < bips.size() && rep.fold == 0; ++bi) {
            DynStatus st = partition_dynamics(pc.graph, bips[bi], n).at(n);
            if (st == DynStatus::Neither) continue;
            std::vector<const JordanCurve*> list;
            for (size_t i = 0; i < opt.curves.size(); ++i)
                if (injected_ok[i] && injected_b[i] == bips[bi]) list.push_back(&opt.curves[i]);
            for (auto& c : candidates(bi)) list.push_back(&c);
            for (const JordanCurve* c : list) {
                LevelFinding f;
                f.level = n;
                f.curve = c->name;
                f.partition = bips[bi];
                f.status = st;
                try {
                    f.verdict = classify_curve(r, n, *c, tol, &pc);
                } catch (const Error& e) {
                    f.ok = false;
                    f.error = e.what();
                }
                rep.findings.push_back(f);
                if (!f.ok) continue;
                if (f.verdict.outcome == Outcome::Equator) {
                    rep.fold = n;
                    rep.equator_curve = c->name;
                    break;
                }
                if (f.verdict.outcome == Outcome::OREquator) {
                    ORCheck oc;
                    oc.level = n;
                    oc.curve = c->name;
                    if (2 * n <= N) {
                        try {
                            auto v2 = classify_curve(r, 2 * n, *c, tol, &pc);
                            oc.doubled = v2.label();
                            oc.reverified = v2.outcome == Outcome::Equator;
                        } catch (const Error& e) {
                            oc.doubled = e.what();
                        }
                    }
                    rep.or_evidence.push_back(oc);
                }
            }
        }
    }
    if (rep.fold > 0) rep.conclusion = Conclusion::MatingAtFold;
    else if (!rep.or_evidence.empty()) rep.conclusion = Conclusion::ORMatingEvidence;
    else rep.conclusion = Conclusion::NoEquatorFoundUpTo;
    return rep;
}

}  // namespace unmate
