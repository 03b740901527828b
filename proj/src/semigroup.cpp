#include "unmate/semigroup.hpp"

#include "unmate/families.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace unmate {

std::string FiniteSelfMap::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < k(); ++i) {
        if (i) os << ' ';
        os << 'p' << i + 1 << "->p" << image[i] + 1;
    }
    return os.str();
}

int FiniteSelfMap::code() const {
    int c = 0;
    for (int x : image) c = c * k() + x;
    return c;
}

FiniteSelfMap FiniteSelfMap::identity(int k) {
    FiniteSelfMap f;
    for (int i = 0; i < k; ++i) f.image.push_back(i);
    return f;
}

FiniteSelfMap FiniteSelfMap::from_code(int code, int k) {
    FiniteSelfMap f;
    f.image.assign(k, 0);
    for (int i = k - 1; i >= 0; --i) {
        f.image[i] = code % k;
        code /= k;
    }
    return f;
}

FiniteSelfMap FiniteSelfMap::parse(const std::string& s, int k) {
    FiniteSelfMap f;
    if (s.find("->") != std::string::npos) {
        std::istringstream is(s);
        std::string tok;
        std::map<int, int> m;
        while (is >> tok) {
            auto pos = tok.find("->");
            if (pos == std::string::npos || tok[0] != 'p' || tok[pos + 2] != 'p')
                throw Error(ErrorKind::Usage, "bad map token '" + tok + "'");
            m[std::stoi(tok.substr(1, pos - 1)) - 1] = std::stoi(tok.substr(pos + 3)) - 1;
        }
        int n = k > 0 ? k : static_cast<int>(m.size());
        f = identity(n);
        for (auto [a, b] : m) {
            if (a < 0 || a >= n || b < 0 || b >= n) throw Error(ErrorKind::Usage, "point out of range in '" + s + "'");
            f.image[a] = b;
        }
    } else {
        std::string t = s;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::istringstream is(t);
        int x;
        while (is >> x) f.image.push_back(x - 1);
        int n = f.k();
        for (int v : f.image)
            if (v < 0 || v >= n) throw Error(ErrorKind::Usage, "image out of range in '" + s + "'");
        if (k > 0 && n != k) throw Error(ErrorKind::SizeMismatch, "map has the wrong number of points");
    }
    return f;
}

FiniteSelfMap compose_fm(const FiniteSelfMap& f, const FiniteSelfMap& g) {
    if (f.k() != g.k()) throw Error(ErrorKind::SizeMismatch, "maps act on sets of different sizes");
    FiniteSelfMap h;
    h.image.resize(g.k());
    for (int i = 0; i < g.k(); ++i) h.image[i] = f.image[g.image[i]];
    return h;
}

FiniteSelfMap power(const FiniteSelfMap& f, int n) {
    FiniteSelfMap r = FiniteSelfMap::identity(f.k());
    for (int i = 0; i < n; ++i) r = compose_fm(f, r);
    return r;
}

bool is_periodic(const FiniteSelfMap& f) {
    std::vector<char> hit(f.k(), 0);
    for (int x : f.image) hit[x] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::string canonical_structure(const FiniteSelfMap& f) {
    const int k = f.k();
    std::vector<char> cyclic(k, 0);
    for (int i = 0; i < k; ++i) {
        int x = i;
        for (int s = 0; s < k; ++s) x = f.image[x];
        cyclic[x] = 1;
    }
    std::vector<std::vector<int>> pre(k);
    for (int i = 0; i < k; ++i)
        if (!cyclic[i]) pre[f.image[i]].push_back(i);
    std::vector<std::string> memo(k);
    std::function<std::string(int)> tree = [&](int v) {
        std::vector<std::string> ch;
        for (int u : pre[v]) ch.push_back(tree(u));
        std::sort(ch.begin(), ch.end());
        std::string s = "(";
        for (auto& c : ch) s += c;
        return s + ")";
    };
    std::vector<char> seen(k, 0);
    std::vector<std::string> comps;
    for (int i = 0; i < k; ++i) {
        if (!cyclic[i] || seen[i]) continue;
        std::vector<std::string> seq;
        int x = i;
        do {
            seen[x] = 1;
            seq.push_back(tree(x));
            x = f.image[x];
        } while (x != i);
        std::vector<std::string> best = seq;
        for (size_t r = 1; r < seq.size(); ++r) {
            std::vector<std::string> rot(seq.begin() + r, seq.end());
            rot.insert(rot.end(), seq.begin(), seq.begin() + r);
            if (rot < best) best = rot;
        }
        std::string c = "[";
        for (auto& s : best) c += s;
        comps.push_back(c + "]");
    }
    std::sort(comps.begin(), comps.end());
    std::string out;
    for (auto& c : comps) out += c;
    return out;
}

namespace {

struct SeriesDef {
    const char* name;
    const char* family;
    std::vector<int> rep;
};

const std::vector<SeriesDef>& series_defs() {
    static const std::vector<SeriesDef> defs = {
        {"P|", "periodic", {1, 2, 3, 0}},      {"P||A", "periodic", {1, 2, 0, 3}},
        {"P||B", "periodic", {1, 0, 3, 2}},    {"P|||", "periodic", {0, 1, 3, 2}},
        {"P||||", "periodic", {0, 1, 2, 3}},   {"S|A", "one-orbit", {1, 2, 3, 1}},
        {"S|B", "one-orbit", {1, 2, 3, 2}},    {"S|C", "one-orbit", {1, 2, 1, 2}},
        {"S|D", "one-orbit", {1, 0, 0, 0}},    {"S|E", "one-orbit", {1, 2, 3, 3}},
        {"S|F", "one-orbit", {1, 2, 2, 2}},    {"S|G", "one-orbit", {1, 1, 0, 0}},
        {"S|H", "one-orbit", {0, 0, 0, 0}},    {"S||A", "two-orbit", {0, 2, 3, 2}},
        {"S||B", "two-orbit", {0, 2, 3, 3}},   {"S||C", "two-orbit", {0, 2, 2, 2}},
        {"S||D", "two-orbit", {1, 1, 3, 3}},   {"S||E", "two-orbit", {1, 0, 3, 3}},
        {"S|||", "three-orbit", {0, 1, 3, 3}},
    };
    return defs;
}

const std::map<std::string, std::string>& name_by_structure() {
    static const std::map<std::string, std::string> m = [] {
        std::map<std::string, std::string> r;
        for (auto& d : series_defs()) r[canonical_structure(FiniteSelfMap{d.rep})] = d.name;
        return r;
    }();
    return m;
}

}  // namespace

std::vector<std::string> series_names() {
    std::vector<std::string> out;
    for (auto& d : series_defs()) out.push_back(d.name);
    return out;
}

SeriesLabel classify_series(const FiniteSelfMap& f) {
    SeriesLabel l;
    l.canonical = canonical_structure(f);
    if (f.k() == 4) {
        auto it = name_by_structure().find(l.canonical);
        if (it != name_by_structure().end()) l.name = it->second;
    }
    return l;
}

FiniteSelfMap named_map(const std::string& name) {
    // 0-based images on p1..p4
    static const std::map<std::string, std::vector<int>> m = {
        {"P|1", {1, 2, 3, 0}},   // p1->p2->p3->p4->p1
        {"P|6", {1, 3, 0, 2}},   // p1->p2->p4->p3->p1
        {"P||A1", {1, 2, 0, 3}}, // p1->p2->p3->p1, p4 fixed
        {"S|A1", {1, 2, 3, 1}},  // p1->p2->p3->p4->p2
        {"id", {0, 1, 2, 3}},
    };
    auto it = m.find(name);
    if (it == m.end()) throw Error(ErrorKind::Usage, "unknown named map '" + name + "'");
    return FiniteSelfMap{it->second};
}

std::vector<FiniteSelfMap> all_maps(int k) {
    if (k < 1 || k > 8) throw Error(ErrorKind::SizeGuard, "k must be in 1..8");
    int total = 1;
    for (int i = 0; i < k; ++i) total *= k;
    std::vector<FiniteSelfMap> out;
    out.reserve(total);
    for (int c = 0; c < total; ++c) out.push_back(FiniteSelfMap::from_code(c, k));
    return out;
}

ClosureResult closure(const std::vector<FiniteSelfMap>& gens, bool verify) {
    ClosureResult res;
    res.generators = gens;
    if (gens.empty()) return res;
    const int k = gens[0].k();
    if (k > 8) throw Error(ErrorKind::SizeGuard, "closure limited to k <= 8");
    for (auto& g : gens)
        if (g.k() != k) throw Error(ErrorKind::SizeMismatch, "generators act on sets of different sizes");
    std::map<std::vector<int>, char> seen;
    std::vector<FiniteSelfMap> queue;
    for (auto& g : gens)
        if (seen.emplace(g.image, 1).second) queue.push_back(g);
    for (size_t i = 0; i < queue.size(); ++i) {
        for (auto& g : gens) {
            FiniteSelfMap h = compose_fm(queue[i], g);
            if (seen.emplace(h.image, 1).second) queue.push_back(h);
        }
    }
    res.closure = queue;
    std::sort(res.closure.begin(), res.closure.end());
    if (verify) {
        res.closed = true;
        for (auto& a : res.closure) {
            for (auto& b : res.closure)
                if (!seen.count(compose_fm(a, b).image)) {
                    res.closed = false;
                    break;
                }
            if (!res.closed) break;
        }
    }
    return res;
}

namespace {

// closure size over codes for k = 4, no allocation
size_t closure_size4(const std::vector<int>& gens, std::bitset<256>* out = nullptr) {
    static int table[256][256];
    static bool init = false;
    if (!init) {
        for (int a = 0; a < 256; ++a)
            for (int b = 0; b < 256; ++b)
                table[a][b] = compose_fm(FiniteSelfMap::from_code(a, 4), FiniteSelfMap::from_code(b, 4)).code();
        init = true;
    }
    std::bitset<256> seen;
    int queue[256];
    int n = 0;
    for (int g : gens)
        if (!seen[g]) {
            seen[g] = true;
            queue[n++] = g;
        }
    for (int i = 0; i < n; ++i)
        for (int g : gens) {
            int h = table[queue[i]][g];
            if (!seen[h]) {
                seen[h] = true;
                queue[n++] = h;
            }
        }
    if (out) *out = seen;
    return static_cast<size_t>(n);
}

}  // namespace

SAGenerating verify_sa_generating() {
    SAGenerating out;
    std::vector<FiniteSelfMap> sa;
    for (auto& f : all_maps(4))
        if (classify_series(f).name == "S|A") sa.push_back(f);
    std::vector<char> used(sa.size(), 0);
    for (size_t i = 0; i < sa.size(); ++i) {
        if (used[i]) continue;
        FiniteSelfMap sq = compose_fm(sa[i], sa[i]);
        auto it = std::find(sa.begin(), sa.end(), sq);
        if (it == sa.end() || it - sa.begin() == static_cast<long>(i))
            throw Error(ErrorKind::NoSubsetFound, "S|A series is not closed under squaring");
        used[i] = used[it - sa.begin()] = 1;
        out.pairs.push_back({sa[i], sq});
    }
    const int npairs = static_cast<int>(out.pairs.size());
    for (int mask = 0; mask < (1 << npairs); ++mask) {
        std::vector<int> gens;
        for (int j = 0; j < npairs; ++j) gens.push_back(((mask >> j) & 1 ? out.pairs[j].second : out.pairs[j].first).code());
        ++out.selections_tried;
        std::bitset<256> members;
        if (closure_size4(gens, &members) != 232) continue;
        bool all_non_bijective = true;
        for (int c = 0; c < 256; ++c)
            if (members[c] && is_periodic(FiniteSelfMap::from_code(c, 4))) all_non_bijective = false;
        if (!all_non_bijective) continue;
        for (int g : gens) out.chosen.push_back(FiniteSelfMap::from_code(g, 4));
        out.result = closure(out.chosen);
        return out;
    }
    throw Error(ErrorKind::NoSubsetFound, "no one-per-pair selection of S|A generates the non-bijections");
}

PairSearch exhaustive_pair_search(int k) {
    if (k != 4) throw Error(ErrorKind::Precondition, "the pair search is implemented for k = 4");
    PairSearch ps;
    for (int a = 0; a < 256; ++a)
        for (int b = a; b < 256; ++b) {
            size_t n = closure_size4({a, b});
            ++ps.pairs_tested;
            ps.largest = std::max(ps.largest, n);
            if (n == 256) ps.any_full = true;
        }
    return ps;
}

std::vector<CensusRow> census(int k) {
    if (k != 4) throw Error(ErrorKind::Precondition, "named census exists for k = 4 only");
    std::map<std::string, int> counts;
    for (auto& f : all_maps(4)) counts[classify_series(f).name]++;
    std::vector<CensusRow> rows;
    for (auto& d : series_defs()) rows.push_back({d.name, d.family, counts[d.name]});
    return rows;
}

std::string census_csv(const std::vector<CensusRow>& rows) {
    std::ostringstream os;
    os << "family,series,count\n";
    int total = 0;
    for (auto& r : rows) {
        os << r.family << ',' << r.series << ',' << r.count << '\n';
        total += r.count;
    }
    os << "all,total," << total << '\n';
    return os.str();
}

// ---- compositive trick

namespace {

bool contains(const std::vector<SpherePoint>& set, const SpherePoint& p, double eps) {
    for (auto& q : set)
        if (chordal_distance(p, q) <= eps) return true;
    return false;
}

bool subset(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b, double eps) {
    for (auto& p : a)
        if (!contains(b, p, eps)) return false;
    return true;
}

std::vector<SpherePoint> critical_values(const RationalMap& r, const ToleranceConfig& tol) {
    std::vector<SpherePoint> out;
    for (auto& c : critical_points(r, tol)) {
        SpherePoint v = r(c);
        if (!contains(out, v, tol.eps_orbit)) out.push_back(v);
    }
    return out;
}

}  // namespace

namespace {

SpherePoint snap_point(const SpherePoint& p) {
    if (std::abs(p.den()) < 1e-13) return SpherePoint::infinity();
    if (std::abs(p.num()) < 1e-13) return SpherePoint::finite(0.0);
    return p;
}

// forward orbits of the given values under r1 o r2, evaluated factor by factor
std::vector<SpherePoint> composite_orbits(const RationalMap& r1, const RationalMap& r2,
                                          const std::vector<SpherePoint>& values, const ToleranceConfig& tol) {
    std::vector<SpherePoint> out;
    for (auto v : values) {
        SpherePoint x = snap_point(v);
        for (int it = 0; !contains(out, x, tol.eps_orbit); ++it) {
            if (it > tol.max_iter) throw Error(ErrorKind::OrbitBudgetExceeded, "composite orbit did not close");
            out.push_back(x);
            x = snap_point(r1(r2(x)));
        }
    }
    return out;
}

}  // namespace

CompositiveReport compositive_trick_check(const RationalMap& r1, const RationalMap& r2, const ToleranceConfig& tol) {
    CompositiveReport rep;
    if (r1.degree() * r2.degree() > 64) throw Error(ErrorKind::DegreeBudgetExceeded, "composition degree above 64");
    rep.p1 = postcritical_set(r1, tol).set.points;
    rep.p2 = postcritical_set(r2, tol).set.points;
    // C(R1 o R2) = C(R2) u R2^-1(C(R1)), so V(R1 o R2) = R1(V(R2)) u V(R1)
    std::vector<SpherePoint> v12;
    for (auto& c : critical_points(r2, tol)) {
        SpherePoint v = snap_point(r1(snap_point(r2(c))));
        if (!contains(v12, v, tol.eps_orbit)) v12.push_back(v);
    }
    for (auto& c : critical_points(r1, tol)) {
        SpherePoint v = snap_point(r1(c));
        if (!contains(v12, v, tol.eps_orbit)) v12.push_back(v);
    }
    rep.p12 = composite_orbits(r1, r2, v12, tol);
    const double eps = tol.eps_orbit;
    std::vector<SpherePoint> uni = rep.p1;
    uni.insert(uni.end(), rep.p2.begin(), rep.p2.end());
    rep.containment = subset(rep.p12, uni, eps);
    auto v1 = critical_values(r1, tol);
    bool sub_preserve = true;
    for (auto& p : rep.p1)
        if (!contains(rep.p1, r2(p), eps)) sub_preserve = false;
    rep.sub_preserved = true;
    for (auto& p : uni)
        if (!contains(uni, r1(p), eps) || !contains(uni, r2(p), eps)) rep.sub_preserved = false;
    rep.hypothesis = subset(rep.p2, rep.p1, eps) && subset(rep.p1, v1, eps) && subset(v1, rep.p1, eps) && sub_preserve;
    if (rep.hypothesis) {
        rep.equality = subset(rep.p12, rep.p1, eps) && subset(rep.p1, rep.p12, eps) && subset(v12, rep.p12, eps) &&
                       subset(rep.p12, v12, eps);
    }
    std::ostringstream os;
    os << "|P1|=" << rep.p1.size() << " |P2|=" << rep.p2.size() << " |P12|=" << rep.p12.size()
       << " sub_preserved=" << rep.sub_preserved << " containment=" << rep.containment << " hypothesis=" << rep.hypothesis << " equality=" << rep.equality;
    rep.detail = os.str();
    return rep;
}

CompositiveSurvey compositive_survey(int count, unsigned long long seed, const ToleranceConfig& tol) {
    auto cat = full_catalog();
    std::vector<std::vector<SpherePoint>> P(cat.size());
    for (size_t i = 0; i < cat.size(); ++i) P[i] = postcritical_set(cat[i].map, tol).set.points;
    std::vector<std::pair<size_t, size_t>> ok;
    for (size_t i = 0; i < cat.size(); ++i)
        for (size_t j = 0; j < cat.size(); ++j) {
            if (cat[i].map.degree() * cat[j].map.degree() > 64) continue;
            std::vector<SpherePoint> uni = P[i];
            uni.insert(uni.end(), P[j].begin(), P[j].end());
            bool good = true;
            for (auto& p : uni)
                if (!contains(uni, cat[i].map(p), tol.eps_orbit) || !contains(uni, cat[j].map(p), tol.eps_orbit)) {
                    good = false;
                    break;
                }
            if (good) ok.push_back({i, j});
        }
    CompositiveSurvey s;
    s.eligible = ok.size();
    if (ok.empty()) return s;
    std::mt19937_64 rng(seed);
    std::vector<size_t> idx(ok.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int n = 0; n < count; ++n) {
        // draws repeat only once every eligible pair has been used
        auto [i, j] = ok[idx[n % idx.size()]];
        CompositivePair cp{cat[i].name, cat[j].name, {}, {}};
        try {
            cp.report = compositive_trick_check(cat[i].map, cat[j].map, tol);
        } catch (const Error& e) {
            cp.error = e.what();
        }
        s.sampled.push_back(cp);
    }
    return s;
}

}  // namespace unmate
