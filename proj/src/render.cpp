#include "unmate/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include "json.hpp"
#include <sstream>
#include <thread>

#include "unmate/families.hpp"
#include "unmate/reference_curves.hpp"

namespace unmate {

void RenderConfig::validate() const {
    if (resolution < 64) throw Error(ErrorKind::Precondition, "resolution must be >= 64");
    if (!(eps_basin > 0)) throw Error(ErrorKind::Precondition, "eps_basin must be positive");
    if (!(width > 0)) throw Error(ErrorKind::Precondition, "window width must be positive");
    if (max_iter < 1) throw Error(ErrorKind::Precondition, "iteration cap must be positive");
}

cplx RenderConfig::pixel_center(int col, int row) const {
    double px = width / resolution;
    return {center.real() - 0.5 * width + (col + 0.5) * px, center.imag() + 0.5 * width - (row + 0.5) * px};
}

int BasinModel::label(const SpherePoint& x0) const {
    SpherePoint x = x0;
    for (int it = 0; it <= max_iter; ++it) {
        for (size_t j = 0; j < points.size(); ++j) {
            if (chordal_distance(x, points[j]) < eps) {
                int k = static_cast<int>(j);
                for (int s = 0; s < it; ++s) k = prev[k];
                return k;
            }
        }
        if (it == max_iter) break;
        try {
            x = map(x);
        } catch (const Error&) {
            return -1;
        }
    }
    return -1;
}

BasinModel basin_model(const RationalMap& r, int max_iter, double eps_basin, const ToleranceConfig& tol) {
    auto pc = postcritical_set(r, tol);
    const auto& succ = pc.graph.successor;
    const int m = static_cast<int>(succ.size());
    BasinModel bm{r, {}, {}, {}, {}, 0, max_iter, eps_basin};
    std::vector<int> index(m, -1);
    std::vector<char> seen(m, 0);
    for (int s = 0; s < m; ++s) {
        int x = s;
        for (int k = 0; k < m; ++k) x = succ[x];
        if (seen[x]) continue;
        std::vector<int> cyc;
        int y = x;
        do {
            cyc.push_back(y);
            seen[y] = 1;
            y = succ[y];
        } while (y != x);
        bool critical = false;
        for (int v : cyc)
            for (auto& c : pc.critical)
                if (chordal_distance(c, pc.set.points[v]) < 1e-6) critical = true;
        if (!critical)
            throw Error(ErrorKind::Precondition,
                        "postcritical cycle through " + pc.set.labels[x] + " is not superattracting; map not hyperbolic");
        const int base = static_cast<int>(bm.points.size());
        const int L = static_cast<int>(cyc.size());
        for (int i = 0; i < L; ++i) {
            bm.points.push_back(pc.set.points[cyc[i]]);
            bm.next.push_back(base + (i + 1) % L);
            bm.prev.push_back(base + (i + L - 1) % L);
            bm.cycle_of.push_back(bm.cycles);
        }
        ++bm.cycles;
    }
    return bm;
}

double BasinImage::resolved_fraction() const {
    if (labels.empty()) return 0;
    size_t ok = std::count_if(labels.begin(), labels.end(), [](int l) { return l >= 0; });
    return static_cast<double>(ok) / labels.size();
}

int BasinImage::distinct_labels() const {
    std::vector<char> seen(cycle_points.size(), 0);
    for (int l : labels)
        if (l >= 0) seen[l] = 1;
    return static_cast<int>(std::count(seen.begin(), seen.end(), 1));
}

namespace {

unsigned worker_count(unsigned w) {
    if (w) return w;
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

template <class F>
void parallel_for(size_t n, unsigned workers, F f) {
    workers = std::min<unsigned>(worker_count(workers), static_cast<unsigned>(std::max<size_t>(n, 1)));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) f(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

BasinImage basin_render(const RationalMap& r, const RenderConfig& cfg, const ToleranceConfig& tol) {
    cfg.validate();
    BasinModel bm = basin_model(r, cfg.max_iter, cfg.eps_basin, tol);
    BasinImage img;
    img.config = cfg;
    img.cycle_points = bm.points;
    img.cycle_of = bm.cycle_of;
    const int N = cfg.resolution;
    img.labels.assign(static_cast<size_t>(N) * N, -1);
    parallel_for(N, cfg.workers, [&](size_t row) {
        for (int col = 0; col < N; ++col)
            img.labels[row * N + col] = bm.label(SpherePoint::finite(cfg.pixel_center(col, static_cast<int>(row))));
    });
    return img;
}

const char* depth_color(int depth) {
    static const char* colors[] = {"#0000ff", "#008000", "#000000", "#e6c800", "#800080"};
    return colors[std::clamp(depth, 0, 4)];
}

namespace {

struct RGB {
    unsigned char r, g, b;
};

RGB parse_hex(const char* h) {
    unsigned v = std::stoul(std::string(h + 1), nullptr, 16);
    return {static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
}

const RGB palette[] = {{255, 224, 178}, {178, 223, 219}, {248, 187, 208}, {200, 230, 201},
                       {209, 196, 233}, {255, 249, 196}, {187, 222, 251}, {215, 204, 200}};

std::vector<cplx> pixel_polyline(const JordanCurve& c, const RenderConfig& cfg) {
    std::vector<cplx> out;
    out.reserve(c.size() + 1);
    const double s = cfg.resolution / cfg.width;
    for (size_t i = 0; i <= c.size(); ++i) {
        const auto& p = c.samples[i % c.size()];
        if (p.is_infinity()) {
            out.push_back({NAN, NAN});
            continue;
        }
        cplx z = p.value();
        out.push_back({(z.real() - cfg.center.real() + 0.5 * cfg.width) * s,
                       (cfg.center.imag() + 0.5 * cfg.width - z.imag()) * s});
    }
    return out;
}

// split into runs that stay near the window and have no long jumps
std::vector<std::vector<cplx>> clipped_runs(const std::vector<cplx>& pts, double res) {
    std::vector<std::vector<cplx>> runs;
    std::vector<cplx> cur;
    auto inside = [&](cplx p) {
        return std::isfinite(p.real()) && p.real() > -res && p.real() < 2 * res && p.imag() > -res && p.imag() < 2 * res;
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        bool ok = inside(pts[i]) && (cur.empty() || std::abs(pts[i] - cur.back()) < 0.5 * res);
        if (!ok) {
            if (cur.size() > 1) runs.push_back(cur);
            cur.clear();
            if (inside(pts[i])) cur.push_back(pts[i]);
            continue;
        }
        cur.push_back(pts[i]);
    }
    if (cur.size() > 1) runs.push_back(cur);
    return runs;
}

void draw_line(std::vector<unsigned char>& rgb, int N, cplx a, cplx b, RGB col) {
    double len = std::abs(b - a);
    int steps = std::max(1, static_cast<int>(std::ceil(len * 2)));
    for (int i = 0; i <= steps; ++i) {
        cplx p = a + (b - a) * (static_cast<double>(i) / steps);
        int x = static_cast<int>(std::floor(p.real())), y = static_cast<int>(std::floor(p.imag()));
        if (x < 0 || y < 0 || x >= N || y >= N) continue;
        size_t k = (static_cast<size_t>(y) * N + x) * 3;
        rgb[k] = col.r;
        rgb[k + 1] = col.g;
        rgb[k + 2] = col.b;
    }
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    if (std::string(buf) == "-0.000") return "0.000";
    return buf;
}

}  // namespace

void write_png(const std::string& path, int width, int height, const std::vector<unsigned char>& rgb) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error(ErrorKind::Usage, "cannot open " + path + " for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw Error(ErrorKind::Usage, "png encoding failed for " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(rgb.data() + static_cast<size_t>(y) * width * 3));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

std::string svg_document(const std::vector<CurveLayer>& layers, const RenderConfig& cfg, const std::string& png_name) {
    const int N = cfg.resolution;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << N << "\" height=\"" << N << "\" viewBox=\"0 0 " << N
       << ' ' << N << "\">\n";
    if (!png_name.empty())
        os << "<image href=\"" << png_name << "\" x=\"0\" y=\"0\" width=\"" << N << "\" height=\"" << N << "\"/>\n";
    else
        os << "<rect x=\"0\" y=\"0\" width=\"" << N << "\" height=\"" << N << "\" fill=\"#ffffff\"/>\n";
    // deepest layers first so the source curve stays on top
    std::vector<const CurveLayer*> order;
    for (auto& l : layers) order.push_back(&l);
    std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a->depth > b->depth; });
    for (auto* l : order) {
        os << "<g id=\"depth" << l->depth << "\" fill=\"none\" stroke=\"" << depth_color(l->depth)
           << "\" stroke-width=\"1.5\">\n";
        for (auto& c : l->curves.components) {
            for (auto& run : clipped_runs(pixel_polyline(c, cfg), N)) {
                os << "<polyline points=\"";
                for (size_t i = 0; i < run.size(); ++i) {
                    if (i) os << ' ';
                    os << fmt3(run[i].real()) << ',' << fmt3(run[i].imag());
                }
                os << "\"/>\n";
            }
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

FigureFiles overlay_figure(const std::optional<BasinImage>& image, const std::vector<CurveLayer>& layers,
                           const RenderConfig& cfg, const std::string& base_path) {
    cfg.validate();
    const int N = cfg.resolution;
    std::vector<unsigned char> rgb(static_cast<size_t>(N) * N * 3, 255);
    if (image) {
        if (image->config.resolution != N) throw Error(ErrorKind::Precondition, "basin image resolution differs");
        for (int y = 0; y < N; ++y)
            for (int x = 0; x < N; ++x) {
                int l = image->at(x, y);
                RGB c{96, 96, 96};
                if (l >= 0) c = palette[l % 8];
                bool edge = (x + 1 < N && image->at(x + 1, y) != l) || (y + 1 < N && image->at(x, y + 1) != l);
                if (edge) c = {40, 40, 40};
                size_t k = (static_cast<size_t>(y) * N + x) * 3;
                rgb[k] = c.r;
                rgb[k + 1] = c.g;
                rgb[k + 2] = c.b;
            }
    }
    std::vector<const CurveLayer*> order;
    for (auto& l : layers) order.push_back(&l);
    std::stable_sort(order.begin(), order.end(), [](auto a, auto b) { return a->depth > b->depth; });
    for (auto* l : order) {
        RGB col = parse_hex(depth_color(l->depth));
        for (auto& c : l->curves.components)
            for (auto& run : clipped_runs(pixel_polyline(c, cfg), N))
                for (size_t i = 0; i + 1 < run.size(); ++i) draw_line(rgb, N, run[i], run[i + 1], col);
    }
    FigureFiles f;
    f.png = base_path + ".png";
    f.svg = base_path + ".svg";
    write_png(f.png, N, N, rgb);
    std::ofstream(f.svg, std::ios::binary) << svg_document(layers, cfg, std::filesystem::path(f.png).filename().string());
    return f;
}

namespace {

// local chart coordinate in which p has modulus <= 1
struct LocalChart {
    bool inverted;
    cplx to(const SpherePoint& p) const {
        if (!inverted) return p.value();
        return p.den() / p.num();
    }
    SpherePoint from(cplx z) const { return inverted ? SpherePoint(1.0, z) : SpherePoint::finite(z); }
};

}  // namespace

ProximityResult julia_proximity_check(const RationalMap& r, const JordanCurve& equator, int depth,
                                      const ToleranceConfig& tol, double delta, int max_iter) {
    if (depth < 0) throw Error(ErrorKind::Precondition, "depth must be >= 0");
    BasinModel bm = basin_model(r, max_iter, 1e-3, tol);
    MultiCurve m;
    m.components = {equator};
    m.source_id = equator.name;
    std::vector<int> deg{1};
    for (int i = 0; i < depth; ++i) {
        auto l = lift_multi(r, m, deg, tol);
        m = l.curves;
        deg = l.covering_degrees;
    }
    ProximityResult res;
    res.components = static_cast<int>(m.components.size());
    std::vector<std::pair<const JordanCurve*, size_t>> work;
    for (auto& c : m.components)
        for (size_t i = 0; i < c.size(); ++i) work.push_back({&c, i});
    res.samples = work.size();
    std::vector<char> pass(work.size(), 0);
    parallel_for(work.size(), 0, [&](size_t k) {
        const JordanCurve& c = *work[k].first;
        const size_t i = work[k].second, n = c.size();
        const SpherePoint& p = c.samples[i];
        LocalChart ch{std::abs(p.num()) > std::abs(p.den())};
        cplx z = ch.to(p);
        cplx t = ch.to(c.samples[(i + 1) % n]) - ch.to(c.samples[(i + n - 1) % n]);
        cplx nrm = std::abs(t) > 0 ? cplx(0, 1) * t / std::abs(t) : cplx(1, 0);
        double h = delta * (1 + std::norm(z)) / 2;
        int a = bm.label(ch.from(z + h * nrm));
        int b = bm.label(ch.from(z - h * nrm));
        bool ok = a >= 0 && b >= 0 && a != b;
        if (!ok) {
            std::vector<int> seen;
            for (int j = 0; j < 8 && !ok; ++j) {
                int l = bm.label(ch.from(z + h * std::polar(1.0, M_PI * j / 4)));
                if (l < 0) continue;
                for (int s : seen)
                    if (s != l) ok = true;
                seen.push_back(l);
            }
        }
        pass[k] = ok;
    });
    res.passed = std::count(pass.begin(), pass.end(), 1);
    res.fraction = res.samples ? static_cast<double>(res.passed) / res.samples : 0;
    return res;
}

std::vector<std::string> figure_tags() {
    std::vector<std::string> t;
    for (auto& c : reference_curves()) t.push_back(c.figure);
    t.push_back("fig21");
    std::sort(t.begin(), t.end(), [](const std::string& a, const std::string& b) {
        return std::stoi(a.substr(3)) < std::stoi(b.substr(3));
    });
    return t;
}

FigureSpec figure_spec(const std::string& tag) {
    FigureSpec s;
    s.tag = tag;
    if (tag == "fig21") {
        s.map_id = "omega+3";
        s.render.center = 0.0;
        s.render.width = 4.0;
        return s;
    }
    if (!is_reference_curve(tag)) throw Error(ErrorKind::Usage, "unknown figure tag '" + tag + "'");
    auto pc = reference_curve(tag);
    s.tag = pc.figure;
    s.map_id = pc.map_id;
    s.curve_id = pc.id;
    s.depth = pc.figure_depth;
    // window: bounding box of the source curve and the finite postcritical points
    auto c = sample_parametric(pc.spec, 256);
    auto P = postcritical_set(catalog_entry(pc.map_id).map).set;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    auto grow = [&](const SpherePoint& p) {
        if (p.is_infinity() || std::abs(p.value()) > 1e3) return;
        cplx z = p.value();
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    };
    for (auto& p : c.samples) grow(p);
    for (auto& p : P.points) grow(p);
    s.render.center = cplx(0.5 * (x0 + x1), 0.5 * (y0 + y1));
    s.render.width = 1.4 * std::max(x1 - x0, y1 - y0);
    return s;
}

std::string figure_base_name(const std::string& map_id, const std::string& tag) {
    std::string m = map_id;
    for (auto& ch : m) {
        if (ch == ':') ch = '-';
        else if (ch == '/') ch = '_';
    }
    return m + "_" + tag;
}

std::string render_figure(const FigureSpec& spec, const std::string& out_dir, int curve_resolution,
                          const ToleranceConfig& tol) {
    using nlohmann::ordered_json;
    spec.render.validate();
    auto entry = catalog_entry(spec.map_id);
    const RationalMap& r = entry.map;
    auto pc = postcritical_set(r, tol);
    std::vector<CurveLayer> layers;
    ordered_json layer_meta = ordered_json::array();
    if (!spec.curve_id.empty()) {
        auto pcv = reference_curve(spec.curve_id);
        JordanCurve src = sample_parametric(pcv.spec, curve_resolution);
        src.name = pcv.id;
        MoebiusTransform chart = default_chart(src, pc.set);
        MultiCurve m;
        m.components = {src};
        m.source_id = src.name;
        m.map_id = spec.map_id;
        std::vector<std::vector<int>> degs{{1}};
        layers.push_back({m, 0});
        for (int d = 1; d <= spec.depth; ++d) {
            auto l = lift_multi(r, m, degs.back(), tol);
            m = l.curves;
            degs.push_back(l.covering_degrees);
            layers.push_back({m, d});
        }
        for (size_t li = 0; li < layers.size(); ++li) {
            const auto& L = layers[li];
            ordered_json comps = ordered_json::array();
            for (size_t ci = 0; ci < L.curves.components.size(); ++ci) {
                ordered_json cj;
                cj["samples"] = L.curves.components[ci].size();
                cj["covering_degree"] = degs[li].at(ci);
                try {
                    auto side = side_partition(L.curves.components[ci], pc.set, chart);
                    cj["inside"] = side.inside;
                    cj["winding"] = side.winding;
                } catch (const Error& e) {
                    cj["inside"] = nullptr;
                    cj["winding_error"] = e.what();
                }
                comps.push_back(cj);
            }
            ordered_json lj;
            lj["depth"] = L.depth;
            lj["color"] = depth_color(L.depth);
            lj["components"] = L.curves.components.size();
            lj["detail"] = comps;
            layer_meta.push_back(lj);
        }
    }
    std::optional<BasinImage> img;
    if (spec.basins) img = basin_render(r, spec.render, tol);
    std::filesystem::create_directories(out_dir);
    std::string base = (std::filesystem::path(out_dir) / figure_base_name(spec.map_id, spec.tag)).string();
    auto files = overlay_figure(img, layers, spec.render, base);

    ordered_json j;
    j["figure"] = spec.tag;
    j["map"] = spec.map_id;
    j["curve"] = spec.curve_id.empty() ? ordered_json(nullptr) : ordered_json(spec.curve_id);
    j["depth"] = spec.depth;
    ordered_json cfg;
    cfg["center"] = {spec.render.center.real(), spec.render.center.imag()};
    cfg["width"] = spec.render.width;
    cfg["resolution"] = spec.render.resolution;
    cfg["max_iter"] = spec.render.max_iter;
    cfg["eps_basin"] = spec.render.eps_basin;
    cfg["basins"] = spec.basins;
    cfg["curve_resolution"] = curve_resolution;
    cfg["eps_root"] = tol.eps_root;
    cfg["eps_orbit"] = tol.eps_orbit;
    cfg["eps_curve"] = tol.eps_curve;
    cfg["max_refine_depth"] = tol.max_refine_depth;
    j["config"] = cfg;
    ordered_json pts = ordered_json::array();
    for (auto& l : pc.set.labels) pts.push_back(l);
    j["postcritical"] = pts;
    j["layers"] = layer_meta;
    if (img) {
        ordered_json b;
        b["resolved_fraction"] = img->resolved_fraction();
        b["cycle_points"] = img->cycle_points.size();
        b["labels_present"] = img->distinct_labels();
        j["basins"] = b;
    }
    j["png"] = std::filesystem::path(files.png).filename().string();
    j["svg"] = std::filesystem::path(files.svg).filename().string();
    std::string text = j.dump(2) + "\n";
    std::ofstream(base + ".json", std::ios::binary) << text;
    return text;
}

}  // namespace unmate
