#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unmate/curve.hpp"

namespace unmate {

struct RenderConfig {
    cplx center = 0.0;
    double width = 4.0;  // plotting window is width x width
    int resolution = 512;
    int max_iter = 500;
    double eps_basin = 1e-3;
    unsigned workers = 0;  // 0 = hardware concurrency

    void validate() const;
    cplx pixel_center(int col, int row) const;
};

// attracting cycles of a hyperbolic postcritically finite map
struct BasinModel {
    RationalMap map;
    std::vector<SpherePoint> points;  // cyclic postcritical points
    std::vector<int> next, prev;      // within each cycle
    std::vector<int> cycle_of;
    int cycles = 0;
    int max_iter = 500;
    double eps = 1e-3;

    // -1 = Unresolved; otherwise the cycle point whose orbit x shadows
    int label(const SpherePoint& x) const;
};

// throws Precondition when some postcritical cycle carries no critical point
BasinModel basin_model(const RationalMap& r, int max_iter = 500, double eps_basin = 1e-3,
                       const ToleranceConfig& tol = {});

struct BasinImage {
    RenderConfig config;
    std::vector<int> labels;  // row-major, row 0 at the top
    std::vector<SpherePoint> cycle_points;
    std::vector<int> cycle_of;

    int at(int col, int row) const { return labels[static_cast<size_t>(row) * config.resolution + col]; }
    double resolved_fraction() const;
    int distinct_labels() const;
};

BasinImage basin_render(const RationalMap& r, const RenderConfig& cfg, const ToleranceConfig& tol = {});

struct CurveLayer {
    MultiCurve curves;
    int depth = 0;
};

const char* depth_color(int depth);

struct FigureFiles {
    std::string png, svg, sidecar;
};

// writes <base>.png and <base>.svg; the SVG references the PNG by file name
FigureFiles overlay_figure(const std::optional<BasinImage>& image, const std::vector<CurveLayer>& layers,
                           const RenderConfig& cfg, const std::string& base_path);
std::string svg_document(const std::vector<CurveLayer>& layers, const RenderConfig& cfg, const std::string& png_name);
void write_png(const std::string& path, int width, int height, const std::vector<unsigned char>& rgb);

struct ProximityResult {
    double fraction = 0;
    size_t samples = 0;
    size_t passed = 0;
    int components = 0;
};

ProximityResult julia_proximity_check(const RationalMap& r, const JordanCurve& equator, int depth,
                                      const ToleranceConfig& tol = {}, double delta = 1e-2, int max_iter = 500);

// figure reproduction by tag: fig4 ... fig21
struct FigureSpec {
    std::string tag;
    std::string map_id;
    std::string curve_id;  // empty for basin-only figures
    int depth = 0;
    RenderConfig render;
    bool basins = true;
};

std::vector<std::string> figure_tags();
FigureSpec figure_spec(const std::string& tag);
std::string figure_base_name(const std::string& map_id, const std::string& tag);
// returns the sidecar JSON text; files land in out_dir
std::string render_figure(const FigureSpec& spec, const std::string& out_dir, int curve_resolution = 512,
                          const ToleranceConfig& tol = {});

}  // namespace unmate
