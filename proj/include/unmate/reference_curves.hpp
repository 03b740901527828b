#pragma once

#include <string>
#include <vector>

#include "unmate/curve.hpp"

namespace unmate {

struct ReferenceCurve {
    std::string id;      // e.g. "omega+2:V"
    std::string map_id;  // catalog id of the map
    std::string figure;  // e.g. "fig9"
    CurveSpec spec;
    int figure_depth = 1;  // deepest preimage drawn in the figure
};

std::vector<ReferenceCurve> reference_curves();
// accepts a curve id or a figure tag
ReferenceCurve reference_curve(const std::string& id);
bool is_reference_curve(const std::string& id);

}  // namespace unmate
