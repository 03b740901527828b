#include "unmate/reference_curves.hpp"

#include "unmate/families.hpp"

namespace unmate {

namespace {

CurvePiece arc(cplx c, double r, double t0, double t1) { return CurvePiece::arc(c, r, t0, t1); }
CurvePiece seg(cplx a, cplx b) { return CurvePiece::segment(a, b); }

// two small caps joined by nested half circles
CurveSpec capture_template(double c1, double r1, double c2, double r2, double r3, double c4, double r4) {
    return CurveSpec::chain({arc(c1, r1, 0.5, 1.0), arc(c2, r2, 0.5, 0.0), arc(-1.0, r3, 1.0, 0.5),
                             arc(c4, r4, 0.5, 0.0)});
}

}  // namespace

std::vector<ReferenceCurve> reference_curves() {
    const cplx beta = beta3();
    const cplx I(0.0, 1.0);
    std::vector<ReferenceCurve> out;

    out.push_back({"omega+2:V", "omega+2", "fig9", CurveSpec::circle(-1.0 / (2.0 * beta), 0.8), 4});
    {
        double r = 0.3;
        cplx c = -1.0 / beta;
        out.push_back({"omega+2:VI", "omega+2", "fig10",
                       CurveSpec::chain({arc(c, r, 0.0, 0.5), seg(c - r, -1.0 - r), arc(-1.0, r, 0.5, 1.0),
                                         seg(-1.0 + r, c + r)}),
                       2});
    }
    out.push_back({"omega+2:VII", "omega+2", "fig11", CurveSpec::circle(-0.5, 0.8), 4});

    out.push_back({"omega+3:V", "omega+3", "fig12", CurveSpec::circle(-0.5, 0.8), 4});
    out.push_back({"omega+3:VI", "omega+3", "fig13",
                   CurveSpec::chain({arc(-1.0, 0.5, 0.0, 0.5), arc(0.0, 1.5, 0.5, 1.0), arc(1.0, 0.5, 0.0, 0.5),
                                     arc(0.0, 0.5, 1.0, 0.5)}),
                   2});
    out.push_back({"omega+3:VII", "omega+3", "fig14", CurveSpec::circle(0.5, 0.8), 4});

    out.push_back({"omega-3:V", "omega-3", "fig15", CurveSpec::circle(-0.5 * I, 1.0), 2});
    out.push_back({"omega-3:VI", "omega-3", "fig16",
                   CurveSpec::chain({arc(I, 0.5, 0.25, 0.75), arc(0.0, 0.5, 0.25, -0.25), arc(-I, 0.5, 0.25, 0.75),
                                     arc(0.0, 1.5, -0.25, 0.25)}),
                   2});
    out.push_back({"omega-3:VII", "omega-3", "fig17", CurveSpec::circle(0.5 * I, 1.0), 2});

    out.push_back({"omega-4:V", "omega-4", "fig18", CurveSpec::circle(0.5 * beta, 1.0), 2});
    {
        double r = 0.7;
        out.push_back({"omega-4:VI", "omega-4", "fig19",
                       CurveSpec::chain({arc(beta, r, 0.0, 0.5), seg(beta - r, 1.0 - r), arc(1.0, r, 0.5, 1.0),
                                         seg(1.0 + r, beta + r)}),
                       2});
    }
    out.push_back({"omega-4:VII", "omega-4", "fig20", CurveSpec::circle(0.5, 1.0), 2});

    out.push_back({"capture:2", "capture:2", "fig8",
                   CurveSpec::chain({arc(-1.0, 1.3, -0.25, 0.5), arc(-2.0, 0.3, 0.5, 1.0), arc(-1.0, 0.7, 0.5, -0.25),
                                     arc(cplx(-1.0, -1.0), 0.3, 0.25, 0.75)}),
                   1});
    out.push_back({"capture:3/2", "capture:3/2", "fig4", capture_template(-1.5, 0.3, -0.45, 0.75, 1.3, -2.05, 0.25), 2});
    out.push_back({"capture:4.1", "capture:4.1", "fig5",
                   capture_template(-1.5652, 0.1, -0.6826, 0.7826, 1.1, -1.8826, 0.2174), 1});
    {
        // the edges meet only to about 6e-5; the triangle is closed through its vertices
        cplx top(-1.3194, 1.2378 * 1.4394), left(-2.8557, -0.12), right(0.2169, -0.12);
        out.push_back({"capture:4.2", "capture:4.2", "fig6",
                       CurveSpec::chain({seg(top, left), seg(left, right), seg(right, top)}), 1});
    }
    {
        double r = 0.08;
        out.push_back({"capture:5.1", "capture:5.1", "fig7",
                       CurveSpec::chain({arc(-1.5917, r, 0.5, 1.0), arc(-1.44575, 0.14595 - r, 0.5, 0.0),
                                         arc(-1.2998, r, 0.5, 1.0), arc(-0.6499 + r, 0.6499, 0.5, 0.0),
                                         arc(-1.0, 1.0 + r, 1.0, 0.5), arc(-1.79585 - r, 0.20415, 0.5, 0.0)}),
                       2});
    }
    return out;
}

bool is_reference_curve(const std::string& id) {
    for (auto& c : reference_curves())
        if (c.id == id || c.figure == id) return true;
    return false;
}

ReferenceCurve reference_curve(const std::string& id) {
    for (auto& c : reference_curves())
        if (c.id == id || c.figure == id) return c;
    throw Error(ErrorKind::Usage, "unknown curve id '" + id + "'");
}

}  // namespace unmate
