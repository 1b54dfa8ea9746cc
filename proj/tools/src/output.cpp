#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "run_config.hpp"

namespace plaquette::cli {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_provenance(const std::string& csv_path, const nlohmann::json& resolved) {
    const std::string path = csv_path + ".provenance.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write provenance file '" + path + "'");
    out << resolved.dump(2) << "\n";
}

namespace {

// plot geometry: fixed data window, y up
constexpr double kLim = 1.15;
constexpr double kSize = 640.0;
constexpr double kMargin = 48.0;
constexpr double kPlot = kSize - 2.0 * kMargin;

double px(double x) { return kMargin + (x + kLim) / (2.0 * kLim) * kPlot; }
double py(double y) { return kMargin + (kLim - y) / (2.0 * kLim) * kPlot; }

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_orbit_svg(const std::string& path, const std::vector<OrbitCenter>& centers,
                     const std::string& caption) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write SVG file '" + path + "'");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
        << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize
        << "\">\n";
    out << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlot
        << "\" height=\"" << kPlot << "\" fill=\"none\" stroke=\"#888\"/>\n";

    // axes through the origin and unit tick labels
    out << "<line x1=\"" << coord(px(-kLim)) << "\" y1=\"" << coord(py(0)) << "\" x2=\""
        << coord(px(kLim)) << "\" y2=\"" << coord(py(0))
        << "\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n";
    out << "<line x1=\"" << coord(px(0)) << "\" y1=\"" << coord(py(-kLim)) << "\" x2=\""
        << coord(px(0)) << "\" y2=\"" << coord(py(kLim))
        << "\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n";
    for (int v = -1; v <= 1; ++v) {
        out << "<text x=\"" << coord(px(v)) << "\" y=\"" << coord(kSize - kMargin + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#444\">" << v
            << "</text>\n";
        out << "<text x=\"" << coord(kMargin - 10) << "\" y=\"" << coord(py(v) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#444\">" << v
            << "</text>\n";
    }
    out << "<text x=\"" << coord(kSize / 2) << "\" y=\"" << coord(kSize - 12)
        << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#222\">x_c</text>\n";
    out << "<text x=\"14\" y=\"" << coord(kSize / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#222\" transform=\"rotate(-90 14 "
        << coord(kSize / 2) << ")\">y_c</text>\n";

    if (!centers.empty()) {
        const std::size_t stride = std::max<std::size_t>(1, centers.size() / 4000);
        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < centers.size(); i += stride)
            out << coord(px(centers[i].x)) << "," << coord(py(centers[i].y)) << " ";
        const auto& last = centers.back();
        out << coord(px(last.x)) << "," << coord(py(last.y));
        out << "\"/>\n";

        // traversal-direction arrowheads along the curve
        const int n_arrows = 8;
        for (int a = 0; a < n_arrows; ++a) {
            const std::size_t i =
                std::min(centers.size() - 2,
                         static_cast<std::size_t>((a + 0.5) / n_arrows * centers.size()));
            const double x0 = px(centers[i].x), y0 = py(centers[i].y);
            const double x1 = px(centers[i + 1].x), y1 = py(centers[i + 1].y);
            const double dx = x1 - x0, dy = y1 - y0;
            const double len = std::hypot(dx, dy);
            if (len < 1e-9) continue;
            const double ux = dx / len, uy = dy / len;
            const double s = 7.0;  // arrow size in px
            const double bx = x0 - s * ux, by = y0 - s * uy;
            out << "<polygon fill=\"#d62728\" points=\"" << coord(x0) << "," << coord(y0)
                << " " << coord(bx - 0.45 * s * uy) << "," << coord(by + 0.45 * s * ux)
                << " " << coord(bx + 0.45 * s * uy) << "," << coord(by - 0.45 * s * ux)
                << "\"/>\n";
        }
    }

    if (!caption.empty())
        out << "<text x=\"" << coord(kSize / 2) << "\" y=\"" << coord(kMargin - 16)
            << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#222\">" << caption
            << "</text>\n";
    out << "</svg>\n";
}

}  // namespace plaquette::cli
