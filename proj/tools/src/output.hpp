#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "plaquette/model.hpp"

namespace plaquette::cli {

// Canonical number formatting for CSV payloads: 17 significant digits,
// C locale, so repeated runs are byte-identical ("inf"/"nan" literals for
// the degenerate markers).
std::string num17(double v);

// Writes <csv_path>.provenance.json next to an output file; the JSON holds
// the fully resolved configuration needed to reproduce the file.
void write_provenance(const std::string& csv_path, const nlohmann::json& resolved);

// Standalone SVG of an orbit-center curve: polyline over [-1.15, 1.15]^2
// with arrowheads showing the traversal direction. No plotting dependency;
// CSV remains the canonical output.
void write_orbit_svg(const std::string& path, const std::vector<OrbitCenter>& centers,
                     const std::string& caption);

}  // namespace plaquette::cli
