#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bandgrowth/analyze.hpp"
#include "bandgrowth/growth.hpp"
#include "bandgrowth/tridiag.hpp"
#include "bandgrowth/window_matrix.hpp"

namespace bandgrowth {

using Json = nlohmann::ordered_json;

// Matrix files: {"field": {"kind":"gfp","p":7} | {"kind":"q"}, "window": N,
//                "entries": [[i, j, "value"], ...]}
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);
Json matrix_to_json(const WindowMatrix& w);
/// ParseError on malformed input, OutOfRange on indices outside the window.
WindowMatrix matrix_from_json(const Json& j);
WindowMatrix read_matrix_file(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// "position,bandwidth" rows.
std::string profile_csv(const BandProfile& p);

Json to_json(const ExponentFit& fit);
Json to_json(const PowerGrowthReport& rep, bool with_samples = false);
Json to_json(const FlagReport& rep);
Json to_json(const GrowthEstimate& est);
Json to_json(const ConstantsSeries& cs);
Json to_json(const ScatterReport& sr);
Json to_json(const FreenessResult& fr);
Json to_json(const Combination& c);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static line chart.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<PlotSeries>& series);

}  // namespace bandgrowth
