#pragma once

#include <string>
#include <utility>

#include "calib/bootstrap.hpp"
#include "calib/cumulative.hpp"

namespace calib {

enum class PlotKind { cumulative, reliability };

struct PlotSpec {
  std::string title;
  int width_px = 640;
  int height_px = 480;
  std::string output_path;  // destination used by callers; rendering is pure
  PlotKind kind = PlotKind::cumulative;
};

// Vertical data range of a cumulative plot: [min D - h, max D + h] with the
// origin anchor D_0 = 0 included, so the scale-bar triangle always fits. A
// degenerate range (everything zero) widens to +/- 1e-3.
std::pair<double, double> cumulative_vertical_range(const CumulativeCurve& curve);

// Standalone SVG documents. Rendering is a pure function of its inputs:
// identical inputs give byte-identical output.
//
// The cumulative plot draws the polyline through (0,0) and all (k/n, D_k),
// an isosceles triangle at the origin with apexes at +h and -h, a linear
// upper axis for k/n and a lower axis labelled with the sorted scores at the
// k nearest five evenly spaced positions.
std::string render_cumulative(const CumulativeCurve& curve, const PlotSpec& spec);

// The reliability plot draws the dashed diagonal from (0,0) to (1,1) (mapped
// exactly to the plot-box corners), one light-gray polyline per bootstrap
// replicate beneath the main series, and the (mean_score, success_rate)
// points joined by a black polyline. Pass ensemble = nullptr for no
// replicate lines.
std::string render_reliability(const ReliabilityDiagram& diagram,
                               const BootstrapEnsemble* ensemble,
                               const PlotSpec& spec);

}  // namespace calib
