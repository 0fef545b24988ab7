#include "calib/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "calib/bootstrap.hpp"
#include "calib/csv.hpp"
#include "calib/cumulative.hpp"
#include "calib/error.hpp"
#include "calib/kernels.hpp"
#include "calib/render.hpp"
#include "calib/rng.hpp"

namespace calib {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Removes everything it wrote unless commit() ran, so a failed command does
// not leave partial outputs behind.
class OutputGuard {
public:
  ~OutputGuard() {
    if (committed_) return;
    for (const fs::path& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  void write(const std::string& path, std::string_view contents) {
    csv::write_text_file(path, contents);
    written_.push_back(path);
  }

  void commit() { committed_ = true; }

private:
  std::vector<fs::path> written_;
  bool committed_ = false;
};

std::string out_path(const RunConfig& config, const std::string& name) {
  fs::path dir = config.output_dir.empty() ? fs::path(".") : fs::path(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "'");
  return (dir / name).string();
}

SortedDataset load_sorted(const RunConfig& config) {
  if (config.input_path.empty()) throw Error("no input file given");
  const csv::Dataset data = csv::load_samples(config.input_path);
  return sort_with_tie_randomization(data.samples, rng::derive(config.seed, 1));
}

TrueModel model_from_config(const RunConfig& config) {
  return make_model(score_family_from_name(config.score_family),
                    deviation_family_from_name(config.family), config.n,
                    config.params);
}

void print_curve_summary(std::ostream& out, const SortedDataset& ds,
                         const CumulativeCurve& curve) {
  const std::size_t n = ds.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double mean_score = kernels::sum(std::span<const double>(ds.scores)) * inv_n;
  const double mean_outcome = kernels::sum(std::span<const double>(ds.outcomes)) * inv_n;
  const double d_n = curve.ordinates.back();
  const double full_slope = secant_slope(curve, 0, n).slope;
  out << "n " << n << '\n'
      << "mean_score " << fmt17(mean_score) << '\n'
      << "mean_outcome " << fmt17(mean_outcome) << '\n'
      << "final_diff " << fmt17(d_n) << '\n'
      << "triangle_half_height " << fmt17(curve.triangle_half_height) << '\n'
      << "full_range_secant_slope " << fmt17(full_slope) << '\n';
}

PlotSpec plot_spec(const RunConfig& config, const std::string& path, PlotKind kind,
                   const std::string& default_title) {
  PlotSpec spec;
  spec.title = config.title.empty() ? default_title : config.title;
  spec.output_path = path;
  spec.kind = kind;
  return spec;
}

}  // namespace

void run_cumulative(const RunConfig& config, std::ostream& out) {
  const SortedDataset ds = load_sorted(config);
  const CumulativeCurve curve = cumulative_curve(ds);

  OutputGuard guard;
  const std::string svg_path = out_path(config, "cumulative.svg");
  const std::string csv_path = out_path(config, "cumulative.csv");
  guard.write(svg_path,
              render_cumulative(curve, plot_spec(config, svg_path, PlotKind::cumulative,
                                                 "cumulative differences")));
  guard.write(csv_path, csv::format_curve(curve));
  guard.commit();

  print_curve_summary(out, ds, curve);
  out << "wrote " << svg_path << '\n' << "wrote " << csv_path << '\n';
}

void run_reliability(const RunConfig& config, std::ostream& out) {
  const SortedDataset ds = load_sorted(config);
  const BinningScheme scheme{config.scheme, config.bins};
  const ReliabilityDiagram diagram = reliability_diagram(ds, scheme);

  BootstrapEnsemble ensemble;
  const bool with_bootstrap = config.bootstrap_replicates > 0;
  if (with_bootstrap) {
    ensemble = bootstrap_diagrams(ds, scheme, config.bootstrap_replicates,
                                  rng::derive(config.seed, 2));
  }

  OutputGuard guard;
  const std::string svg_path = out_path(config, "reliability.svg");
  const std::string csv_path = out_path(config, "reliability.csv");
  guard.write(svg_path, render_reliability(
                            diagram, with_bootstrap ? &ensemble : nullptr,
                            plot_spec(config, svg_path, PlotKind::reliability,
                                      "reliability diagram")));
  guard.write(csv_path, csv::format_diagram(diagram));
  std::string boot_path;
  if (with_bootstrap) {
    boot_path = out_path(config, "bootstrap.csv");
    guard.write(boot_path, csv::format_ensemble(ensemble));
  }
  guard.commit();

  out << "n " << ds.size() << '\n'
      << "bins " << diagram.bins.size() << '\n'
      << "wrote " << svg_path << '\n' << "wrote " << csv_path << '\n';
  if (with_bootstrap) out << "wrote " << boot_path << '\n';
}

void run_simulate(const RunConfig& config, std::ostream& out) {
  const TrueModel model = model_from_config(config);
  const std::vector<double> outcomes = draw_outcomes(model, rng::derive(config.seed, 0));

  std::vector<PairedSample> samples(model.n);
  for (std::size_t i = 0; i < model.n; ++i) {
    samples[i] = {model.scores[i], outcomes[i]};
  }

  const std::string path =
      config.output_path.empty() ? out_path(config, "simulated.csv") : config.output_path;
  OutputGuard guard;
  guard.write(path, csv::format_samples(samples, model.true_probs));
  guard.commit();

  out << "family " << model.family_name << '\n'
      << "n " << model.n << '\n'
      << "wrote " << path << '\n';
}

void run_figure_set(const RunConfig& config, std::ostream& out) {
  const TrueModel model = model_from_config(config);
  const std::uint64_t outcome_seed = rng::derive(config.seed, 0);
  const std::uint64_t tie_seed = rng::derive(config.seed, 1);
  const SortedDataset ds = to_dataset(model, draw_outcomes(model, outcome_seed), tie_seed);

  const CumulativeCurve sampled = cumulative_curve(ds);
  const CumulativeCurve noiseless = noiseless_curve(model);

  // equal-count panels cannot use more bins than samples; figure-set clamps
  // instead of failing so degenerate runs (tiny n) still emit all 7 panels
  const auto count_bins = [&](std::size_t m) { return std::min(m, model.n); };

  struct Panel {
    std::string role;
    std::string plot;
    std::string data;
    std::string extra;  // ensemble CSV, when present
  };
  std::vector<Panel> panels;
  OutputGuard guard;

  const auto add_cumulative = [&](const std::string& role, const std::string& stem,
                                  const CumulativeCurve& curve, const std::string& title) {
    const std::string svg_path = out_path(config, stem + ".svg");
    const std::string csv_path = out_path(config, stem + ".csv");
    guard.write(svg_path, render_cumulative(
                              curve, plot_spec(config, svg_path, PlotKind::cumulative,
                                               title)));
    guard.write(csv_path, csv::format_curve(curve));
    panels.push_back({role, svg_path, csv_path, ""});
  };

  std::size_t bootstrap_slot = 0;
  const auto add_reliability = [&](const std::string& role, const std::string& stem,
                                   const ReliabilityDiagram& diagram, bool bootstrap,
                                   const std::string& title) {
    const std::string svg_path = out_path(config, stem + ".svg");
    const std::string csv_path = out_path(config, stem + ".csv");
    Panel panel{role, svg_path, csv_path, ""};
    BootstrapEnsemble ensemble;
    const bool with_boot = bootstrap && config.bootstrap_replicates > 0;
    if (with_boot) {
      ensemble = bootstrap_diagrams(ds, diagram.scheme, config.bootstrap_replicates,
                                    rng::derive(config.seed, 2 + bootstrap_slot));
      ++bootstrap_slot;
    }
    guard.write(svg_path, render_reliability(
                              diagram, with_boot ? &ensemble : nullptr,
                              plot_spec(config, svg_path, PlotKind::reliability, title)));
    guard.write(csv_path, csv::format_diagram(diagram));
    if (with_boot) {
      const std::string boot_path = out_path(config, stem + "_bootstrap.csv");
      guard.write(boot_path, csv::format_ensemble(ensemble));
      panel.extra = boot_path;
    }
    panels.push_back(panel);
  };

  const std::string suffix = " (" + model.family_name + ", n=" + std::to_string(model.n) + ")";
  add_cumulative("cumulative-sampled", "cumulative", sampled,
                 "cumulative differences" + suffix);
  add_cumulative("cumulative-noiseless", "cumulative_noiseless", noiseless,
                 "cumulative differences, exact expectation" + suffix);

  const BinningScheme width_fine{BinningKind::equal_width, config.bins_fine};
  const BinningScheme count_fine{BinningKind::equal_count, count_bins(config.bins_fine)};
  const BinningScheme width_coarse{BinningKind::equal_width, config.bins_coarse};
  const BinningScheme count_coarse{BinningKind::equal_count, count_bins(config.bins_coarse)};

  add_reliability("reliability-equal-width-fine", "reliability_equal_width_fine",
                  reliability_diagram(ds, width_fine), true,
                  "reliability, equal-width bins" + suffix);
  add_reliability("reliability-equal-count-fine", "reliability_equal_count_fine",
                  reliability_diagram(ds, count_fine), true,
                  "reliability, equal-count bins" + suffix);
  add_reliability("reliability-equal-width-coarse", "reliability_equal_width_coarse",
                  reliability_diagram(ds, width_coarse), true,
                  "reliability, equal-width bins, coarse" + suffix);
  add_reliability("reliability-equal-count-coarse", "reliability_equal_count_coarse",
                  reliability_diagram(ds, count_coarse), true,
                  "reliability, equal-count bins, coarse" + suffix);
  add_reliability("reliability-noiseless", "reliability_noiseless",
                  noiseless_diagram(model, width_fine), false,
                  "reliability, exact expectation" + suffix);

  nlohmann::json manifest;
  manifest["command"] = "figure-set";
  manifest["family"] = config.family;
  manifest["score_family"] = config.score_family;
  manifest["n"] = model.n;
  manifest["seed"] = config.seed;
  manifest["bins_fine"] = config.bins_fine;
  manifest["bins_coarse"] = config.bins_coarse;
  manifest["bootstrap_replicates"] = config.bootstrap_replicates;
  manifest["panels"] = nlohmann::json::array();
  for (const Panel& p : panels) {
    nlohmann::json j{{"role", p.role}, {"plot", p.plot}, {"data", p.data}};
    if (!p.extra.empty()) j["bootstrap_data"] = p.extra;
    manifest["panels"].push_back(j);
  }
  const std::string manifest_path = out_path(config, "figure_set.json");
  guard.write(manifest_path, manifest.dump(2) + "\n");
  guard.commit();

  for (const Panel& p : panels) out << "wrote " << p.plot << '\n';
  out << "wrote " << manifest_path << '\n';
}

}  // namespace calib
