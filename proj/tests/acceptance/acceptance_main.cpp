// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// with the observed runtime checked against the criterion's budget. Exit
// status is the number of failed criteria.
//
// Oracles here are independent of the library paths they check: direct
// wide-precision summation over the raw definitions, and deviation formulas
// recomputed locally rather than through the synthetic module.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "calib/bootstrap.hpp"
#include "calib/commands.hpp"
#include "calib/csv.hpp"
#include "calib/cumulative.hpp"
#include "calib/kernels.hpp"
#include "calib/render.hpp"
#include "calib/rng.hpp"
#include "calib/synthetic.hpp"
#include "test_util.hpp"

using namespace calib;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      detail = msg;
    }
  }
};

std::string fmt(double v, const char* spec = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// ---- criterion 1: incremental curve vs the direct cumulative definitions

void criterion_oracle_equivalence(Result& r) {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng::stream_at(900, trial) % 50;
    const auto samples = testutil::random_samples(n, 10000 + trial);
    const SortedDataset ds = sort_with_tie_randomization(samples, trial);
    const CumulativeCurve curve = cumulative_curve(ds);

    for (std::size_t k = 0; k < n; ++k) {
      const double p = ds.scores[k];
      long double f_direct = 0.0L;
      long double e_direct = 0.0L;
      for (const PairedSample& s : samples) {
        if (s.score <= p) {
          f_direct += s.score;
          e_direct += s.outcome;
        }
      }
      const double f_want = static_cast<double>(f_direct / n);
      const double e_want = static_cast<double>(e_direct / n);
      const auto [f_got, e_got] = cumulative_at(ds, p);
      r.expect(std::fabs(f_got - f_want) <= 1e-12,
               "F(p) off by " + fmt(f_got - f_want) + " at trial " + std::to_string(trial));
      r.expect(std::fabs(e_got - e_want) <= 1e-12,
               "E(p) off by " + fmt(e_got - e_want) + " at trial " + std::to_string(trial));
      r.expect(std::fabs(curve.ordinates[k] - (e_want - f_want)) <= 1e-12,
               "D_k off by " + fmt(curve.ordinates[k] - (e_want - f_want)) + " at trial " +
                   std::to_string(trial));
      if (!r.ok) return;
    }
  }
}

// ---- criterion 2: telescoping identity and step bound

void criterion_telescoping(Result& r) {
  const std::size_t n = 10000;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto samples = testutil::random_samples(n, 20000 + trial);
    const SortedDataset ds = sort_with_tie_randomization(samples, trial);
    const CumulativeCurve curve = cumulative_curve(ds);

    const long double mean_c = testutil::exact_sum(ds.outcomes) / n;
    const long double mean_p = testutil::exact_sum(ds.scores) / n;
    const double gap =
        std::fabs(curve.ordinates.back() - static_cast<double>(mean_c - mean_p));
    r.expect(gap <= 1e-12, "telescoping gap " + fmt(gap));

    double prev = 0.0;
    double max_step = 0.0;
    for (double d : curve.ordinates) {
      max_step = std::max(max_step, std::fabs(d - prev));
      prev = d;
    }
    r.expect(max_step <= 1.0 / static_cast<double>(n) + 1e-15,
             "max step " + fmt(max_step));
    if (!r.ok) return;
  }
}

// ---- criterion 3: null-hypothesis scale of the final deviation

void criterion_null_scale(Result& r) {
  const std::size_t n = 1000;
  const TrueModel model = make_model(ScoreFamily::dense_near_zero,
                                     DeviationFamily::calibrated, n);
  long double pq = 0.0L;
  for (double p : model.scores) pq += static_cast<long double>(p) * (1.0L - p);
  const double h = static_cast<double>(std::sqrt(static_cast<double>(pq)) / n);

  const int trials = 1000;
  long double sum_d = 0.0L;
  long double sum_d2 = 0.0L;
  for (int t = 0; t < trials; ++t) {
    const SortedDataset ds =
        to_dataset(model, draw_outcomes(model, rng::derive(3000, t)), 0);
    const double d_n = cumulative_curve(ds).ordinates.back();
    sum_d += d_n;
    sum_d2 += static_cast<long double>(d_n) * d_n;
  }
  const double mean = static_cast<double>(sum_d / trials);
  const double var =
      static_cast<double>((sum_d2 - sum_d * sum_d / trials) / (trials - 1));
  const double sd = std::sqrt(std::max(0.0, var));

  r.expect(sd >= 0.87 * h && sd <= 1.13 * h,
           "sample sd " + fmt(sd) + " outside [0.87,1.13]*h, h = " + fmt(h));
  r.expect(std::fabs(mean) <= 3.0 * h / std::sqrt(static_cast<double>(trials)),
           "mean D_n " + fmt(mean) + " exceeds 3h/sqrt(trials)");
}

// ---- criterion 4: secant slope recovers the model miscalibration

void criterion_slope_recovery(Result& r) {
  const std::size_t n = 10000;
  DeviationParams params;
  params.linear_scale = 0.1;
  const TrueModel model =
      make_model(ScoreFamily::equispaced, DeviationFamily::linear, n, params);

  const auto range_target = [&](std::size_t lo, std::size_t hi) {
    long double acc = 0.0L;
    for (std::size_t k = lo; k < hi; ++k) {
      acc += static_cast<long double>(model.true_probs[k]) - model.scores[k];
    }
    return static_cast<double>(acc / static_cast<long double>(hi - lo));
  };
  const double target_top = range_target(9000, 10000);
  const double target_full = range_target(0, 10000);

  const int trials = 500;
  long double top_sum = 0.0L, top_sum2 = 0.0L;
  long double full_sum = 0.0L, full_sum2 = 0.0L;
  for (int t = 0; t < trials; ++t) {
    const SortedDataset ds =
        to_dataset(model, draw_outcomes(model, rng::derive(4000, t)), 0);
    const CumulativeCurve curve = cumulative_curve(ds);
    const double top = secant_slope(curve, 9000, 10000).slope;
    const double full = secant_slope(curve, 0, 10000).slope;
    top_sum += top;
    top_sum2 += static_cast<long double>(top) * top;
    full_sum += full;
    full_sum2 += static_cast<long double>(full) * full;
  }
  const auto check_range = [&](long double sum, long double sum2, double target,
                               const char* what) {
    const double mean = static_cast<double>(sum / trials);
    const double var =
        static_cast<double>((sum2 - sum * sum / trials) / (trials - 1));
    const double se = std::sqrt(std::max(0.0, var) / trials);
    r.expect(std::fabs(mean - target) <= 3.0 * se,
             std::string(what) + " slope mean " + fmt(mean) + " vs target " +
                 fmt(target) + " (3se = " + fmt(3.0 * se) + ")");
  };
  check_range(top_sum, top_sum2, target_top, "top-decile");
  check_range(full_sum, full_sum2, target_full, "full-range");
}

// ---- criterion 5: exact flatness across the calibrated notch

void criterion_notch_flatness(Result& r) {
  for (ScoreFamily family : {ScoreFamily::equispaced, ScoreFamily::dense_near_zero}) {
    const TrueModel model = make_model(family, DeviationFamily::bump_notch, 1000);
    const CumulativeCurve curve = noiseless_curve(model);
    int pairs = 0;
    for (std::size_t k = 1; k < model.n; ++k) {
      if (std::fabs(model.scores[k - 1] - 0.25) < 0.02 &&
          std::fabs(model.scores[k] - 0.25) < 0.02) {
        r.expect(curve.ordinates[k] == curve.ordinates[k - 1],
                 "nonzero slope inside the notch at k = " + std::to_string(k + 1));
        ++pairs;
      }
    }
    r.expect(pairs > 10, "too few index pairs inside the notch");
    if (!r.ok) return;
  }
}

// ---- criterion 6: scheme coincidence on equispaced scores

void criterion_scheme_coincidence(Result& r) {
  const std::size_t n = 1000;
  const TrueModel model =
      make_model(ScoreFamily::equispaced, DeviationFamily::calibrated, n);
  const SortedDataset ds = to_dataset(model, draw_outcomes(model, 17), 0);
  for (std::size_t m : {10, 20}) {
    const ReliabilityDiagram a =
        reliability_diagram(ds, {BinningKind::equal_width, m});
    const ReliabilityDiagram b =
        reliability_diagram(ds, {BinningKind::equal_count, m});
    r.expect(a.bins.size() == m && b.bins.size() == m,
             "expected exactly m bins at m = " + std::to_string(m));
    if (!r.ok) return;
    for (std::size_t j = 0; j < m; ++j) {
      r.expect(a.bins[j].count == b.bins[j].count,
               "bin count mismatch at m = " + std::to_string(m));
      r.expect(std::fabs(a.bins[j].mean_score - b.bins[j].mean_score) <= 1e-12 &&
                   std::fabs(a.bins[j].success_rate - b.bins[j].success_rate) <= 1e-12,
               "bin means differ beyond 1e-12 at m = " + std::to_string(m));
    }
  }
}

// ---- criterion 7: bin partition properties under random schemes

void criterion_bin_partition(Result& r) {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng::stream_at(700, trial) % 300;
    auto samples = testutil::random_samples(n, 30000 + trial);
    if (n > 6) {
      samples[1].score = samples[0].score;  // force some ties
      samples[2].score = samples[0].score;
      samples[5].score = 0.0;
      samples[6].score = 1.0;
    }
    const SortedDataset ds = sort_with_tie_randomization(samples, trial);
    const bool equal_count = (rng::stream_at(701, trial) & 1) != 0;
    std::size_t m = 1 + rng::stream_at(702, trial) % 64;
    if (equal_count) m = 1 + m % n;
    const BinningScheme scheme{
        equal_count ? BinningKind::equal_count : BinningKind::equal_width, m};

    const auto bins = assign_bins(ds, scheme);
    r.expect(!bins.empty() && bins.front().begin == 0 && bins.back().end == n,
             "bins do not cover the index range at trial " + std::to_string(trial));
    std::size_t min_size = n, max_size = 0;
    for (std::size_t j = 0; j < bins.size(); ++j) {
      if (j > 0) {
        r.expect(bins[j].begin == bins[j - 1].end,
                 "bins not contiguous at trial " + std::to_string(trial));
      }
      const std::size_t size = bins[j].end - bins[j].begin;
      r.expect(size >= 1, "empty bin survived at trial " + std::to_string(trial));
      min_size = std::min(min_size, size);
      max_size = std::max(max_size, size);
    }
    if (equal_count) {
      r.expect(max_size - min_size <= 1,
               "equal-count sizes differ by more than 1 at trial " + std::to_string(trial));
    }

    const ReliabilityDiagram d = reliability_diagram(ds, scheme);
    long double wa = 0.0L, wb = 0.0L;
    for (const ReliabilityBin& b : d.bins) {
      wa += static_cast<long double>(b.mean_score) * b.count;
      wb += static_cast<long double>(b.success_rate) * b.count;
    }
    const double tol = 1e-12 * std::max<double>(1.0, static_cast<double>(n));
    r.expect(std::fabs(static_cast<double>(wa - testutil::exact_sum(ds.scores))) <= tol,
             "weighted mean-score consistency violated at trial " + std::to_string(trial));
    r.expect(std::fabs(static_cast<double>(wb - testutil::exact_sum(ds.outcomes))) <= tol,
             "weighted success-rate consistency violated at trial " + std::to_string(trial));
    if (!r.ok) return;
  }
}

// ---- criterion 8: bootstrap contract

void criterion_bootstrap_contract(Result& r) {
  // the documented default replicate count is 20
  r.expect(RunConfig{}.bootstrap_replicates == 20, "CLI default replicates != 20");
  {
    SortedDataset tiny;
    tiny.scores = {0.2, 0.5, 0.8};
    tiny.outcomes = {0.0, 1.0, 1.0};
    const BootstrapEnsemble def = bootstrap_diagrams(tiny, {BinningKind::equal_count, 2});
    r.expect(def.replicates.size() == 20, "bootstrap default replicate count != 20");
  }

  const std::size_t n = 1000;
  const TrueModel model =
      make_model(ScoreFamily::equispaced, DeviationFamily::calibrated, n);
  const BinningScheme scheme{BinningKind::equal_count, 20};

  // determinism: byte-identical ensemble CSV for a fixed seed
  {
    const SortedDataset ds = to_dataset(model, draw_outcomes(model, 5), 0);
    const std::string a = csv::format_ensemble(bootstrap_diagrams(ds, scheme, 20, 77));
    const std::string b = csv::format_ensemble(bootstrap_diagrams(ds, scheme, 20, 77));
    r.expect(a == b, "ensemble CSV not byte-identical for a fixed seed");
  }

  // envelope coverage on calibrated synthetic data
  int covered = 0;
  int total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SortedDataset ds =
        to_dataset(model, draw_outcomes(model, rng::derive(8000, trial)), 0);
    const ReliabilityDiagram diagram = reliability_diagram(ds, scheme);
    const BootstrapEnsemble ens =
        bootstrap_diagrams(ds, scheme, 20, rng::derive(8001, trial));
    for (std::size_t j = 0; j < diagram.bins.size(); ++j) {
      double lo = 1.0, hi = 0.0;
      for (const ReliabilityDiagram& rep : ens.replicates) {
        lo = std::min(lo, rep.bins[j].success_rate);
        hi = std::max(hi, rep.bins[j].success_rate);
      }
      const double b = diagram.bins[j].success_rate;
      if (b >= lo && b <= hi) ++covered;
      ++total;
    }
  }
  const double coverage = static_cast<double>(covered) / static_cast<double>(total);
  r.expect(coverage >= 0.90,
           "envelope coverage " + fmt(coverage) + " below 0.90 (" +
               std::to_string(covered) + "/" + std::to_string(total) + ")");
}

// ---- criterion 9: figure-set regeneration across all figure configurations

struct FigureConfig {
  const char* family;
  const char* score_family;
  std::size_t n;
};

void check_noiseless_panels(Result& r, const FigureConfig& fc, const fs::path& dir) {
  // independent recomputation of the expected noiseless curve
  const std::size_t n = fc.n;
  std::vector<double> scores(n);
  std::vector<double> devs(n);
  const std::string family = fc.family;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double p = t;
    if (std::string(fc.score_family) == "dense-near-0") p = t * t;
    if (std::string(fc.score_family) == "dense-near-1") p = std::sqrt(t);
    scores[i] = p;
    double dev = 0.0;
    if (family == "linear") dev = 0.1 * (2.0 * t - 1.0);
    if (family == "bump-notch") {
      dev = std::fabs(p - 0.25) < 0.02
                ? 0.0
                : 0.1 * std::exp(-(p - 0.25) * (p - 0.25) / 0.02);
    }
    if (family == "oscillation") dev = 0.06 * std::sin(8.0 * std::acos(-1.0) * p);
    const double clipped = std::min(1.0, std::max(0.0, p + dev));
    devs[i] = clipped - p;
  }

  const CumulativeCurve panel =
      csv::parse_curve(csv::read_text_file((dir / "cumulative_noiseless.csv").string()),
                       "cumulative_noiseless.csv");
  r.expect(panel.size() == n, "noiseless panel row count mismatch");
  if (panel.size() != n) return;

  long double acc = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    acc += devs[k];
    const double want = static_cast<double>(acc / static_cast<long double>(n));
    r.expect(std::fabs(panel.ordinates[k] - want) <= 1e-12,
             std::string(fc.family) + " noiseless ordinate off at k = " +
                 std::to_string(k + 1));
    if (!r.ok) return;
  }

  if (family == "calibrated") {
    for (double d : panel.ordinates) {
      r.expect(d == 0.0, "calibrated noiseless curve not exactly zero");
    }
  }
  if (family == "bump-notch") {
    int pairs = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::fabs(scores[k - 1] - 0.25) < 0.02 && std::fabs(scores[k] - 0.25) < 0.02) {
        r.expect(panel.ordinates[k] == panel.ordinates[k - 1],
                 "noiseless panel not flat inside the notch");
        ++pairs;
      }
    }
    r.expect(pairs > 0, "no notch pairs found in noiseless panel");
  }
}

void criterion_figure_set(Result& r) {
  const FigureConfig configs[] = {
      {"linear", "equispaced", 10000},      {"linear", "equispaced", 1000},
      {"linear", "equispaced", 100},        {"bump-notch", "dense-near-0", 10000},
      {"bump-notch", "dense-near-0", 1000}, {"bump-notch", "dense-near-0", 100},
      {"oscillation", "dense-near-1", 10000}, {"oscillation", "dense-near-1", 1000},
      {"oscillation", "dense-near-1", 100}, {"calibrated", "dense-near-0", 10000},
      {"calibrated", "dense-near-0", 1000}, {"calibrated", "dense-near-0", 100},
  };
  const char* stems[] = {"cumulative",
                         "cumulative_noiseless",
                         "reliability_equal_width_fine",
                         "reliability_equal_count_fine",
                         "reliability_equal_width_coarse",
                         "reliability_equal_count_coarse",
                         "reliability_noiseless"};

  testutil::TempDir dir("acceptance_figs");
  int set_index = 0;
  for (const FigureConfig& fc : configs) {
    RunConfig cfg;
    cfg.family = fc.family;
    cfg.score_family = fc.score_family;
    cfg.n = fc.n;
    cfg.seed = 1;
    cfg.output_dir = dir.file("set_" + std::to_string(set_index++));
    std::ostringstream sink;
    try {
      run_figure_set(cfg, sink);
    } catch (const std::exception& e) {
      r.expect(false, std::string("figure-set failed for ") + fc.family + "/" +
                          fc.score_family + " n=" + std::to_string(fc.n) + ": " + e.what());
      return;
    }

    int svg_count = 0;
    for (const char* stem : stems) {
      const fs::path path = fs::path(cfg.output_dir) / (std::string(stem) + ".svg");
      const bool exists = fs::exists(path);
      r.expect(exists, "missing panel " + path.string());
      if (!exists) continue;
      ++svg_count;
      const std::string defect = testutil::xml_defect(csv::read_text_file(path.string()));
      r.expect(defect.empty(), path.string() + ": " + defect);
    }
    r.expect(svg_count == 7, "expected 7 panels");
    r.expect(fs::exists(fs::path(cfg.output_dir) / "figure_set.json"),
             "missing figure_set.json");

    check_noiseless_panels(r, fc, cfg.output_dir);
    if (!r.ok) return;
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Result&)> fn;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "incremental curve matches the direct cumulative definitions (1000 datasets)",
       5.0, criterion_oracle_equivalence},
      {2, "telescoping identity and step bound (100 datasets, n = 10^4)", 5.0,
       criterion_telescoping},
      {3, "null-hypothesis scale of D_n (1000 trials, n = 1000)", 30.0,
       criterion_null_scale},
      {4, "secant slope recovers model miscalibration (500 trials, n = 10^4)", 60.0,
       criterion_slope_recovery},
      {5, "noiseless curve exactly flat across the calibrated notch", 1.0,
       criterion_notch_flatness},
      {6, "equal-width and equal-count diagrams coincide on equispaced scores", 1.0,
       criterion_scheme_coincidence},
      {7, "bin partition properties on 1000 random cases", 5.0, criterion_bin_partition},
      {8, "bootstrap defaults, determinism and envelope coverage", 60.0,
       criterion_bootstrap_contract},
      {9, "figure-set regeneration for all 12 figure configurations", 120.0,
       criterion_figure_set},
  };

  std::cout << "kernel backend: "
            << (kernels::active_isa() == kernels::Isa::avx2 ? "avx2" : "scalar") << "\n";

  int failures = 0;
  for (const Criterion& c : criteria) {
    Result r;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.fn(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.expect(elapsed < c.budget_s, "runtime " + fmt(elapsed) + " s exceeds " +
                                       fmt(c.budget_s) + " s budget");
    std::printf("%s  criterion %d: %s [%.2f s < %.0f s]%s%s\n", r.ok ? "PASS" : "FAIL",
                c.id, c.name, elapsed, c.budget_s, r.ok ? "" : " -- ",
                r.ok ? "" : r.detail.c_str());
    if (!r.ok) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu criteria passed\n", std::size(criteria));
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
