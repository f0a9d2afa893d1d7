// buckyqa command-line front end.
//
// Exit codes: 0 success, 1 assess found a low-quality sample, 2 input or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "buckyqa/control_charts.hpp"
#include "buckyqa/decomposition.hpp"
#include "buckyqa/pipeline.hpp"
#include "buckyqa/report.hpp"
#include "buckyqa/run_config.hpp"
#include "buckyqa/sampling_design.hpp"
#include "buckyqa/spectra_io.hpp"

namespace {

using namespace buckyqa;

constexpr int kExitLowQuality = 1;
constexpr int kExitInput = 2;

struct Overrides {
  std::string config_path;
  std::optional<int> lag_window;
  std::optional<double> shape, scale, weight, q_threshold, u_threshold, svm_c, defect_threshold;
  std::optional<int> balance;
  std::optional<double> cusum_k, cusum_h, ewma_lambda, ewma_width;
  std::optional<int> in_control_prefix;
  std::optional<std::string> sigma_estimator, wavelet;
  std::optional<double> defect_budget, threshold_scale;

  void add_config(CLI::App* app) {
    app->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  }
  void add_scoring(CLI::App* app) {
    app->add_option("--lag-window", lag_window, "similarity lag window l");
    app->add_option("--shape", shape, "inconsistency shape parameter");
    app->add_option("--scale", scale, "inconsistency scale parameter");
    app->add_option("--svm-c", svm_c, "SVM regularization inside clustering");
    app->add_option("--balance", balance, "allowed |sum of labels| (default N-2)");
  }
  void add_quality(CLI::App* app) {
    app->add_option("--weight", weight, "consistency weight W1 in [0,1]");
    app->add_option("--q-threshold", q_threshold, "low-quality threshold on Q");
    app->add_option("--u-threshold", u_threshold, "nonuniform threshold on U");
    app->add_option("--defect-threshold", defect_threshold, "defective magnitude threshold");
  }
  void add_decomposition(CLI::App* app) {
    app->add_option("--wavelet", wavelet, "haar, db2 or db4");
    app->add_option("--defect-budget", defect_budget, "max fraction of nonzero defective points");
    app->add_option("--threshold-scale", threshold_scale, "multiplier on the universal threshold");
  }
  void add_charts(CLI::App* app) {
    app->add_option("--cusum-k", cusum_k, "CUSUM reference value (sigma units)");
    app->add_option("--cusum-h", cusum_h, "CUSUM decision limit (sigma units)");
    app->add_option("--ewma-lambda", ewma_lambda, "EWMA weight");
    app->add_option("--ewma-width", ewma_width, "EWMA limit width L");
    app->add_option("--in-control-prefix", in_control_prefix, "estimate mean/sigma from the first k samples (0 = all)");
    app->add_option("--sigma-estimator", sigma_estimator, "moving-range or stdev");
  }

  [[nodiscard]] RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    auto set = [](auto& dst, const auto& src) {
      if (src) dst = *src;
    };
    set(c.lag_window, lag_window);
    set(c.shape, shape);
    set(c.scale, scale);
    set(c.weight, weight);
    set(c.q_threshold, q_threshold);
    set(c.u_threshold, u_threshold);
    set(c.svm_c, svm_c);
    set(c.defect_threshold, defect_threshold);
    if (balance) c.balance = *balance;
    set(c.cusum_k, cusum_k);
    set(c.cusum_h, cusum_h);
    set(c.ewma_lambda, ewma_lambda);
    set(c.ewma_width, ewma_width);
    set(c.in_control_prefix, in_control_prefix);
    if (sigma_estimator) c.sigma_estimator = parse_sigma_estimator(*sigma_estimator);
    if (wavelet) c.decomposition.wavelet = parse_wavelet_family(*wavelet);
    set(c.decomposition.defect_budget, defect_budget);
    set(c.decomposition.threshold_scale, threshold_scale);
    c.validate();
    return c;
  }
};

struct Inputs {
  std::string data;
  std::string effects;
  std::string ideal;
  std::string positions;
  std::string features;
};

/// Effects from either a raw dataset (baseline decomposer) or an effects file.
EffectsSet load_inputs(const Inputs& in, const RunConfig& cfg, std::vector<std::string>& sources, std::string& origin) {
  if (in.data.empty() == in.effects.empty()) throw std::invalid_argument("give exactly one of --data or --effects");
  EffectsSet effects;
  if (!in.data.empty()) {
    Dataset ds = load_dataset(in.data);
    sources.push_back(in.data);
    if (!in.positions.empty()) {
      attach_positions(ds, in.positions);
      sources.push_back(in.positions);
    }
    if (!in.ideal.empty()) {
      if (ds.ideal) throw std::invalid_argument("ideal profile given twice (sample 0 rows and --ideal)");
      ds.ideal = load_ideal(in.ideal, ds.grid);
      sources.push_back(in.ideal);
    }
    effects = decompose_dataset(ds, cfg.decomposition);
    origin = "baseline";
  } else {
    EffectsLoadOptions opts;
    opts.defect_budget = cfg.decomposition.defect_budget;
    effects = load_effects(in.effects, opts);
    sources.push_back(in.effects);
    if (!in.ideal.empty()) {
      if (effects.ideal) throw std::invalid_argument("ideal profile given twice (sample 0 rows and --ideal)");
      effects.ideal = load_ideal(in.ideal, effects.grid).intensities;
      sources.push_back(in.ideal);
    }
    origin = "loaded";
  }
  return effects;
}

void write_to(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

int run_assess(const Inputs& in, const Overrides& ov, const std::string& json_path, const std::string& text_path) {
  const RunConfig cfg = ov.resolve();
  std::vector<std::string> sources;
  std::string origin;
  const EffectsSet effects = load_inputs(in, cfg, sources, origin);
  const AssessmentReport report = assess(effects, cfg, sources, origin);

  // Render everything before touching the filesystem so failures leave no partial output.
  std::ostringstream js;
  write_json_report(report, js);
  std::ostringstream ts;
  write_text_report(report, ts);
  if (!json_path.empty()) write_to(json_path, js.str());
  if (!text_path.empty()) write_to(text_path, ts.str());
  if (json_path.empty() && text_path.empty()) std::cout << ts.str();
  return report.quality.low_quality_samples().empty() ? 0 : kExitLowQuality;
}

int run_chart(const Inputs& in, const Overrides& ov, const std::string& out_path) {
  const RunConfig cfg = ov.resolve();
  FeatureTable table;
  if (!in.features.empty()) {
    if (!in.data.empty() || !in.effects.empty()) throw std::invalid_argument("--features excludes --data/--effects");
    table = load_feature_table(in.features);
  } else {
    std::vector<std::string> sources;
    std::string origin;
    const EffectsSet effects = load_inputs(in, cfg, sources, origin);
    if (!effects.ideal) throw MissingIdealError("chart: the ideal profile (sample 0) is required for d and D");
    SimilarityParams sp;
    sp.lag_window = cfg.lag_window;
    sp.center = cfg.center;
    Eigen::MatrixXd fixed(effects.ideal->size(), static_cast<Eigen::Index>(effects.samples.size()));
    for (std::size_t i = 0; i < effects.samples.size(); ++i) {
      fixed.col(static_cast<Eigen::Index>(i)) = effects.samples[i].fixed;
      table.samples.push_back(effects.samples[i].sample_index);
    }
    table.values = build_features(*effects.ideal, fixed, sp, table.samples).raw;
  }
  const ChartReport report = run_charts(table, cfg);
  std::ostringstream csv;
  write_chart_csv(report.series, report.samples, csv);
  if (!out_path.empty()) write_to(out_path, csv.str());
  write_chart_summary(report, std::cout);
  return 0;
}

int run_design(int n, int dims, std::uint64_t seed, int iterations, int restarts, int samples,
               const std::string& out_path) {
  const SamplingPlan plan = maximin_lhd(n, dims, iterations, seed, restarts);
  std::ostringstream csv;
  write_plan_csv(plan, csv, samples);
  write_to(out_path.empty() ? "-" : out_path, csv.str());
  if (!out_path.empty()) {
    std::cout << "maximin distance " << plan.score << " (start " << plan.initial_score << "), seed " << plan.seed
              << '\n';
  }
  return 0;
}

int run_validate(const Inputs& in) {
  Dataset ds = load_dataset(in.data);
  if (!in.positions.empty()) attach_positions(ds, in.positions);
  if (!in.ideal.empty()) {
    if (ds.ideal) throw std::invalid_argument("ideal profile given twice (sample 0 rows and --ideal)");
    ds.ideal = load_ideal(in.ideal, ds.grid);
  }
  const auto violations = validate(ds);
  for (const auto& v : violations) std::cout << describe(v) << '\n';
  if (!violations.empty()) return kExitInput;
  std::size_t profiles = 0;
  for (const auto& g : ds.samples) profiles += g.profiles.size();
  std::cout << "ok: " << ds.sample_count() << " samples, " << profiles << " profiles, " << ds.grid->size()
            << " grid points" << (ds.ideal ? ", ideal present" : ", no ideal") << '\n';
  return 0;
}

int run_decompose(const Inputs& in, const Overrides& ov, const std::string& out_path) {
  const RunConfig cfg = ov.resolve();
  Inputs only_data = in;
  only_data.effects.clear();
  std::vector<std::string> sources;
  std::string origin;
  const EffectsSet effects = load_inputs(only_data, cfg, sources, origin);
  std::ostringstream csv;
  write_effects(effects, csv);
  write_to(out_path.empty() ? "-" : out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quality assessment of nanomaterial Raman spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(buckyqa::kToolVersion));

  Inputs in;
  Overrides ov;
  std::string json_path;
  std::string text_path;
  std::string out_path;

  auto* assess = app.add_subcommand("assess", "score consistency, uniformity and overall quality per sample");
  assess->add_option("--data", in.data, "long-format spectra CSV")->check(CLI::ExistingFile);
  assess->add_option("--effects", in.effects, "precomputed effects CSV")->check(CLI::ExistingFile);
  assess->add_option("--ideal", in.ideal, "ideal profile CSV (if not in sample 0 rows)")->check(CLI::ExistingFile);
  assess->add_option("--positions", in.positions, "measurement positions CSV")->check(CLI::ExistingFile);
  assess->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
  assess->add_option("--text", text_path, "write the text report here ('-' for stdout)");
  ov.add_config(assess);
  ov.add_scoring(assess);
  ov.add_quality(assess);
  ov.add_decomposition(assess);

  auto* chart = app.add_subcommand("chart", "CUSUM/EWMA charts of d and D next to the clustering flags");
  chart->add_option("--features", in.features, "CSV with sample,d,D columns")->check(CLI::ExistingFile);
  chart->add_option("--data", in.data, "long-format spectra CSV")->check(CLI::ExistingFile);
  chart->add_option("--effects", in.effects, "precomputed effects CSV")->check(CLI::ExistingFile);
  chart->add_option("--ideal", in.ideal, "ideal profile CSV")->check(CLI::ExistingFile);
  chart->add_option("--out", out_path, "chart CSV output ('-' for stdout)");
  ov.add_config(chart);
  ov.add_scoring(chart);
  ov.add_charts(chart);
  ov.add_decomposition(chart);

  int n = 10;
  int dims = 2;
  std::uint64_t seed = 1;
  int iterations = 2000;
  int restarts = 1;
  int samples = 0;
  auto* design = app.add_subcommand("design", "maximin Latin hypercube measurement plan");
  design->add_option("-n,--points", n, "number of points")->check(CLI::PositiveNumber);
  design->add_option("--dims", dims, "dimensions")->check(CLI::PositiveNumber);
  design->add_option("--seed", seed, "random seed");
  design->add_option("--iterations", iterations, "swap proposals per restart")->check(CLI::NonNegativeNumber);
  design->add_option("--restarts", restarts, "independent restarts")->check(CLI::PositiveNumber);
  design->add_option("--samples", samples, "emit a positions file for this many samples (2-D only)")
      ->check(CLI::NonNegativeNumber);
  design->add_option("--out", out_path, "output CSV (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "check a dataset and report every violation");
  validate_cmd->add_option("--data", in.data, "long-format spectra CSV")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--ideal", in.ideal, "ideal profile CSV")->check(CLI::ExistingFile);
  validate_cmd->add_option("--positions", in.positions, "measurement positions CSV")->check(CLI::ExistingFile);

  auto* decompose = app.add_subcommand("decompose", "split spectra into fixed/normal/defective/noise effects");
  decompose->add_option("--data", in.data, "long-format spectra CSV")->required()->check(CLI::ExistingFile);
  decompose->add_option("--ideal", in.ideal, "ideal profile CSV")->check(CLI::ExistingFile);
  decompose->add_option("--out", out_path, "effects CSV output (default stdout)");
  ov.add_config(decompose);
  ov.add_decomposition(decompose);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*assess) return run_assess(in, ov, json_path, text_path);
    if (*chart) return run_chart(in, ov, out_path);
    if (*design) return run_design(n, dims, seed, iterations, restarts, samples, out_path);
    if (*validate_cmd) return run_validate(in);
    if (*decompose) return run_decompose(in, ov, out_path);
  } catch (const std::exception& e) {
    std::cerr << "buckyqa: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
