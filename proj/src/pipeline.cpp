#include "buckyqa/pipeline.hpp"

#include <fstream>
#include <set>

#include "csv.hpp"

namespace buckyqa {

EffectsSet decompose_dataset(const Dataset& dataset, const DecompositionConfig& config) {
  EffectsSet out;
  out.grid = dataset.grid;
  if (dataset.ideal) out.ideal = dataset.ideal->intensities;
  out.has_defective = true;
  out.samples.reserve(dataset.samples.size());
  for (const auto& g : dataset.samples) out.samples.push_back(decompose_baseline(g, config));
  return out;
}

ConsistencyOutcome assess_consistency(const ConsistencyFeatures& features, const RunConfig& config) {
  ConsistencyOutcome out;
  out.features = features;
  MmcOptions opts;
  opts.C = config.svm_c;
  opts.balance = config.balance;
  opts.max_iterations = config.mmc_max_iterations;
  try {
    out.mmc = mmc_cluster(features, opts);
  } catch (const DegenerateGeometryError& e) {
    out.values = Eigen::VectorXd::Zero(features.size());
    out.note = std::string("degenerate feature geometry: ") + e.what();
    return out;
  }
  out.index = inconsistency_index(*out.mmc, config.shape, config.scale, config.frozen_reference);
  out.values = out.index->values;
  out.note = out.mmc->diagnostics;
  return out;
}

AssessmentReport assess(const EffectsSet& effects, const RunConfig& config, std::vector<std::string> inputs,
                        std::string effects_origin) {
  config.validate();
  if (!effects.ideal) throw MissingIdealError("assess: the ideal profile (sample 0) is required for consistency");
  const auto n = effects.samples.size();
  if (n == 0) throw std::invalid_argument("assess: no samples");

  AssessmentReport r;
  r.config = config;
  r.config_hash = config_hash(config);
  r.inputs = std::move(inputs);
  r.effects_origin = std::move(effects_origin);

  SimilarityParams sp;
  sp.lag_window = config.lag_window;
  sp.center = config.center;

  std::vector<int> indices;
  Eigen::MatrixXd fixed(effects.ideal->size(), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    indices.push_back(effects.samples[i].sample_index);
    fixed.col(static_cast<Eigen::Index>(i)) = effects.samples[i].fixed;
  }
  r.consistency = assess_consistency(build_features(*effects.ideal, fixed, sp, indices), config);

  QualityInputs qi;
  qi.sample_indices = indices;
  qi.consistency = r.consistency.values;
  qi.uniformity.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = effects.samples[i];
    r.uniformity.push_back(assess_uniformity(s, sp, config.exclude_diagonal));
    qi.uniformity[static_cast<Eigen::Index>(i)] = r.uniformity.back().index;
    r.defects.push_back(defect_summary(s, config.defect_threshold));
    qi.defective.push_back(!r.defects.back().empty());
    qi.inconsistent.push_back(r.consistency.mmc && r.consistency.mmc->labels[static_cast<Eigen::Index>(i)] > 0);
  }
  r.quality = rank_and_flag(qi, {config.weight, config.q_threshold, config.u_threshold});
  return r;
}

FeatureTable read_feature_table(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  const auto c_sample = reader.require("sample");
  const auto c_d = reader.require("d");
  const auto c_D = reader.require("D");
  FeatureTable t;
  std::vector<double> d;
  std::vector<double> D;
  std::set<int> seen;
  while (reader.next()) {
    const int s = reader.index_field(c_sample, "sample", IngestErrorKind::MissingSampleIndex);
    if (s < 1) reader.fail(IngestErrorKind::MalformedRow, "sample index must be >= 1");
    if (!seen.insert(s).second) reader.fail(IngestErrorKind::DuplicateRow, "duplicate sample " + std::to_string(s));
    const double dv = reader.real_field(c_d, "d");
    const double Dv = reader.real_field(c_D, "D");
    if (dv < 0.0) reader.fail(IngestErrorKind::MalformedRow, "d must be >= 0");
    if (Dv < 0.0 || Dv > 1.0) reader.fail(IngestErrorKind::MalformedRow, "D must lie in [0, 1]");
    t.samples.push_back(s);
    d.push_back(dv);
    D.push_back(Dv);
  }
  if (t.samples.empty()) throw IngestError(IngestErrorKind::InvalidDataset, source + ": no feature rows");
  t.values.resize(static_cast<Eigen::Index>(d.size()), 2);
  for (std::size_t i = 0; i < d.size(); ++i) {
    t.values(static_cast<Eigen::Index>(i), 0) = d[i];
    t.values(static_cast<Eigen::Index>(i), 1) = D[i];
  }
  return t;
}

FeatureTable load_feature_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(IngestErrorKind::Io, "cannot open " + path.string());
  return read_feature_table(in, path.string());
}

const ChartSeries& ChartReport::find(ChartKind kind, const std::string& statistic) const {
  for (const auto& s : series) {
    if (s.kind == kind && s.statistic == statistic) return s;
  }
  throw std::out_of_range("ChartReport: no such series");
}

namespace {

InControl in_control_or_fallback(const Eigen::VectorXd& x, const RunConfig& config, const std::string& name,
                                 std::vector<std::string>& notes) {
  InControl p;
  if (x.size() < 2 || (config.in_control_prefix > 0 && config.in_control_prefix < 2)) {
    p.mean = x.head(std::max<Eigen::Index>(1, std::min<Eigen::Index>(x.size(), config.in_control_prefix))).mean();
    p.sigma = 0.0;
  } else {
    p = estimate_in_control(x, config.in_control_prefix, config.sigma_estimator);
  }
  if (!(p.sigma > 0.0)) {
    notes.push_back(name + ": in-control sigma is zero; charted with sigma = 1");
    p.sigma = 1.0;
  }
  return p;
}

}  // namespace

ChartReport run_charts(const FeatureTable& features, const RunConfig& config) {
  config.validate();
  if (config.in_control_prefix > features.values.rows()) {
    throw std::invalid_argument("chart: in_control_prefix exceeds the number of samples");
  }
  ChartReport r;
  r.samples = features.samples;
  const Eigen::VectorXd d = features.values.col(0);
  const Eigen::VectorXd D = features.values.col(1);
  r.d_params = in_control_or_fallback(d, config, "d", r.notes);
  r.D_params = in_control_or_fallback(D, config, "D", r.notes);

  const CusumParams cp{config.cusum_k, config.cusum_h};
  const EwmaParams ep{config.ewma_lambda, config.ewma_width, std::nullopt};
  r.series.push_back(cusum(d, r.d_params.mean, r.d_params.sigma, cp, "d"));
  r.series.push_back(ewma(d, r.d_params.mean, r.d_params.sigma, ep, "d"));
  r.series.push_back(cusum(D, r.D_params.mean, r.D_params.sigma, cp, "D"));
  r.series.push_back(ewma(D, r.D_params.mean, r.D_params.sigma, ep, "D"));

  if (features.values.rows() >= kMinimumSamples) {
    r.consistency = assess_consistency(standardize_features(features.values, features.samples), config);
  } else {
    r.notes.push_back("fewer than " + std::to_string(kMinimumSamples) + " samples; clustering skipped");
  }
  return r;
}

}  // namespace buckyqa
