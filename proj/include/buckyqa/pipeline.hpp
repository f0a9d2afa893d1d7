// End-to-end orchestration: effects -> consistency / uniformity / defects -> quality,
// and the chart comparison over (d, D) features.
#ifndef BUCKYQA_PIPELINE_HPP
#define BUCKYQA_PIPELINE_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "buckyqa/consistency.hpp"
#include "buckyqa/control_charts.hpp"
#include "buckyqa/decomposition.hpp"
#include "buckyqa/quality.hpp"
#include "buckyqa/run_config.hpp"
#include "buckyqa/spectra_io.hpp"
#include "buckyqa/uniformity.hpp"

namespace buckyqa {

inline constexpr const char* kToolVersion = "0.1.0";

class MissingIdealError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

[[nodiscard]] EffectsSet decompose_dataset(const Dataset& dataset, const DecompositionConfig& config = {});

struct ConsistencyOutcome {
  ConsistencyFeatures features;
  /// Empty when the feature geometry is degenerate (all samples identical).
  std::optional<MmcResult> mmc;
  std::optional<InconsistencyIndex> index;
  /// Per-sample C; all zero when degenerate.
  Eigen::VectorXd values;
  std::string note;
};

[[nodiscard]] ConsistencyOutcome assess_consistency(const ConsistencyFeatures& features, const RunConfig& config);

struct AssessmentReport {
  std::string tool_version = kToolVersion;
  RunConfig config;
  std::string config_hash;
  std::vector<std::string> inputs;
  /// "baseline" or "loaded".
  std::string effects_origin;
  ConsistencyOutcome consistency;
  std::vector<UniformityResult> uniformity;
  std::vector<std::vector<DefectEntry>> defects;
  QualityReport quality;
};

/// Throws MissingIdealError when `effects` carries no ideal profile.
[[nodiscard]] AssessmentReport assess(const EffectsSet& effects, const RunConfig& config,
                                      std::vector<std::string> inputs = {}, std::string effects_origin = "loaded");

struct FeatureTable {
  std::vector<int> samples;
  /// Columns d, D.
  Eigen::MatrixXd values;
};

/// CSV with sample,d,D columns.
[[nodiscard]] FeatureTable read_feature_table(std::istream& in, const std::string& source = "<stream>");
[[nodiscard]] FeatureTable load_feature_table(const std::filesystem::path& path);

struct ChartReport {
  std::vector<int> samples;
  InControl d_params;
  InControl D_params;
  /// CUSUM on d, EWMA on d, CUSUM on D, EWMA on D.
  std::vector<ChartSeries> series;
  /// Present when there are enough samples for clustering.
  std::optional<ConsistencyOutcome> consistency;
  std::vector<std::string> notes;

  [[nodiscard]] const ChartSeries& find(ChartKind kind, const std::string& statistic) const;
};

[[nodiscard]] ChartReport run_charts(const FeatureTable& features, const RunConfig& config);

}  // namespace buckyqa

#endif  // BUCKYQA_PIPELINE_HPP
