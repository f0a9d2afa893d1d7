// Run configuration: JSON file plus command-line overrides.
#ifndef BUCKYQA_RUN_CONFIG_HPP
#define BUCKYQA_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "buckyqa/control_charts.hpp"
#include "buckyqa/decomposition.hpp"

namespace buckyqa {

struct RunConfig {
  // Similarity.
  int lag_window = 2;
  bool center = false;
  // Consistency.
  double shape = 5.0;
  double scale = 2.0;
  double svm_c = 1.0;
  /// Unset means N - 2.
  std::optional<int> balance;
  int mmc_max_iterations = 100;
  /// Frozen minimum signed distance from a calibration run.
  std::optional<double> frozen_reference;
  // Uniformity and quality.
  bool exclude_diagonal = false;
  double weight = 0.3;
  double q_threshold = 0.5;
  double u_threshold = 0.5;
  /// Defective peaks above this magnitude raise the defective flag.
  double defect_threshold = 0.0;
  // Charts.
  double cusum_k = 0.5;
  double cusum_h = 5.0;
  double ewma_lambda = 0.2;
  double ewma_width = 3.0;
  int in_control_prefix = 0;
  SigmaEstimator sigma_estimator = SigmaEstimator::MovingRange;
  // Decomposition.
  DecompositionConfig decomposition;

  void validate() const;
};

/// Unknown keys are rejected so that typos do not silently fall back to defaults.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
[[nodiscard]] nlohmann::json to_json(const RunConfig& config);

/// FNV-1a 64 of the compact JSON form, as 16 hex digits.
[[nodiscard]] std::string config_hash(const RunConfig& config);
[[nodiscard]] std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace buckyqa

#endif  // BUCKYQA_RUN_CONFIG_HPP
