// Between-sample consistency: (d, D) features against the ideal profile,
// iterative max-margin clustering, and a Weibull-shaped index on signed
// distances to the separating line.
#ifndef BUCKYQA_CONSISTENCY_HPP
#define BUCKYQA_CONSISTENCY_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "buckyqa/similarity.hpp"

namespace buckyqa {

inline constexpr Eigen::Index kMinimumSamples = 4;

class DegenerateGeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ConsistencyFeatures {
  std::vector<int> sample_indices;
  /// Column 0: d_i = |max mu_0 - max mu_i|; column 1: D_i = dissimilarity(mu_0, mu_i).
  Eigen::MatrixXd raw;
  Eigen::MatrixXd standardized;
  Eigen::RowVectorXd mean;
  /// Sample standard deviation per column; 0 marks a constant column (standardized to 0).
  Eigen::RowVectorXd stdev;

  [[nodiscard]] Eigen::Index size() const { return raw.rows(); }
};

/// Column-wise z-score with the n-1 standard deviation.
[[nodiscard]] ConsistencyFeatures standardize_features(Eigen::MatrixXd raw, std::vector<int> sample_indices = {});

/// `fixed` holds one fixed-effect profile per column. Requires at least kMinimumSamples columns.
[[nodiscard]] ConsistencyFeatures build_features(const Eigen::VectorXd& ideal, const Eigen::MatrixXd& fixed,
                                                 const SimilarityParams& params = {},
                                                 std::vector<int> sample_indices = {});

/// Deterministic 2-means: seeds at the farthest pair (lowest indices on ties),
/// seed-of-first-point cluster labelled -1.
[[nodiscard]] Eigen::VectorXi two_means_labels(const Eigen::MatrixXd& points, int max_iterations = 100);

struct MmcOptions {
  double C = 1.0;
  /// Allowed |sum eta|; defaults to N - 2.
  std::optional<int> balance;
  int max_iterations = 100;
  /// Overrides the 2-means start.
  std::optional<Eigen::VectorXi> initial_labels;
};

struct MmcResult {
  /// -1 consistent, +1 inconsistent.
  Eigen::VectorXi labels;
  Eigen::VectorXd weights;
  double offset = 0.0;
  /// tau_i = |w'z_i + b| / |w|.
  Eigen::VectorXd decision_values;
  bool converged = false;
  int iterations = 0;
  int balance = 0;
  double kkt_residual = 0.0;
  /// SVM primal objective per fit, in order.
  std::vector<double> objectives;
  std::string diagnostics;

  /// s_i = eta_i * tau_i.
  [[nodiscard]] Eigen::VectorXd signed_distances() const;
};

[[nodiscard]] MmcResult mmc_cluster(const Eigen::MatrixXd& points, const MmcOptions& options = {});
[[nodiscard]] MmcResult mmc_cluster(const ConsistencyFeatures& features, const MmcOptions& options = {});

struct InconsistencyIndex {
  Eigen::VectorXd values;
  double threshold = 0.0;
  double shape = 5.0;
  double scale = 2.0;
  /// m = min s_i, or the frozen value when one was supplied.
  double reference = 0.0;
};

/// C_i = 1 - exp(-((s_i - m)/scale)^shape), threshold = 1 - exp(-((-m)/scale)^shape).
/// A frozen `reference` (from a calibration run) replaces m; differences below 0 clamp to 0.
[[nodiscard]] InconsistencyIndex inconsistency_index(const Eigen::VectorXd& signed_distances, double shape = 5.0,
                                                     double scale = 2.0, std::optional<double> reference = {});
[[nodiscard]] InconsistencyIndex inconsistency_index(const MmcResult& mmc, double shape = 5.0, double scale = 2.0,
                                                     std::optional<double> reference = {});

/// Counts of index values in `bins` equal-width bins over [0, 1).
[[nodiscard]] std::vector<std::size_t> calibration_histogram(const Eigen::VectorXd& values, int bins = 10);

}  // namespace buckyqa

#endif  // BUCKYQA_CONSISTENCY_HPP
