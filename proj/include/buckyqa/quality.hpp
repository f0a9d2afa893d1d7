// Composite quality Q = W1 * C + (1 - W1) * U, ranking and flags.
#ifndef BUCKYQA_QUALITY_HPP
#define BUCKYQA_QUALITY_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace buckyqa {

namespace detail {
template <typename Scalar>
void check_weight(Scalar w) {
  if (!(w >= Scalar(0) && w <= Scalar(1))) throw std::invalid_argument("quality weight must lie in [0, 1]");
}
}  // namespace detail

template <typename Scalar>
Scalar overall_quality(Scalar consistency, Scalar uniformity, Scalar weight) {
  detail::check_weight(weight);
  return weight * consistency + (Scalar(1) - weight) * uniformity;
}

/// Element-wise over arrays or vectors of C and U.
template <typename DerivedC, typename DerivedU>
auto overall_quality(const Eigen::DenseBase<DerivedC>& consistency, const Eigen::DenseBase<DerivedU>& uniformity,
                     typename DerivedC::Scalar weight) {
  using Scalar = typename DerivedC::Scalar;
  detail::check_weight(weight);
  if (consistency.size() != uniformity.size()) throw std::invalid_argument("overall_quality: size mismatch");
  return (weight * consistency.derived().array() + (Scalar(1) - weight) * uniformity.derived().array()).eval();
}

/// Sample indices ordered by ascending value; ties go to the lower sample index.
[[nodiscard]] std::vector<int> rank_ascending(const Eigen::VectorXd& values, const std::vector<int>& sample_indices);

struct SampleScores {
  int sample_index = 0;
  double consistency = 0.0;
  double uniformity = 0.0;
  double quality = 0.0;
  bool inconsistent = false;
  bool nonuniform = false;
  bool defective = false;
  bool low_quality = false;
};

struct QualityInputs {
  std::vector<int> sample_indices;
  Eigen::VectorXd consistency;
  Eigen::VectorXd uniformity;
  /// Per-sample flags carried from the clustering labels and the defect summary; empty means none.
  std::vector<bool> inconsistent;
  std::vector<bool> defective;
};

struct FlagThresholds {
  double weight = 0.3;
  double quality = 0.5;
  double uniformity = 0.5;
};

struct QualityReport {
  std::vector<SampleScores> samples;
  /// Best to worst.
  std::vector<int> ranking;
  FlagThresholds thresholds;

  [[nodiscard]] std::vector<int> low_quality_samples() const;
};

[[nodiscard]] QualityReport rank_and_flag(const QualityInputs& inputs, const FlagThresholds& thresholds = {});

}  // namespace buckyqa

#endif  // BUCKYQA_QUALITY_HPP
