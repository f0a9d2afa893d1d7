#include "buckyqa/quality.hpp"

#include <algorithm>
#include <numeric>

namespace buckyqa {

std::vector<int> rank_ascending(const Eigen::VectorXd& values, const std::vector<int>& sample_indices) {
  if (static_cast<Eigen::Index>(sample_indices.size()) != values.size()) {
    throw std::invalid_argument("rank_ascending: size mismatch");
  }
  std::vector<std::size_t> order(sample_indices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double va = values[static_cast<Eigen::Index>(a)];
    const double vb = values[static_cast<Eigen::Index>(b)];
    if (va != vb) return va < vb;
    return sample_indices[a] < sample_indices[b];
  });
  std::vector<int> out;
  out.reserve(order.size());
  for (const auto i : order) out.push_back(sample_indices[i]);
  return out;
}

std::vector<int> QualityReport::low_quality_samples() const {
  std::vector<int> out;
  for (const auto& s : samples) {
    if (s.low_quality) out.push_back(s.sample_index);
  }
  return out;
}

QualityReport rank_and_flag(const QualityInputs& inputs, const FlagThresholds& thresholds) {
  const auto n = inputs.sample_indices.size();
  if (static_cast<std::size_t>(inputs.consistency.size()) != n ||
      static_cast<std::size_t>(inputs.uniformity.size()) != n) {
    throw std::invalid_argument("rank_and_flag: index vectors must match the sample count");
  }
  if ((!inputs.inconsistent.empty() && inputs.inconsistent.size() != n) ||
      (!inputs.defective.empty() && inputs.defective.size() != n)) {
    throw std::invalid_argument("rank_and_flag: flag vectors must match the sample count");
  }

  QualityReport report;
  report.thresholds = thresholds;
  const Eigen::VectorXd q = overall_quality(inputs.consistency, inputs.uniformity, thresholds.weight).matrix();
  report.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = static_cast<Eigen::Index>(i);
    SampleScores s;
    s.sample_index = inputs.sample_indices[i];
    s.consistency = inputs.consistency[e];
    s.uniformity = inputs.uniformity[e];
    s.quality = q[e];
    s.inconsistent = !inputs.inconsistent.empty() && inputs.inconsistent[i];
    s.defective = !inputs.defective.empty() && inputs.defective[i];
    s.nonuniform = s.uniformity > thresholds.uniformity;
    s.low_quality = s.quality > thresholds.quality;
    report.samples.push_back(s);
  }
  report.ranking = rank_ascending(q, inputs.sample_indices);
  return report;
}

}  // namespace buckyqa
