// Maximin Latin hypercube designs on [0, 1]^d with points at stratum centers.
#ifndef BUCKYQA_SAMPLING_DESIGN_HPP
#define BUCKYQA_SAMPLING_DESIGN_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>

namespace buckyqa {

struct SamplingPlan {
  /// n x dims.
  Eigen::MatrixXd points;
  /// Minimum pairwise Euclidean distance (+inf for a single point).
  double score = 0.0;
  /// Number of pairs at the minimum distance.
  Eigen::Index critical_pairs = 0;
  /// Score of the random starting design of the winning restart.
  double initial_score = 0.0;
  std::uint64_t seed = 0;
  int accepted_swaps = 0;
};

/// Random per-axis permutations, then within-axis swaps accepted when they raise
/// the minimum distance (or keep it and reduce the number of critical pairs).
/// `iterations` is the number of proposed swaps per restart. Restart r uses
/// seed + r; the best plan wins by score, then fewer critical pairs, then
/// lexicographic point order.
[[nodiscard]] SamplingPlan maximin_lhd(Eigen::Index n, Eigen::Index dims, int iterations, std::uint64_t seed,
                                       int restarts = 1);

[[nodiscard]] double min_pairwise_distance(const Eigen::MatrixXd& points);

/// True when every axis has exactly one point in each of the n strata [(t-1)/n, t/n).
[[nodiscard]] bool has_lhd_property(const Eigen::MatrixXd& points);

/// `u,v` columns for two dimensions, `x1..xd` otherwise. With `samples` > 0 the
/// rows are repeated per sample in the positions layout (sample,observation,u,v).
void write_plan_csv(const SamplingPlan& plan, std::ostream& out, int samples = 0);

}  // namespace buckyqa

#endif  // BUCKYQA_SAMPLING_DESIGN_HPP
