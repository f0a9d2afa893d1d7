// Within-sample uniformity from the spread of mutual similarities between
// normal-effect profiles. Lower is more uniform.
#ifndef BUCKYQA_UNIFORMITY_HPP
#define BUCKYQA_UNIFORMITY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "buckyqa/decomposition.hpp"
#include "buckyqa/similarity.hpp"

namespace buckyqa {

/// S_jk over the columns of `profiles`. A pair involving an all-zero profile
/// scores 1 when both are all-zero and 0 otherwise.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> similarity_matrix(
    const Eigen::MatrixBase<Derived>& profiles, const SimilarityParams& params = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = profiles.cols();
  if (m < 2) throw std::invalid_argument("similarity_matrix: need at least 2 observations");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> S(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const bool zj = profiles.col(j).isZero(0);
    S(j, j) = Scalar(1);
    for (Eigen::Index k = j + 1; k < m; ++k) {
      const bool zk = profiles.col(k).isZero(0);
      Scalar s;
      if (zj || zk) {
        detail::check_params(params, profiles.rows());
        s = (zj && zk) ? Scalar(1) : Scalar(0);
      } else {
        s = weighted_similarity(profiles.col(j), profiles.col(k), params);
      }
      S(j, k) = s;
      S(k, j) = s;
    }
  }
  return S;
}

/// Mean over rows of the row's sample standard deviation (n - 1 denominator).
/// The diagonal term is included unless `exclude_diagonal` is set.
template <typename Derived>
typename Derived::Scalar uniformity_index(const Eigen::MatrixBase<Derived>& S, bool exclude_diagonal = false) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = S.rows();
  if (S.cols() != n) throw std::invalid_argument("uniformity_index: matrix must be square");
  if (n < 2) throw std::invalid_argument("uniformity_index: need at least 2 observations");
  if (exclude_diagonal && n < 3) {
    throw std::invalid_argument("uniformity_index: excluding the diagonal needs at least 3 observations");
  }
  using std::abs;
  using std::sqrt;
  const Scalar tol(1e-9);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (abs(S(j, j) - Scalar(1)) > tol) throw std::invalid_argument("uniformity_index: diagonal must be 1");
    for (Eigen::Index k = j + 1; k < n; ++k) {
      if (abs(S(j, k) - S(k, j)) > tol) throw std::invalid_argument("uniformity_index: matrix must be symmetric");
    }
  }

  const Eigen::Index count = exclude_diagonal ? n - 1 : n;
  Scalar total(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar mean(0);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!(exclude_diagonal && k == j)) mean += S(j, k);
    }
    mean /= Scalar(count);
    Scalar ss(0);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!(exclude_diagonal && k == j)) ss += (S(j, k) - mean) * (S(j, k) - mean);
    }
    total += sqrt(ss / Scalar(count - 1));
  }
  return total / Scalar(n);
}

struct UniformityResult {
  int sample_index = 0;
  Eigen::MatrixXd similarity;
  Eigen::VectorXd row_means;
  double index = 0.0;
};

[[nodiscard]] UniformityResult assess_uniformity(const DecomposedEffects& effects, const SimilarityParams& params = {},
                                                 bool exclude_diagonal = false);

}  // namespace buckyqa

#endif  // BUCKYQA_UNIFORMITY_HPP
