// Triangular-window weighted cross-correlation similarity between profiles.
//
// For profiles a, b on a shared integer grid and lag window l:
//   c_ab(r) = sum_x a(x) b(x + r)                  (zero outside the grid)
//   W_ab    = sum_{|r| < l} (1 - |r|/l) c_ab(r)
//   S_ab    = W_ab / sqrt(W_aa W_bb)
//   D_ab    = (S_aa + S_bb - 2 S_ab) / 2 = 1 - S_ab
#ifndef BUCKYQA_SIMILARITY_HPP
#define BUCKYQA_SIMILARITY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace buckyqa {

struct SimilarityParams {
  int lag_window = 2;
  /// Subtract each profile's mean before correlating. Off by default: centring
  /// count data creates negative lobes and breaks D in [0, 1].
  bool center = false;
};

class UndefinedSimilarityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void check_lengths(Eigen::Index na, Eigen::Index nb) {
  if (na != nb) {
    throw std::invalid_argument("profile length mismatch: " + std::to_string(na) + " vs " + std::to_string(nb));
  }
}

inline void check_params(const SimilarityParams& params, Eigen::Index n) {
  if (params.lag_window < 1 || params.lag_window >= n) {
    throw std::invalid_argument("lag window l=" + std::to_string(params.lag_window) + " must satisfy 1 <= l < n=" +
                                std::to_string(n));
  }
}

}  // namespace detail

/// sum_x a(x) b(x + r) over indices where both are in range.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cross_correlation(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                                            Eigen::Index lag) {
  detail::check_lengths(a.size(), b.size());
  const Eigen::Index n = a.size();
  if (std::abs(lag) >= n) throw std::invalid_argument("cross_correlation: |lag| must be < n");
  const Eigen::Index overlap = n - std::abs(lag);
  if (lag >= 0) return a.head(overlap).dot(b.tail(overlap));
  return a.tail(overlap).dot(b.head(overlap));
}

/// Triangular-weighted lag sum W_ab = sum_{|r|<l} (1 - |r|/l) c_ab(r).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar weighted_correlation(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                                               int lag_window) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar l(lag_window);
  Scalar sum = cross_correlation(a, b, 0);
  for (int r = 1; r < lag_window; ++r) {
    const Scalar w = Scalar(1) - Scalar(r) / l;
    sum += w * (cross_correlation(a, b, r) + cross_correlation(a, b, -r));
  }
  return sum;
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar weighted_similarity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                                              const SimilarityParams& params = {}) {
  using Scalar = typename DerivedA::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  detail::check_lengths(a.size(), b.size());
  detail::check_params(params, a.size());

  Vec av = a;
  Vec bv = b;
  if (params.center) {
    av.array() -= av.mean();
    bv.array() -= bv.mean();
  }
  if (av.isZero(0) || bv.isZero(0)) {
    throw UndefinedSimilarityError("weighted_similarity: all-zero profile has undefined normalization");
  }
  const Scalar waa = weighted_correlation(av, av, params.lag_window);
  const Scalar wbb = weighted_correlation(bv, bv, params.lag_window);
  if (!(waa > Scalar(0)) || !(wbb > Scalar(0))) {
    throw UndefinedSimilarityError("weighted_similarity: non-positive self-correlation");
  }
  const Scalar wab = weighted_correlation(av, bv, params.lag_window);
  using std::sqrt;
  return wab / (sqrt(waa) * sqrt(wbb));
}

/// 1 - S_ab, floored at 0 against rounding (S <= 1 by Cauchy-Schwarz).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar dissimilarity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                                        const SimilarityParams& params = {}) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar s = weighted_similarity(a, b, params);
  return std::max(Scalar(0), (Scalar(1) + Scalar(1) - Scalar(2) * s) / Scalar(2));
}

/// Point-to-point cosine similarity, the l = 1 special case.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  detail::check_lengths(a.size(), b.size());
  return a.dot(b) / (a.norm() * b.norm());
}

}  // namespace buckyqa

#endif  // BUCKYQA_SIMILARITY_HPP
