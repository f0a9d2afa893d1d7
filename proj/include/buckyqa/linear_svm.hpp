// Small dense soft-margin linear SVM:
//   min_{w,b,xi} 1/2 |w|^2 + C sum xi   s.t. y_i (w'x_i + b) >= 1 - xi_i, xi >= 0
// solved in the dual by SMO with second-order working-set selection.
#ifndef BUCKYQA_LINEAR_SVM_HPP
#define BUCKYQA_LINEAR_SVM_HPP

#include <Eigen/Dense>

namespace buckyqa {

struct SvmOptions {
  double C = 1.0;
  /// Stop when the maximal KKT violating pair gap drops below this.
  double tolerance = 1e-12;
  int max_iterations = 1'000'000;
};

struct SvmSolution {
  Eigen::VectorXd weights;
  double offset = 0.0;
  Eigen::VectorXd alpha;
  /// Primal objective 1/2 |w|^2 + C sum xi at (w, b).
  double objective = 0.0;
  /// Largest violation of the primal/dual optimality conditions.
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// `points` holds one sample per row; `labels` are +1 / -1 and must contain both.
[[nodiscard]] SvmSolution train_linear_svm(const Eigen::MatrixXd& points, const Eigen::VectorXi& labels,
                                           const SvmOptions& options = {});

/// KKT residual of an arbitrary (alpha, w, b) for the problem above.
[[nodiscard]] double svm_kkt_residual(const Eigen::MatrixXd& points, const Eigen::VectorXi& labels, double C,
                                      const SvmSolution& solution);

}  // namespace buckyqa

#endif  // BUCKYQA_LINEAR_SVM_HPP
