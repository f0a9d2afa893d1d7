#include "buckyqa/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace buckyqa {

namespace {

constexpr double kTau = 1e-12;

bool in_up(int y, double a, double C) { return (y == 1 && a < C) || (y == -1 && a > 0.0); }
bool in_low(int y, double a, double C) { return (y == 1 && a > 0.0) || (y == -1 && a < C); }

}  // namespace

SvmSolution train_linear_svm(const Eigen::MatrixXd& points, const Eigen::VectorXi& labels, const SvmOptions& options) {
  const Eigen::Index n = points.rows();
  if (labels.size() != n) throw std::invalid_argument("train_linear_svm: label count mismatch");
  if (!(options.C > 0.0)) throw std::invalid_argument("train_linear_svm: C must be positive");
  bool pos = false;
  bool neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels[i] == 1) {
      pos = true;
    } else if (labels[i] == -1) {
      neg = true;
    } else {
      throw std::invalid_argument("train_linear_svm: labels must be +1 or -1");
    }
  }
  if (!pos || !neg) throw std::invalid_argument("train_linear_svm: both classes are required");

  const double C = options.C;
  const Eigen::MatrixXd K = points * points.transpose();
  const Eigen::VectorXd y = labels.cast<double>();
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = -Eigen::VectorXd::Ones(n);  // Q alpha - e

  SvmSolution sol;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    // i: maximal violator in I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (in_up(labels[t], alpha[t], C) && -y[t] * grad[t] >= gmax) {
        if (-y[t] * grad[t] > gmax || i < 0) {
          gmax = -y[t] * grad[t];
          i = t;
        }
      }
    }
    // j: second-order choice in I_low.
    double gmin = std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (!in_low(labels[t], alpha[t], C)) continue;
      const double v = -y[t] * grad[t];
      gmin = std::min(gmin, v);
      if (i >= 0 && v < gmax) {
        const double b = gmax - v;
        const double a = std::max(K(i, i) + K(t, t) - 2.0 * K(i, t), kTau);
        const double score = -(b * b) / a;
        if (score < best) {
          best = score;
          j = t;
        }
      }
    }
    if (i < 0 || j < 0 || gmax - gmin < options.tolerance) {
      sol.converged = true;
      break;
    }

    const double yi = y[i];
    const double yj = y[j];
    const double ai_old = alpha[i];
    const double aj_old = alpha[j];
    const double quad = std::max(K(i, i) + K(j, j) - 2.0 * K(i, j), kTau);
    if (yi != yj) {
      const double delta = (-grad[i] - grad[j]) / quad;
      double diff = ai_old - aj_old;
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = ai_old + aj_old;
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - ai_old;
    const double daj = alpha[j] - aj_old;
    for (Eigen::Index t = 0; t < n; ++t) {
      grad[t] += y[t] * (yi * K(t, i) * dai + yj * K(t, j) * daj);
    }
  }
  sol.iterations = iter;

  // Offset from free support vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  int free_count = 0;
  const double bound_eps = 1e-12 * C;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= C - bound_eps) {
      if (labels[t] == -1) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (alpha[t] <= bound_eps) {
      if (labels[t] == 1) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (ub + lb);

  sol.alpha = alpha;
  sol.weights = points.transpose() * alpha.cwiseProduct(y);
  sol.offset = -rho;
  const Eigen::VectorXd margins = y.cwiseProduct((points * sol.weights).array().matrix() +
                                                 Eigen::VectorXd::Constant(n, sol.offset));
  sol.objective = 0.5 * sol.weights.squaredNorm() + C * (1.0 - margins.array()).max(0.0).sum();
  sol.kkt_residual = svm_kkt_residual(points, labels, C, sol);
  return sol;
}

double svm_kkt_residual(const Eigen::MatrixXd& points, const Eigen::VectorXi& labels, double C,
                        const SvmSolution& solution) {
  const Eigen::Index n = points.rows();
  const Eigen::VectorXd y = labels.cast<double>();
  const Eigen::VectorXd f = points * solution.weights + Eigen::VectorXd::Constant(n, solution.offset);
  // Stationarity in w and b.
  double residual = (solution.weights - points.transpose() * solution.alpha.cwiseProduct(y)).cwiseAbs().maxCoeff();
  residual = std::max(residual, std::abs(solution.alpha.dot(y)));
  const double bound_eps = 1e-9 * C;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double m = y[t] * f[t];
    const double a = solution.alpha[t];
    residual = std::max(residual, std::max(0.0, -a));
    residual = std::max(residual, std::max(0.0, a - C));
    if (a <= bound_eps) {
      residual = std::max(residual, std::max(0.0, 1.0 - m));
    } else if (a >= C - bound_eps) {
      residual = std::max(residual, std::max(0.0, m - 1.0));
    } else {
      residual = std::max(residual, std::abs(m - 1.0));
    }
  }
  return residual;
}

}  // namespace buckyqa
