#include "buckyqa/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "buckyqa/linear_svm.hpp"

namespace buckyqa {

ConsistencyFeatures standardize_features(Eigen::MatrixXd raw, std::vector<int> sample_indices) {
  const Eigen::Index n = raw.rows();
  if (n < 2) throw std::invalid_argument("standardize_features: need at least 2 rows");
  if (!raw.allFinite()) throw std::invalid_argument("standardize_features: non-finite feature value");
  if (sample_indices.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) sample_indices.push_back(static_cast<int>(i) + 1);
  }
  if (static_cast<Eigen::Index>(sample_indices.size()) != n) {
    throw std::invalid_argument("standardize_features: sample index count mismatch");
  }

  ConsistencyFeatures f;
  f.sample_indices = std::move(sample_indices);
  f.mean = raw.colwise().mean();
  const Eigen::MatrixXd centered = raw.rowwise() - f.mean;
  f.stdev = (centered.colwise().squaredNorm() / static_cast<double>(n - 1)).cwiseSqrt();
  f.standardized = Eigen::MatrixXd::Zero(n, raw.cols());
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    // Relative guard: a column of equal values can pick up rounding noise in the mean.
    const double scale = std::max(1.0, f.mean.cwiseAbs()[c]);
    if (f.stdev[c] > 1e-14 * scale) {
      f.standardized.col(c) = centered.col(c) / f.stdev[c];
    } else {
      f.stdev[c] = 0.0;
    }
  }
  f.raw = std::move(raw);
  return f;
}

ConsistencyFeatures build_features(const Eigen::VectorXd& ideal, const Eigen::MatrixXd& fixed,
                                   const SimilarityParams& params, std::vector<int> sample_indices) {
  const Eigen::Index n = fixed.cols();
  if (ideal.size() == 0) throw std::invalid_argument("build_features: ideal profile is required");
  if (n < kMinimumSamples) {
    throw std::invalid_argument("build_features: need at least " + std::to_string(kMinimumSamples) +
                                " samples, got " + std::to_string(n));
  }
  if (fixed.rows() != ideal.size()) throw std::invalid_argument("build_features: profile length mismatch");

  Eigen::MatrixXd raw(n, 2);
  const double ideal_max = ideal.maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    raw(i, 0) = std::abs(ideal_max - fixed.col(i).maxCoeff());
    raw(i, 1) = dissimilarity(ideal, fixed.col(i), params);
  }
  return standardize_features(std::move(raw), std::move(sample_indices));
}

Eigen::VectorXi two_means_labels(const Eigen::MatrixXd& points, int max_iterations) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw std::invalid_argument("two_means_labels: need at least 2 points");
  Eigen::Index p = 0;
  Eigen::Index q = 1;
  double far = -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).squaredNorm();
      if (d > far) {
        far = d;
        p = i;
        q = j;
      }
    }
  }
  if (!(far > 0.0)) throw DegenerateGeometryError("two_means_labels: all points are identical");

  Eigen::RowVectorXd c0 = points.row(p);
  Eigen::RowVectorXd c1 = points.row(q);
  Eigen::VectorXi labels = Eigen::VectorXi::Zero(n);
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXi next(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      next[i] = (points.row(i) - c1).squaredNorm() < (points.row(i) - c0).squaredNorm() ? 1 : -1;
    }
    if (it > 0 && next == labels) break;
    labels = next;
    Eigen::RowVectorXd s0 = Eigen::RowVectorXd::Zero(points.cols());
    Eigen::RowVectorXd s1 = s0;
    int n0 = 0;
    int n1 = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels[i] < 0) {
        s0 += points.row(i);
        ++n0;
      } else {
        s1 += points.row(i);
        ++n1;
      }
    }
    // Farthest-pair seeds keep both clusters non-empty: each seed is nearer its own center.
    if (n0 > 0) c0 = s0 / n0;
    if (n1 > 0) c1 = s1 / n1;
  }
  return labels;
}

Eigen::VectorXd MmcResult::signed_distances() const {
  return labels.cast<double>().cwiseProduct(decision_values);
}

namespace {

std::vector<int> as_vector(const Eigen::VectorXi& v) { return {v.data(), v.data() + v.size()}; }

bool single_class(const Eigen::VectorXi& labels) {
  return (labels.array() == labels[0]).all();
}

}  // namespace

MmcResult mmc_cluster(const Eigen::MatrixXd& points, const MmcOptions& options) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw std::invalid_argument("mmc_cluster: need at least 2 points");
  if (!(options.C > 0.0)) throw std::invalid_argument("mmc_cluster: C must be positive");
  if (options.max_iterations < 1) throw std::invalid_argument("mmc_cluster: max_iterations must be >= 1");
  bool spread = false;
  for (Eigen::Index i = 1; i < n && !spread; ++i) spread = points.row(i) != points.row(0);
  if (!spread) throw DegenerateGeometryError("mmc_cluster: all points are identical");

  MmcResult result;
  result.balance = options.balance.value_or(static_cast<int>(n) - 2);
  if (result.balance < 0) throw std::invalid_argument("mmc_cluster: balance must be >= 0");

  Eigen::VectorXi labels;
  if (options.initial_labels) {
    labels = *options.initial_labels;
    if (labels.size() != n || !((labels.array() == 1) || (labels.array() == -1)).all()) {
      throw std::invalid_argument("mmc_cluster: initial labels must be +1/-1 per point");
    }
  } else {
    labels = two_means_labels(points);
  }

  SvmOptions svm;
  svm.C = options.C;
  SvmSolution sol;
  bool fitted = false;
  std::set<std::vector<int>> seen{as_vector(labels)};
  for (int it = 1; it <= options.max_iterations; ++it) {
    if (single_class(labels)) {
      result.diagnostics = "labels collapsed to a single class";
      break;
    }
    sol = train_linear_svm(points, labels, svm);
    fitted = true;
    result.iterations = it;
    result.objectives.push_back(sol.objective);
    const Eigen::VectorXd f = points * sol.weights + Eigen::VectorXd::Constant(n, sol.offset);
    Eigen::VectorXi next(n);
    for (Eigen::Index i = 0; i < n; ++i) next[i] = f[i] > 0.0 ? 1 : -1;
    if (next == labels) {
      result.converged = true;
      break;
    }
    if (single_class(next)) {
      result.diagnostics = "relabelling would collapse to a single class; kept previous labels";
      break;
    }
    if (!seen.insert(as_vector(next)).second) {
      result.diagnostics = "label cycle detected at iteration " + std::to_string(it);
      break;
    }
    labels = next;
    if (it == options.max_iterations) result.diagnostics = "iteration cap reached";
  }
  if (!fitted) throw DegenerateGeometryError("mmc_cluster: initial labels contain a single class");

  const int total = labels.sum();
  if (std::abs(total) > result.balance) {
    result.converged = false;
    if (!result.diagnostics.empty()) result.diagnostics += "; ";
    result.diagnostics += "balance constraint violated: |sum eta| = " + std::to_string(std::abs(total)) + " > " +
                          std::to_string(result.balance);
  }

  // Canonical sign: the cluster closer to the origin (in mean norm) is the consistent one.
  double norm_neg = 0.0;
  double norm_pos = 0.0;
  int count_neg = 0;
  int count_pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels[i] < 0) {
      norm_neg += points.row(i).norm();
      ++count_neg;
    } else {
      norm_pos += points.row(i).norm();
      ++count_pos;
    }
  }
  Eigen::VectorXd w = sol.weights;
  double b = sol.offset;
  if (count_neg > 0 && count_pos > 0 && norm_neg / count_neg > norm_pos / count_pos) {
    labels = -labels;
    w = -w;
    b = -b;
  }

  result.labels = labels;
  result.weights = w;
  result.offset = b;
  result.kkt_residual = sol.kkt_residual;
  const double wn = w.norm();
  if (wn > 0.0) {
    result.decision_values = ((points * w).array() + b).abs() / wn;
  } else {
    result.decision_values = Eigen::VectorXd::Zero(n);
    result.converged = false;
    if (!result.diagnostics.empty()) result.diagnostics += "; ";
    result.diagnostics += "separating direction vanished (w = 0)";
  }
  return result;
}

MmcResult mmc_cluster(const ConsistencyFeatures& features, const MmcOptions& options) {
  return mmc_cluster(features.standardized, options);
}

InconsistencyIndex inconsistency_index(const Eigen::VectorXd& s, double shape, double scale,
                                       std::optional<double> reference) {
  if (!(shape > 1.0)) throw std::invalid_argument("inconsistency_index: shape must be > 1");
  if (!(scale > 0.0)) throw std::invalid_argument("inconsistency_index: scale must be > 0");
  if (s.size() == 0) throw std::invalid_argument("inconsistency_index: empty input");
  if (!s.allFinite()) throw std::invalid_argument("inconsistency_index: non-finite signed distance");

  InconsistencyIndex out;
  out.shape = shape;
  out.scale = scale;
  out.reference = reference.value_or(s.minCoeff());
  // Far tails round to 1.0 in double; keep the documented range [0, 1).
  constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  const auto weibull = [&](double x) {
    return std::min(kBelowOne, -std::expm1(-std::pow(std::max(0.0, x) / scale, shape)));
  };
  out.values = s.unaryExpr([&](double v) { return weibull(v - out.reference); });
  out.threshold = weibull(-out.reference);
  return out;
}

InconsistencyIndex inconsistency_index(const MmcResult& mmc, double shape, double scale,
                                       std::optional<double> reference) {
  return inconsistency_index(mmc.signed_distances(), shape, scale, reference);
}

std::vector<std::size_t> calibration_histogram(const Eigen::VectorXd& values, int bins) {
  if (bins < 1) throw std::invalid_argument("calibration_histogram: bins must be >= 1");
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (const double v : values) {
    if (!(v >= 0.0) || v > 1.0) throw std::invalid_argument("calibration_histogram: value outside [0, 1]");
    const auto b = std::min(bins - 1, static_cast<int>(v * bins));
    ++counts[static_cast<std::size_t>(b)];
  }
  return counts;
}

}  // namespace buckyqa
