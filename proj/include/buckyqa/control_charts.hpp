// Tabular CUSUM and EWMA charts over a per-sample scalar statistic.
#ifndef BUCKYQA_CONTROL_CHARTS_HPP
#define BUCKYQA_CONTROL_CHARTS_HPP

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace buckyqa {

enum class ChartKind { Cusum, Ewma };

struct ChartSeries {
  ChartKind kind = ChartKind::Cusum;
  std::string statistic;
  Eigen::VectorXd observations;
  double mean = 0.0;
  double sigma = 1.0;
  /// CUSUM: upper sum (>= 0) and signed lower sum (<= 0), in sigma units.
  Eigen::VectorXd upper;
  Eigen::VectorXd lower;
  /// EWMA: smoothed statistic and its limits.
  Eigen::VectorXd smoothed;
  Eigen::VectorXd lcl;
  Eigen::VectorXd ucl;
  /// Zero-based positions that fall beyond the limits.
  std::vector<Eigen::Index> signals;
};

struct CusumParams {
  double k = 0.5;
  double h = 5.0;
};

struct EwmaParams {
  double lambda = 0.2;
  double width = 3.0;
  /// Starting value z_0; defaults to the in-control mean.
  std::optional<double> start;
};

[[nodiscard]] ChartSeries cusum(const Eigen::VectorXd& x, double mean, double sigma, const CusumParams& params = {},
                                std::string statistic = {});
[[nodiscard]] ChartSeries ewma(const Eigen::VectorXd& x, double mean, double sigma, const EwmaParams& params = {},
                               std::string statistic = {});

enum class SigmaEstimator {
  /// Mean moving range of consecutive points divided by d2 = 1.128.
  MovingRange,
  /// Sample standard deviation (n - 1).
  SampleStdDev,
};

[[nodiscard]] SigmaEstimator parse_sigma_estimator(const std::string& name);
[[nodiscard]] const char* to_string(SigmaEstimator estimator);

struct InControl {
  double mean = 0.0;
  double sigma = 0.0;
};

/// Estimates from the first `prefix` points (0 means all of them). Needs at least 2 points.
[[nodiscard]] InControl estimate_in_control(const Eigen::VectorXd& x, Eigen::Index prefix = 0,
                                            SigmaEstimator estimator = SigmaEstimator::MovingRange);

/// One row per observation, labelled by sample index. Each series adds
/// <statistic>_cusum_{upper,lower,signal} or <statistic>_ewma_{z,lcl,ucl,signal}.
void write_chart_csv(const std::vector<ChartSeries>& series, const std::vector<int>& labels, std::ostream& out);

}  // namespace buckyqa

#endif  // BUCKYQA_CONTROL_CHARTS_HPP
