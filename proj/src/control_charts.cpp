#include "buckyqa/control_charts.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "csv.hpp"

namespace buckyqa {

namespace {

void check_series(const Eigen::VectorXd& x, double mean, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("chart: sigma must be positive and finite");
  if (!std::isfinite(mean)) throw std::invalid_argument("chart: mean must be finite");
  if (!x.allFinite()) throw std::invalid_argument("chart: non-finite observation");
}

}  // namespace

ChartSeries cusum(const Eigen::VectorXd& x, double mean, double sigma, const CusumParams& params,
                  std::string statistic) {
  check_series(x, mean, sigma);
  if (!(params.k >= 0.0) || !(params.h > 0.0)) throw std::invalid_argument("cusum: need k >= 0 and h > 0");
  ChartSeries s;
  s.kind = ChartKind::Cusum;
  s.statistic = std::move(statistic);
  s.observations = x;
  s.mean = mean;
  s.sigma = sigma;
  s.upper.resize(x.size());
  s.lower.resize(x.size());
  double up = 0.0;
  double lo = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double u = (x[i] - mean) / sigma;
    up = std::max(0.0, up + u - params.k);
    lo = std::min(0.0, lo + u + params.k);
    s.upper[i] = up;
    s.lower[i] = lo;
    if (up > params.h || lo < -params.h) s.signals.push_back(i);
  }
  return s;
}

ChartSeries ewma(const Eigen::VectorXd& x, double mean, double sigma, const EwmaParams& params,
                 std::string statistic) {
  check_series(x, mean, sigma);
  if (!(params.lambda > 0.0 && params.lambda <= 1.0)) throw std::invalid_argument("ewma: lambda must lie in (0, 1]");
  if (!(params.width > 0.0)) throw std::invalid_argument("ewma: width must be positive");
  ChartSeries s;
  s.kind = ChartKind::Ewma;
  s.statistic = std::move(statistic);
  s.observations = x;
  s.mean = mean;
  s.sigma = sigma;
  s.smoothed.resize(x.size());
  s.lcl.resize(x.size());
  s.ucl.resize(x.size());
  const double lam = params.lambda;
  double z = params.start.value_or(mean);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    z = lam * x[i] + (1.0 - lam) * z;
    const double steps = 2.0 * static_cast<double>(i + 1);
    const double half = params.width * sigma * std::sqrt(lam / (2.0 - lam) * (1.0 - std::pow(1.0 - lam, steps)));
    s.smoothed[i] = z;
    s.lcl[i] = mean - half;
    s.ucl[i] = mean + half;
    if (z < s.lcl[i] || z > s.ucl[i]) s.signals.push_back(i);
  }
  return s;
}

SigmaEstimator parse_sigma_estimator(const std::string& name) {
  if (name == "moving-range") return SigmaEstimator::MovingRange;
  if (name == "stdev") return SigmaEstimator::SampleStdDev;
  throw std::invalid_argument("unknown sigma estimator '" + name + "' (expected moving-range or stdev)");
}

const char* to_string(SigmaEstimator estimator) {
  return estimator == SigmaEstimator::MovingRange ? "moving-range" : "stdev";
}

InControl estimate_in_control(const Eigen::VectorXd& x, Eigen::Index prefix, SigmaEstimator estimator) {
  if (prefix < 0 || prefix > x.size()) throw std::invalid_argument("estimate_in_control: prefix out of range");
  const Eigen::Index n = prefix == 0 ? x.size() : prefix;
  if (n < 2) throw std::invalid_argument("estimate_in_control: need at least 2 points");
  const auto head = x.head(n);
  if (!head.allFinite()) throw std::invalid_argument("estimate_in_control: non-finite observation");
  InControl out;
  out.mean = head.mean();
  if (estimator == SigmaEstimator::MovingRange) {
    constexpr double d2 = 1.128;
    const double mr = (head.tail(n - 1) - head.head(n - 1)).cwiseAbs().mean();
    out.sigma = mr / d2;
  } else {
    out.sigma = std::sqrt((head.array() - out.mean).square().sum() / static_cast<double>(n - 1));
  }
  return out;
}

void write_chart_csv(const std::vector<ChartSeries>& series, const std::vector<int>& labels, std::ostream& out) {
  for (const auto& s : series) {
    if (s.observations.size() != static_cast<Eigen::Index>(labels.size())) {
      throw std::invalid_argument("write_chart_csv: series length does not match labels");
    }
  }
  out << "sample";
  for (const auto& s : series) {
    const std::string p = s.statistic.empty() ? std::string("x") : s.statistic;
    if (s.kind == ChartKind::Cusum) {
      out << ',' << p << "_cusum_upper," << p << "_cusum_lower," << p << "_cusum_signal";
    } else {
      out << ',' << p << "_ewma_z," << p << "_ewma_lcl," << p << "_ewma_ucl," << p << "_ewma_signal";
    }
  }
  out << '\n';
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    out << labels[r];
    for (const auto& s : series) {
      const bool sig = std::find(s.signals.begin(), s.signals.end(), i) != s.signals.end();
      if (s.kind == ChartKind::Cusum) {
        out << ',' << csv::format_double(s.upper[i]) << ',' << csv::format_double(s.lower[i]) << ',' << (sig ? 1 : 0);
      } else {
        out << ',' << csv::format_double(s.smoothed[i]) << ',' << csv::format_double(s.lcl[i]) << ','
            << csv::format_double(s.ucl[i]) << ',' << (sig ? 1 : 0);
      }
    }
    out << '\n';
  }
}

}  // namespace buckyqa
