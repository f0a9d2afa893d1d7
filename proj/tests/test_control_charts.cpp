#include <doctest.h>

#include <random>
#include <sstream>

#include "buckyqa/control_charts.hpp"
#include "reference_case.hpp"

using namespace buckyqa;

namespace {

template <std::size_t N>
Eigen::VectorXd as_vector(const std::array<double, N>& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) v[static_cast<Eigen::Index>(i)] = a[i];
  return v;
}

// Agreement to the precision the reference columns were printed with.
template <std::size_t N>
void check_printed(const Eigen::VectorXd& got, const std::array<double, N>& want, double rel, double abs) {
  REQUIRE(got.size() == static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) {
    INFO("row " << i + 1 << ": got " << got[static_cast<Eigen::Index>(i)] << ", want " << want[i]);
    CHECK(std::abs(got[static_cast<Eigen::Index>(i)] - want[i]) <= rel * std::abs(want[i]) + abs);
  }
}

}  // namespace

TEST_CASE("cusum recursion by hand") {
  Eigen::VectorXd x(2);
  x << 3, 3;
  const auto a = cusum(x, 0.0, 1.0, {0.5, 4.9});
  CHECK(a.upper[0] == 2.5);
  CHECK(a.upper[1] == 5.0);
  CHECK(a.lower[1] == 0.0);
  CHECK(a.signals == std::vector<Eigen::Index>{1});
  CHECK(cusum(x, 0.0, 1.0, {0.5, 5.0}).signals.empty());

  Eigen::VectorXd y(3);
  y << -2, -2, 4;
  const auto b = cusum(y, 0.0, 2.0, {0.5, 5.0});
  CHECK(b.lower[0] == -0.5);
  CHECK(b.lower[1] == -1.0);
  CHECK(b.lower[2] == 0.0);
  CHECK(b.upper[2] == 1.5);
}

TEST_CASE("ewma recursion by hand") {
  Eigen::VectorXd x(2);
  x << 1, 1;
  const auto s = ewma(x, 0.0, 1.0);
  CHECK(s.smoothed[0] == doctest::Approx(0.2));
  CHECK(s.smoothed[1] == doctest::Approx(0.36));
  CHECK(s.ucl[0] == doctest::Approx(3.0 * 0.2));
  CHECK(s.lcl[0] == doctest::Approx(-0.6));
  EwmaParams p;
  p.start = 1.0;
  CHECK(ewma(x, 0.0, 1.0, p).smoothed[1] == doctest::Approx(1.0));
}

TEST_CASE("whole-series estimates reproduce the reference chart columns") {
  const Eigen::VectorXd d = as_vector(reference::d);
  const Eigen::VectorXd D = as_vector(reference::D);
  const auto pd = estimate_in_control(d);
  const auto pD = estimate_in_control(D);

  const auto cd = cusum(d, pd.mean, pd.sigma);
  check_printed(cd.upper, reference::d_cusum_upper, 1e-5, 5e-6);
  check_printed(cd.lower, reference::d_cusum_lower, 1e-5, 5e-6);
  const auto ed = ewma(d, pd.mean, pd.sigma);
  check_printed(ed.smoothed, reference::d_ewma_z, 1e-6, 5e-5);
  check_printed(ed.lcl, reference::d_ewma_lcl, 1e-6, 5e-5);
  check_printed(ed.ucl, reference::d_ewma_ucl, 1e-6, 5e-5);

  // D is printed to five decimals, so its derived columns carry that rounding.
  const auto cD = cusum(D, pD.mean, pD.sigma);
  check_printed(cD.upper, reference::D_cusum_upper, 1e-5, 5e-6);
  check_printed(cD.lower, reference::D_cusum_lower, 1e-5, 5e-6);
  const auto eD = ewma(D, pD.mean, pD.sigma);
  check_printed(eD.smoothed, reference::D_ewma_z, 6e-3, 0.0);
  check_printed(eD.lcl, reference::D_ewma_lcl, 6e-3, 0.0);
  check_printed(eD.ucl, reference::D_ewma_ucl, 6e-3, 0.0);

  CHECK(cd.signals == std::vector<Eigen::Index>{9});
  CHECK(ed.signals.empty());
  CHECK(cD.signals.empty());
  CHECK(eD.signals == std::vector<Eigen::Index>{1});
}

TEST_CASE("ewma limits widen monotonically toward the asymptote") {
  const double lam = 0.2;
  const double L = 3.0;
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(60);
  const auto s = ewma(x, 10.0, 2.0, {lam, L, std::nullopt});
  const double asym = L * 2.0 * std::sqrt(lam / (2.0 - lam));
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    CHECK(s.ucl[i] - s.ucl[i - 1] >= 0.0);
    CHECK(s.lcl[i] - s.lcl[i - 1] <= 0.0);
  }
  CHECK(s.ucl[24] - 10.0 == doctest::Approx(asym).epsilon(0.01));
  CHECK(s.ucl[59] - 10.0 < asym);
}

TEST_CASE("charts are translation equivariant") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    Eigen::VectorXd x(15);
    for (auto& v : x) v = g(rng) * 3.0;
    const double c = g(rng) * 100.0;
    const Eigen::VectorXd y = x.array() + c;
    const auto px = estimate_in_control(x);
    const auto py = estimate_in_control(y);
    CHECK(py.sigma == doctest::Approx(px.sigma));
    const auto a = cusum(x, px.mean, px.sigma);
    const auto b = cusum(y, py.mean, py.sigma);
    CHECK((a.upper - b.upper).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((a.lower - b.lower).cwiseAbs().maxCoeff() < 1e-9);
    const auto e = ewma(x, px.mean, px.sigma);
    const auto f = ewma(y, py.mean, py.sigma);
    CHECK(((f.smoothed.array() - c) - e.smoothed.array()).abs().maxCoeff() < 1e-9);
    CHECK(e.signals == f.signals);
  }
}

TEST_CASE("in-control points below k never move the sums off zero") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Eigen::VectorXd x(200);
  for (auto& v : x) v = u(rng);
  const auto s = cusum(x, 0.0, 1.0);
  CHECK(s.upper.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.lower.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constant series gives no signals") {
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(8, 4.0);
  CHECK(cusum(x, 4.0, 1.0).signals.empty());
  CHECK(ewma(x, 4.0, 1.0).signals.empty());
}

TEST_CASE("in-control estimation") {
  Eigen::VectorXd x(4);
  x << 1, 3, 2, 6;
  const auto mr = estimate_in_control(x);
  CHECK(mr.mean == 3.0);
  CHECK(mr.sigma == doctest::Approx((2.0 + 1.0 + 4.0) / 3.0 / 1.128));
  const auto sd = estimate_in_control(x, 0, SigmaEstimator::SampleStdDev);
  CHECK(sd.sigma == doctest::Approx(std::sqrt(14.0 / 3.0)));
  const auto head = estimate_in_control(x, 2);
  CHECK(head.mean == 2.0);
  CHECK(head.sigma == doctest::Approx(2.0 / 1.128));
  CHECK_THROWS_AS((void)estimate_in_control(x, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)estimate_in_control(x, 5), std::invalid_argument);
  CHECK(parse_sigma_estimator("stdev") == SigmaEstimator::SampleStdDev);
  CHECK(std::string(to_string(parse_sigma_estimator("moving-range"))) == "moving-range");
  CHECK_THROWS_AS((void)parse_sigma_estimator("range"), std::invalid_argument);
}

TEST_CASE("parameter checks") {
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_AS((void)cusum(x, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)cusum(x, 0.0, 1.0, {0.5, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)ewma(x, 0.0, 1.0, {1.5, 3.0, std::nullopt}), std::invalid_argument);
  Eigen::VectorXd bad = x;
  bad[1] = std::nan("");
  CHECK_THROWS_AS((void)ewma(bad, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("chart csv layout") {
  Eigen::VectorXd x(2);
  x << 0, 10;
  std::vector<ChartSeries> series{cusum(x, 0.0, 1.0, {}, "d"), ewma(x, 0.0, 1.0, {}, "D")};
  std::ostringstream out;
  write_chart_csv(series, {4, 5}, out);
  std::istringstream in(out.str());
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "sample,d_cusum_upper,d_cusum_lower,d_cusum_signal,D_ewma_z,D_ewma_lcl,D_ewma_ucl,D_ewma_signal");
  CHECK(row1.rfind("4,0,0,0,0,", 0) == 0);
  CHECK(row2.rfind("5,9.5,0,1,2,", 0) == 0);
  CHECK(row2.back() == '1');
  std::ostringstream sink;
  CHECK_THROWS_AS(write_chart_csv(series, {1}, sink), std::invalid_argument);
}
