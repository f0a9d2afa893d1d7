#include <doctest.h>

#include <random>

#include "buckyqa/linear_svm.hpp"
#include "oracles.hpp"

using namespace buckyqa;

namespace {

double primal(const Eigen::MatrixXd& X, const Eigen::VectorXi& y, double C, const Eigen::VectorXd& w, double b) {
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) hinge += std::max(0.0, 1.0 - y[i] * (X.row(i).dot(w) + b));
  return 0.5 * w.squaredNorm() + C * hinge;
}

}  // namespace

TEST_CASE("two-point hard margin by hand") {
  Eigen::MatrixXd X(2, 2);
  X << 0, 0, 2, 0;
  Eigen::VectorXi y(2);
  y << -1, 1;
  const auto s = train_linear_svm(X, y, {1000.0});
  CHECK(s.converged);
  CHECK(s.weights[0] == doctest::Approx(1.0));
  CHECK(s.weights[1] == doctest::Approx(0.0));
  CHECK(s.offset == doctest::Approx(-1.0));
  CHECK(s.kkt_residual < 1e-9);
}

TEST_CASE("hard-margin width equals the convex hull distance") {
  std::mt19937_64 rng(97);
  std::normal_distribution<double> g(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = 4 + static_cast<int>(rng() % 6);
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXi y(n);
    std::vector<Eigen::Vector2d> A, B;
    for (int i = 0; i < n; ++i) {
      y[i] = i % 2 == 0 ? -1 : 1;
      X(i, 0) = g(rng) + 3.0 * y[i];
      X(i, 1) = g(rng);
      (y[i] < 0 ? A : B).push_back(X.row(i).transpose());
    }
    if (!oracle::separable(A, B)) continue;
    ++checked;
    const auto s = train_linear_svm(X, y, {1e6});
    CHECK(s.kkt_residual < 1e-6);
    CHECK(2.0 / s.weights.norm() == doctest::Approx(oracle::hull_distance(A, B)).epsilon(1e-6));
  }
  CHECK(checked > 30);
}

TEST_CASE("soft margin satisfies KKT and is primal-optimal against perturbations") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const double C : {0.05, 1.0, 20.0}) {
    for (int t = 0; t < 20; ++t) {
      const int n = 6 + static_cast<int>(rng() % 10);
      Eigen::MatrixXd X(n, 2);
      Eigen::VectorXi y(n);
      for (int i = 0; i < n; ++i) {
        y[i] = i < n / 2 ? -1 : 1;
        X(i, 0) = g(rng) + 0.8 * y[i];
        X(i, 1) = g(rng);
      }
      const auto s = train_linear_svm(X, y, {C});
      CHECK(s.converged);
      CHECK(s.kkt_residual < 1e-6);
      CHECK(s.objective == doctest::Approx(primal(X, y, C, s.weights, s.offset)));
      for (int k = 0; k < 20; ++k) {
        Eigen::VectorXd dw(2);
        dw << 1e-3 * g(rng), 1e-3 * g(rng);
        const double db = 1e-3 * g(rng);
        CHECK(primal(X, y, C, s.weights + dw, s.offset + db) >= s.objective - 1e-9);
      }
    }
  }
}

TEST_CASE("input validation") {
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(3, 2);
  Eigen::VectorXi same = Eigen::VectorXi::Constant(3, 1);
  CHECK_THROWS_AS((void)train_linear_svm(X, same), std::invalid_argument);
  Eigen::VectorXi bad(3);
  bad << 1, 0, -1;
  CHECK_THROWS_AS((void)train_linear_svm(X, bad), std::invalid_argument);
  Eigen::VectorXi ok(3);
  ok << 1, -1, -1;
  CHECK_THROWS_AS((void)train_linear_svm(X, ok, {0.0}), std::invalid_argument);
}
