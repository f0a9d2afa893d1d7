#include <doctest.h>

#include <random>

#include "buckyqa/uniformity.hpp"
#include "oracles.hpp"

using namespace buckyqa;

namespace {

// Row-wise sample standard deviation averaged over rows, written out longhand.
double uniformity_longhand(const Eigen::MatrixXd& S) {
  const auto n = static_cast<std::size_t>(S.rows());
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) mean += S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) - mean;
      ss += d * d;
    }
    total += std::sqrt(ss / static_cast<double>(n - 1));
  }
  return total / static_cast<double>(n);
}

Eigen::MatrixXd random_similarity(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) S(j, k) = S(k, j) = u(rng);
  }
  return S;
}

}  // namespace

TEST_CASE("similarity matrix examples") {
  Eigen::MatrixXd same = Eigen::VectorXd::LinSpaced(8, 1, 8).replicate(1, 4);
  CHECK((similarity_matrix(same) - Eigen::MatrixXd::Ones(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(10, 3);
  p.col(0).head(3) << 1, 2, 1;
  p.col(1).head(3) << 2, 4, 2;
  p.col(2).tail(3) << 3, 1, 3;
  const Eigen::MatrixXd S = similarity_matrix(p, {2});
  Eigen::Matrix3d expected;
  expected << 1, 1, 0, 1, 1, 0, 0, 0, 1;
  CHECK((S - expected).cwiseAbs().maxCoeff() < 1e-12);
  for (Eigen::Index j = 0; j < 3; ++j) {
    for (Eigen::Index k = 0; k < 3; ++k) {
      CHECK(S(j, k) == doctest::Approx(oracle::naive_similarity(oracle::to_std(p.col(j)), oracle::to_std(p.col(k)), 2)));
    }
  }
}

TEST_CASE("similarity matrix is symmetric with unit diagonal") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd p(24, 6);
    for (auto& v : p.reshaped()) v = u(rng);
    const Eigen::MatrixXd S = similarity_matrix(p, {3});
    CHECK((S - S.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((S.diagonal().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("all-zero normal effects") {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(6, 3);
  CHECK(similarity_matrix(p) == Eigen::MatrixXd::Ones(3, 3));
  p(2, 2) = 1.0;
  const Eigen::MatrixXd S = similarity_matrix(p);
  CHECK(S(0, 1) == 1.0);
  CHECK(S(0, 2) == 0.0);
  CHECK(S(2, 2) == 1.0);
}

TEST_CASE("uniformity index examples") {
  CHECK(uniformity_index(Eigen::MatrixXd::Ones(5, 5)) == 0.0);
  const double u2 = uniformity_index(Eigen::Matrix2d::Identity());
  CHECK(u2 == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS((void)uniformity_index(Eigen::MatrixXd::Ones(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS((void)uniformity_index(Eigen::MatrixXd::Ones(2, 3)), std::invalid_argument);
  Eigen::Matrix3d asym = Eigen::Matrix3d::Identity();
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS((void)uniformity_index(asym), std::invalid_argument);
}

TEST_CASE("uniformity index agrees with the longhand formula and stays in [0, 1]") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 12);
    const Eigen::MatrixXd S = random_similarity(n, rng);
    const double u = uniformity_index(S);
    CHECK(u == doctest::Approx(uniformity_longhand(S)).epsilon(1e-12));
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("uniformity is invariant to permuting observations") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng() % 8);
    const Eigen::MatrixXd S = random_similarity(n, rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + n, rng);
    const Eigen::MatrixXd P = perm * S * perm.transpose();
    CHECK(uniformity_index(P) == doctest::Approx(uniformity_index(S)).epsilon(1e-12));
  }
}

TEST_CASE("excluding the diagonal") {
  Eigen::Matrix3d S = Eigen::Matrix3d::Ones();
  S(0, 1) = S(1, 0) = 0.5;
  CHECK(uniformity_index(S, true) != uniformity_index(S, false));
  CHECK(uniformity_index(Eigen::Matrix3d::Ones().eval(), true) == 0.0);
  CHECK_THROWS_AS((void)uniformity_index(Eigen::Matrix2d::Identity().eval(), true), std::invalid_argument);
}

TEST_CASE("identical observations give zero uniformity") {
  DecomposedEffects e;
  e.sample_index = 4;
  e.normal = Eigen::VectorXd::LinSpaced(16, -1, 1).replicate(1, 5);
  const auto r = assess_uniformity(e);
  CHECK(r.sample_index == 4);
  CHECK(r.index == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(r.row_means.size() == 5);
}
