#include <doctest.h>

#include <random>

#include "buckyqa/quality.hpp"
#include "reference_case.hpp"

using namespace buckyqa;

namespace {

template <std::size_t N>
Eigen::VectorXd as_vector(const std::array<double, N>& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) v[static_cast<Eigen::Index>(i)] = a[i];
  return v;
}

std::vector<int> flagged(const Eigen::VectorXd& q, double threshold) {
  QualityInputs in;
  for (Eigen::Index i = 0; i < q.size(); ++i) in.sample_indices.push_back(static_cast<int>(i) + 1);
  // W1 = 1 makes Q equal to the supplied consistency column exactly.
  in.consistency = q;
  in.uniformity = Eigen::VectorXd::Zero(q.size());
  return rank_and_flag(in, {1.0, threshold, 0.5}).low_quality_samples();
}

}  // namespace

TEST_CASE("overall quality") {
  CHECK(overall_quality(0.0, 0.0, 0.7) == 0.0);
  CHECK(overall_quality(0.5, 0.2, 0.3) == doctest::Approx(0.29));
  CHECK_THROWS_AS((void)overall_quality(0.5, 0.2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)overall_quality(0.5, 0.2, -0.1), std::invalid_argument);
  Eigen::Array3d c(0.1, 0.2, 0.3);
  Eigen::Array3d u(0.3, 0.2, 0.1);
  const Eigen::Array3d q = overall_quality(c, u, 0.25);
  CHECK(q[0] == 0.25 * 0.1 + 0.75 * 0.3);
}

TEST_CASE("three-material flag sets at 0.5") {
  CHECK(flagged(as_vector(reference::q_raw), 0.5) == std::vector<int>{2, 5});
  CHECK(flagged(as_vector(reference::q_acid), 0.5) == std::vector<int>{2, 5});
  CHECK(flagged(as_vector(reference::q_functionalized), 0.5) == std::vector<int>{2, 4});
}

TEST_CASE("ranking ties go to the lower sample index") {
  Eigen::VectorXd v(4);
  v << 0.3, 0.1, 0.3, 0.1;
  CHECK(rank_ascending(v, {1, 2, 3, 4}) == std::vector<int>{2, 4, 1, 3});
  CHECK(rank_ascending(v, {7, 2, 5, 1}) == std::vector<int>{1, 2, 5, 7});
}

TEST_CASE("all-zero indices: no flags, identity ranking") {
  QualityInputs in;
  in.sample_indices = {1, 2, 3, 4, 5};
  in.consistency = Eigen::VectorXd::Zero(5);
  in.uniformity = Eigen::VectorXd::Zero(5);
  const auto r = rank_and_flag(in);
  CHECK(r.ranking == in.sample_indices);
  for (const auto& s : r.samples) {
    CHECK(s.quality == 0.0);
    CHECK_FALSE(s.low_quality);
    CHECK_FALSE(s.nonuniform);
    CHECK_FALSE(s.inconsistent);
    CHECK_FALSE(s.defective);
  }
}

TEST_CASE("flags, monotonicity and transform invariance over random inputs") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 10);
    QualityInputs in;
    in.consistency.resize(n);
    in.uniformity.resize(n);
    for (int i = 0; i < n; ++i) {
      in.sample_indices.push_back(i + 1);
      in.consistency[i] = u(rng);
      in.uniformity[i] = u(rng);
      in.defective.push_back(rng() % 2 == 0);
      in.inconsistent.push_back(rng() % 3 == 0);
    }
    const FlagThresholds th{u(rng), u(rng), u(rng)};
    const auto r = rank_and_flag(in, th);
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) {
      const auto& s = r.samples[static_cast<std::size_t>(i)];
      q[i] = s.quality;
      CHECK(s.quality == th.weight * s.consistency + (1.0 - th.weight) * s.uniformity);
      CHECK(s.quality >= 0.0);
      CHECK(s.quality <= 1.0);
      CHECK(s.low_quality == (s.quality > th.quality));
      CHECK(s.nonuniform == (s.uniformity > th.uniformity));
      CHECK(s.defective == in.defective[static_cast<std::size_t>(i)]);
      CHECK(s.inconsistent == in.inconsistent[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd transformed = (q.array() * 3.0).exp() - 7.0;
    CHECK(rank_ascending(transformed, in.sample_indices) == r.ranking);

    // Raising one sample's consistency never moves it earlier.
    const int k = static_cast<int>(rng() % static_cast<unsigned>(n));
    QualityInputs worse = in;
    worse.consistency[k] = std::min(1.0, worse.consistency[k] + u(rng));
    const auto r2 = rank_and_flag(worse, th);
    const auto pos = [&](const std::vector<int>& rank) {
      return std::find(rank.begin(), rank.end(), k + 1) - rank.begin();
    };
    CHECK(pos(r2.ranking) >= pos(r.ranking));
  }
}

TEST_CASE("input validation") {
  QualityInputs in;
  in.sample_indices = {1, 2};
  in.consistency = Eigen::VectorXd::Zero(3);
  in.uniformity = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS((void)rank_and_flag(in), std::invalid_argument);
}
