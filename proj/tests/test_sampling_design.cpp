#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "buckyqa/sampling_design.hpp"

using namespace buckyqa;

namespace {

// Best achievable minimum distance over every 2-D Latin hypercube on n strata.
double exhaustive_maximin_2d(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = static_cast<double>(i - j) / n;
        const double dy = static_cast<double>(perm[static_cast<std::size_t>(i)] - perm[static_cast<std::size_t>(j)]) / n;
        m = std::min(m, std::hypot(dx, dy));
      }
    }
    best = std::max(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("two points sit on the diagonal") {
  const auto p = maximin_lhd(2, 2, 100, 1);
  CHECK(p.score == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(p.critical_pairs == 1);
  CHECK(has_lhd_property(p.points));
}

TEST_CASE("single point") {
  const auto p = maximin_lhd(1, 3, 10, 1);
  CHECK(p.points.rows() == 1);
  CHECK(p.points.cwiseEqual(0.5).all());
  CHECK(std::isinf(p.score));
}

TEST_CASE("every plan is a Latin hypercube at stratum centers") {
  for (Eigen::Index n = 1; n <= 64; n += 7) {
    for (Eigen::Index dims = 1; dims <= 3; ++dims) {
      const auto p = maximin_lhd(n, dims, 300, static_cast<std::uint64_t>(n * 10 + dims));
      CHECK(has_lhd_property(p.points));
      const Eigen::MatrixXd centers = p.points * static_cast<double>(n) - Eigen::MatrixXd::Constant(n, dims, 0.5);
      CHECK((centers.array() - centers.array().round()).abs().maxCoeff() < 1e-9);
      if (n > 1) {
        CHECK(p.score == doctest::Approx(min_pairwise_distance(p.points)));
        CHECK(p.score >= p.initial_score);
      }
    }
  }
}

TEST_CASE("small 2-D plans reach the exhaustive optimum") {
  for (int n = 2; n <= 7; ++n) {
    const auto p = maximin_lhd(n, 2, 4000, 11, 4);
    CAPTURE(n);
    CHECK(p.score <= exhaustive_maximin_2d(n) + 1e-12);
    CHECK(p.score == doctest::Approx(exhaustive_maximin_2d(n)).epsilon(1e-12));
  }
}

TEST_CASE("plans are deterministic for a seed and vary across seeds") {
  const auto a = maximin_lhd(20, 2, 500, 42, 3);
  const auto b = maximin_lhd(20, 2, 500, 42, 3);
  CHECK(a.points == b.points);
  CHECK(a.score == b.score);
  const auto c = maximin_lhd(20, 2, 500, 43, 3);
  CHECK(a.points != c.points);
}

TEST_CASE("more restarts never lower the score") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto one = maximin_lhd(12, 3, 200, seed, 1);
    const auto many = maximin_lhd(12, 3, 200, seed, 5);
    CHECK(many.score >= one.score - 1e-12);
  }
}

TEST_CASE("lhd property checker") {
  Eigen::MatrixXd ok(2, 1);
  ok << 0.25, 0.75;
  CHECK(has_lhd_property(ok));
  Eigen::MatrixXd clash(2, 1);
  clash << 0.1, 0.2;
  CHECK_FALSE(has_lhd_property(clash));
  Eigen::MatrixXd outside(2, 1);
  outside << 0.25, 1.0;
  CHECK_FALSE(has_lhd_property(outside));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS((void)maximin_lhd(0, 2, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)maximin_lhd(3, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)maximin_lhd(3, 2, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)maximin_lhd(3, 2, 10, 1, 0), std::invalid_argument);
}

TEST_CASE("plan csv layouts") {
  const auto p = maximin_lhd(2, 2, 10, 1);
  std::ostringstream plain;
  write_plan_csv(p, plain);
  CHECK(plain.str().rfind("point,u,v\n1,", 0) == 0);
  std::ostringstream positions;
  write_plan_csv(p, positions, 2);
  const std::string s = positions.str();
  CHECK(s.rfind("sample,observation,u,v\n1,1,", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);
  const auto p3 = maximin_lhd(3, 3, 10, 1);
  std::ostringstream three;
  write_plan_csv(p3, three);
  CHECK(three.str().rfind("point,x1,x2,x3\n", 0) == 0);
  std::ostringstream sink;
  CHECK_THROWS_AS(write_plan_csv(p3, sink, 1), std::invalid_argument);
}
