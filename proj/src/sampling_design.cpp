#include "buckyqa/sampling_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csv.hpp"

namespace buckyqa {

namespace {

// std::uniform_int_distribution and std::shuffle are implementation-defined;
// plans must be identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

constexpr double kTie = 1e-12;

struct MinStats {
  double min2 = std::numeric_limits<double>::infinity();
  Eigen::Index count = 0;
};

MinStats min_stats(const Eigen::MatrixXd& d2) {
  MinStats s;
  const Eigen::Index n = d2.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = d2(i, j);
      if (v < s.min2 - kTie) {
        s.min2 = v;
        s.count = 1;
      } else if (v <= s.min2 + kTie) {
        ++s.count;
      }
    }
  }
  return s;
}

void update_row(const Eigen::MatrixXd& pts, Eigen::MatrixXd& d2, Eigen::Index i) {
  for (Eigen::Index j = 0; j < pts.rows(); ++j) {
    if (j == i) continue;
    const double v = (pts.row(i) - pts.row(j)).squaredNorm();
    d2(i, j) = v;
    d2(j, i) = v;
  }
}

Eigen::MatrixXd pairwise_squared(const Eigen::MatrixXd& pts) {
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(pts.rows(), pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) update_row(pts, d2, i);
  return d2;
}

bool better(const MinStats& a, const MinStats& b) {
  if (a.min2 > b.min2 + kTie) return true;
  return std::abs(a.min2 - b.min2) <= kTie && a.count < b.count;
}

bool lexicographically_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index d = 0; d < a.cols(); ++d) {
      if (a(i, d) != b(i, d)) return a(i, d) < b(i, d);
    }
  }
  return false;
}

SamplingPlan single_run(Eigen::Index n, Eigen::Index dims, int iterations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double nd = static_cast<double>(n);
  Eigen::MatrixXd pts(n, dims);
  for (Eigen::Index d = 0; d < dims; ++d) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index i = n - 1; i > 0; --i) {
      const auto j = static_cast<Eigen::Index>(bounded(rng, static_cast<std::uint64_t>(i + 1)));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    for (Eigen::Index i = 0; i < n; ++i) pts(i, d) = (static_cast<double>(perm[static_cast<std::size_t>(i)]) + 0.5) / nd;
  }

  SamplingPlan plan;
  plan.seed = seed;
  Eigen::MatrixXd d2 = pairwise_squared(pts);
  MinStats cur = min_stats(d2);
  plan.initial_score = std::sqrt(cur.min2);

  const auto un = static_cast<std::uint64_t>(n);
  for (int it = 0; it < iterations; ++it) {
    const auto d = static_cast<Eigen::Index>(bounded(rng, static_cast<std::uint64_t>(dims)));
    const auto i = static_cast<Eigen::Index>(bounded(rng, un));
    auto j = static_cast<Eigen::Index>(bounded(rng, un - 1));
    if (j >= i) ++j;
    const Eigen::VectorXd row_i = d2.row(i);
    const Eigen::VectorXd row_j = d2.row(j);
    std::swap(pts(i, d), pts(j, d));
    update_row(pts, d2, i);
    update_row(pts, d2, j);
    const MinStats next = min_stats(d2);
    if (better(next, cur)) {
      cur = next;
      ++plan.accepted_swaps;
    } else {
      std::swap(pts(i, d), pts(j, d));
      d2.row(i) = row_i.transpose();
      d2.col(i) = row_i;
      d2.row(j) = row_j.transpose();
      d2.col(j) = row_j;
    }
  }
  plan.points = std::move(pts);
  plan.score = std::sqrt(cur.min2);
  plan.critical_pairs = cur.count;
  return plan;
}

}  // namespace

SamplingPlan maximin_lhd(Eigen::Index n, Eigen::Index dims, int iterations, std::uint64_t seed, int restarts) {
  if (n < 1) throw std::invalid_argument("maximin_lhd: n must be >= 1");
  if (dims < 1) throw std::invalid_argument("maximin_lhd: dims must be >= 1");
  if (iterations < 0) throw std::invalid_argument("maximin_lhd: iterations must be >= 0");
  if (restarts < 1) throw std::invalid_argument("maximin_lhd: restarts must be >= 1");
  if (n == 1) {
    SamplingPlan plan;
    plan.points = Eigen::MatrixXd::Constant(1, dims, 0.5);
    plan.score = std::numeric_limits<double>::infinity();
    plan.initial_score = plan.score;
    plan.seed = seed;
    return plan;
  }
  SamplingPlan best = single_run(n, dims, iterations, seed);
  for (int r = 1; r < restarts; ++r) {
    SamplingPlan cand = single_run(n, dims, iterations, seed + static_cast<std::uint64_t>(r));
    const MinStats a{cand.score * cand.score, cand.critical_pairs};
    const MinStats b{best.score * best.score, best.critical_pairs};
    if (better(a, b) || (!better(b, a) && lexicographically_less(cand.points, best.points))) best = std::move(cand);
  }
  return best;
}

double min_pairwise_distance(const Eigen::MatrixXd& points) {
  if (points.rows() < 2) return std::numeric_limits<double>::infinity();
  return std::sqrt(min_stats(pairwise_squared(points)).min2);
}

bool has_lhd_property(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  if (n == 0) return false;
  for (Eigen::Index d = 0; d < points.cols(); ++d) {
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = points(i, d);
      if (!(v >= 0.0 && v < 1.0)) return false;
      const auto t = static_cast<std::size_t>(std::floor(v * static_cast<double>(n)));
      if (t >= hit.size() || hit[t]) return false;
      hit[t] = true;
    }
  }
  return true;
}

void write_plan_csv(const SamplingPlan& plan, std::ostream& out, int samples) {
  const Eigen::Index dims = plan.points.cols();
  if (samples > 0 && dims != 2) throw std::invalid_argument("write_plan_csv: positions layout needs 2 dimensions");
  if (samples > 0) {
    out << "sample,observation,u,v\n";
    for (int s = 1; s <= samples; ++s) {
      for (Eigen::Index i = 0; i < plan.points.rows(); ++i) {
        out << s << ',' << (i + 1) << ',' << csv::format_double(plan.points(i, 0)) << ','
            << csv::format_double(plan.points(i, 1)) << '\n';
      }
    }
    return;
  }
  out << "point";
  if (dims == 2) {
    out << ",u,v";
  } else {
    for (Eigen::Index d = 0; d < dims; ++d) out << ",x" << (d + 1);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < plan.points.rows(); ++i) {
    out << (i + 1);
    for (Eigen::Index d = 0; d < dims; ++d) out << ',' << csv::format_double(plan.points(i, d));
    out << '\n';
  }
}

}  // namespace buckyqa
