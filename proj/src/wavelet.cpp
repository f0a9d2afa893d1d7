#include "buckyqa/wavelet.hpp"

#include <cmath>
#include <stdexcept>

namespace buckyqa {

namespace {

std::vector<double> scaling_filter(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::Haar:
      return {M_SQRT1_2, M_SQRT1_2};
    case WaveletFamily::Db2: {
      const double s3 = std::sqrt(3.0);
      const double d = 4.0 * M_SQRT2;
      return {(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
    }
    case WaveletFamily::Db4:
      return {0.23037781330889650086,  0.71484657055291564709,  0.63088076792985890788,
              -0.027983769416859854211, -0.18703481171909308408, 0.030841381835560763627,
              0.032883011666885199735,  -0.010597401785069032105};
  }
  throw std::invalid_argument("unknown wavelet family");
}

}  // namespace

WaveletFamily parse_wavelet_family(const std::string& name) {
  if (name == "haar") return WaveletFamily::Haar;
  if (name == "db2") return WaveletFamily::Db2;
  if (name == "db4") return WaveletFamily::Db4;
  throw std::invalid_argument("unknown wavelet family '" + name + "' (expected haar, db2 or db4)");
}

std::string to_string(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::Haar: return "haar";
    case WaveletFamily::Db2: return "db2";
    case WaveletFamily::Db4: return "db4";
  }
  return "unknown";
}

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

Eigen::VectorXd symmetric_pad(const Eigen::VectorXd& x, Eigen::Index length, Eigen::Index& offset) {
  const Eigen::Index n = x.size();
  if (length < n || (length > n && length >= 2 * n)) {
    throw std::invalid_argument("symmetric_pad: target length out of range");
  }
  offset = (length - n) / 2;
  Eigen::VectorXd out(length);
  for (Eigen::Index i = 0; i < length; ++i) {
    Eigen::Index k = i - offset;
    if (k < 0) k = -k - 1;
    if (k >= n) k = 2 * n - k - 1;
    out[i] = x[k];
  }
  return out;
}

WaveletTransform::WaveletTransform(WaveletFamily family, int levels)
    : family_(family), levels_(levels), lowpass_(scaling_filter(family)) {
  if (levels < 1) throw std::invalid_argument("WaveletTransform: levels must be >= 1");
  const std::size_t len = lowpass_.size();
  highpass_.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    highpass_[k] = ((k % 2 == 0) ? 1.0 : -1.0) * lowpass_[len - 1 - k];
  }
}

int WaveletTransform::max_levels(Eigen::Index n, WaveletFamily family) {
  const auto taps = static_cast<Eigen::Index>(scaling_filter(family).size());
  int levels = 0;
  for (Eigen::Index m = n; m >= taps && m % 2 == 0; m /= 2) ++levels;
  return levels;
}

Eigen::VectorXd WaveletTransform::forward(const Eigen::VectorXd& signal) const {
  const Eigen::Index n = signal.size();
  if (!is_power_of_two(n) || levels_ > max_levels(n, family_)) {
    throw std::invalid_argument("WaveletTransform::forward: length " + std::to_string(n) +
                                " does not support " + std::to_string(levels_) + " levels");
  }
  Eigen::VectorXd out = signal;
  Eigen::VectorXd work(n);
  const auto taps = static_cast<Eigen::Index>(lowpass_.size());
  for (Eigen::Index m = n, level = 0; level < levels_; ++level, m /= 2) {
    const Eigen::Index half = m / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
      double a = 0.0;
      double d = 0.0;
      for (Eigen::Index k = 0; k < taps; ++k) {
        const double v = out[(2 * i + k) % m];
        a += lowpass_[static_cast<std::size_t>(k)] * v;
        d += highpass_[static_cast<std::size_t>(k)] * v;
      }
      work[i] = a;
      work[half + i] = d;
    }
    out.head(m) = work.head(m);
  }
  return out;
}

Eigen::VectorXd WaveletTransform::inverse(const Eigen::VectorXd& coefficients) const {
  const Eigen::Index n = coefficients.size();
  if (!is_power_of_two(n) || levels_ > max_levels(n, family_)) {
    throw std::invalid_argument("WaveletTransform::inverse: bad coefficient length");
  }
  Eigen::VectorXd out = coefficients;
  Eigen::VectorXd work(n);
  const auto taps = static_cast<Eigen::Index>(lowpass_.size());
  Eigen::Index m = n >> (levels_ - 1);
  for (int level = 0; level < levels_; ++level, m *= 2) {
    const Eigen::Index half = m / 2;
    work.head(m).setZero();
    for (Eigen::Index i = 0; i < half; ++i) {
      const double a = out[i];
      const double d = out[half + i];
      for (Eigen::Index k = 0; k < taps; ++k) {
        work[(2 * i + k) % m] +=
            lowpass_[static_cast<std::size_t>(k)] * a + highpass_[static_cast<std::size_t>(k)] * d;
      }
    }
    out.head(m) = work.head(m);
  }
  return out;
}

WaveletTransform::Band WaveletTransform::detail_band(Eigen::Index n, int level) const {
  if (level < 1 || level > levels_) throw std::out_of_range("detail_band: level out of range");
  const Eigen::Index len = n >> level;
  return {len, len};
}

WaveletTransform::Band WaveletTransform::approximation_band(Eigen::Index n) const { return {0, n >> levels_}; }

}  // namespace buckyqa
