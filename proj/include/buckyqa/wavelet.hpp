// Periodized orthogonal discrete wavelet transform (Daubechies family).
#ifndef BUCKYQA_WAVELET_HPP
#define BUCKYQA_WAVELET_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace buckyqa {

enum class WaveletFamily {
  Haar,  // 2 taps
  Db2,   // 4 taps
  Db4,   // 8 taps
};

[[nodiscard]] WaveletFamily parse_wavelet_family(const std::string& name);
[[nodiscard]] std::string to_string(WaveletFamily family);

/// Multi-level periodized DWT on power-of-two lengths.
///
/// Coefficient layout after `levels` steps on a length-n signal:
///   [ approximation (n/2^J) | detail J | ... | detail 2 | detail 1 ]
/// so detail level k (1 = finest) occupies [n/2^k, n/2^(k-1)).
class WaveletTransform {
 public:
  struct Band {
    Eigen::Index offset = 0;
    Eigen::Index length = 0;
  };

  WaveletTransform(WaveletFamily family, int levels);

  /// Largest level count for which every stage input is at least the filter length.
  [[nodiscard]] static int max_levels(Eigen::Index n, WaveletFamily family);

  [[nodiscard]] Eigen::VectorXd forward(const Eigen::VectorXd& signal) const;
  [[nodiscard]] Eigen::VectorXd inverse(const Eigen::VectorXd& coefficients) const;

  [[nodiscard]] Band detail_band(Eigen::Index n, int level) const;
  [[nodiscard]] Band approximation_band(Eigen::Index n) const;

  [[nodiscard]] int levels() const { return levels_; }
  [[nodiscard]] WaveletFamily family() const { return family_; }

 private:
  WaveletFamily family_;
  int levels_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

[[nodiscard]] bool is_power_of_two(Eigen::Index n);
[[nodiscard]] Eigen::Index next_power_of_two(Eigen::Index n);

/// Half-sample symmetric extension of `x` to `length` (>= x.size(), < 2 x.size()),
/// with the original centred; `offset` receives the start of x inside the result.
[[nodiscard]] Eigen::VectorXd symmetric_pad(const Eigen::VectorXd& x, Eigen::Index length, Eigen::Index& offset);

}  // namespace buckyqa

#endif  // BUCKYQA_WAVELET_HPP
