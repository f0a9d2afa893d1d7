// Mixed-effects split of a sample's profiles:
//   y_ij = mu_i + normal_ij + defective_ij + noise_ij
// A wavelet-thresholding baseline decomposer plus a loader for externally
// produced effects.
#ifndef BUCKYQA_DECOMPOSITION_HPP
#define BUCKYQA_DECOMPOSITION_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "buckyqa/spectra_io.hpp"
#include "buckyqa/wavelet.hpp"

namespace buckyqa {

/// Effects of one sample. Matrices are n x m with column j holding observation j.
struct DecomposedEffects {
  int sample_index = 0;
  GridPtr grid;
  std::vector<int> observation_indices;
  Eigen::VectorXd fixed;
  Eigen::MatrixXd normal;
  Eigen::MatrixXd defective;
  Eigen::MatrixXd noise;
  /// Per-observation universal threshold used by the baseline decomposer (empty when loaded).
  Eigen::VectorXd thresholds;

  [[nodiscard]] Eigen::Index observation_count() const { return normal.cols(); }
  [[nodiscard]] Eigen::MatrixXd reconstruct() const;
};

struct DecompositionConfig {
  WaveletFamily wavelet = WaveletFamily::Db4;
  /// Finest detail levels screened for supra-threshold (defective) coefficients.
  int detection_levels = 3;
  /// Finest detail levels whose sub-threshold content is treated as noise.
  int noise_levels = 2;
  /// Upper bound on total levels; 0 means as many as the padded length allows.
  int max_levels = 0;
  /// Multiplier on sigma * sqrt(2 ln n).
  double threshold_scale = 1.0;
  /// Maximum fraction of nonzero entries per defective profile.
  double defect_budget = 0.10;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pointwise median of the columns of `profiles`.
[[nodiscard]] Eigen::VectorXd pointwise_median(const Eigen::MatrixXd& profiles);

/// Robust noise scale of a residual: median |finest detail| / 0.6745.
[[nodiscard]] double mad_sigma(const Eigen::VectorXd& finest_details);

[[nodiscard]] DecomposedEffects decompose_baseline(const SampleGroup& group, const DecompositionConfig& cfg = {});

struct EffectsSet {
  GridPtr grid;
  std::optional<Eigen::VectorXd> ideal;
  std::vector<DecomposedEffects> samples;
  bool has_defective = false;
};

struct EffectsLoadOptions {
  /// Sparsity budget checked when the defective column is present; >= 1 disables.
  double defect_budget = 0.10;
};

/// Reads the sample,observation,shift,fixed,normal[,defective][,noise] layout.
/// Sample 0 rows, when present, carry the ideal profile in the fixed column.
[[nodiscard]] EffectsSet load_effects(const std::filesystem::path& path, const EffectsLoadOptions& options = {});
[[nodiscard]] EffectsSet read_effects(std::istream& in, const EffectsLoadOptions& options = {},
                                      const std::string& source = "<stream>");
void write_effects(const EffectsSet& effects, std::ostream& out);

enum class RamanBand {
  RadialBreathing,  // < 300
  DBand,            // [1250, 1400]
  BetweenDAndG,     // (1400, 1550)
  GBand,            // [1550, 1600]
  Other,
};

[[nodiscard]] RamanBand classify_band(double shift);
[[nodiscard]] const char* to_string(RamanBand band);

struct DefectEntry {
  int observation = 0;
  RamanBand band = RamanBand::Other;
  double shift = 0.0;
  double magnitude = 0.0;
};

/// Observations whose defective profile exceeds `threshold` in magnitude anywhere,
/// labelled by the band of their largest excursion.
[[nodiscard]] std::vector<DefectEntry> defect_summary(const DecomposedEffects& effects, double threshold);

}  // namespace buckyqa

#endif  // BUCKYQA_DECOMPOSITION_HPP
