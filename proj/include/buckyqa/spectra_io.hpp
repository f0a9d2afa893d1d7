// Data model and CSV ingestion for multichannel Raman spectra grouped into samples.
#ifndef BUCKYQA_SPECTRA_IO_HPP
#define BUCKYQA_SPECTRA_IO_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace buckyqa {

/// Raman shifts (cm^-1) shared by every profile of a dataset.
struct ShiftGrid {
  Eigen::VectorXd values;

  [[nodiscard]] Eigen::Index size() const { return values.size(); }
  bool operator==(const ShiftGrid& other) const {
    return values.size() == other.values.size() && (values.array() == other.values.array()).all();
  }
};

using GridPtr = std::shared_ptr<const ShiftGrid>;

/// One measurement y_ij: intensities over the shared grid.
struct RamanProfile {
  GridPtr grid;
  Eigen::VectorXd intensities;
  int sample_index = 0;
  int observation_index = 0;
};

/// Measurement position inside the unit-square sample zone.
struct Position {
  double u = 0.0;
  double v = 0.0;
};

struct SampleGroup {
  int sample_index = 0;
  std::vector<RamanProfile> profiles;
  /// Empty when no positions file was attached; otherwise aligned with profiles.
  std::vector<Position> positions;

  /// n x m matrix whose columns are the profiles' intensities.
  [[nodiscard]] Eigen::MatrixXd intensity_matrix() const;
  [[nodiscard]] std::vector<int> observation_indices() const;
};

struct Dataset {
  GridPtr grid;
  std::vector<SampleGroup> samples;  // sample indices 1..N in order
  std::optional<RamanProfile> ideal;  // mu_0, sample index 0

  [[nodiscard]] std::size_t sample_count() const { return samples.size(); }
};

enum class IngestErrorKind {
  Io,
  MalformedRow,
  MissingColumn,
  MissingSampleIndex,
  GridMismatch,
  InvalidGrid,
  NegativeIntensity,
  NonFiniteValue,
  DuplicateRow,
  PositionOutOfRange,
  InvalidDataset,
};

[[nodiscard]] const char* to_string(IngestErrorKind kind);

class IngestError : public std::runtime_error {
 public:
  IngestError(IngestErrorKind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  [[nodiscard]] IngestErrorKind kind() const { return kind_; }
  /// 1-based line in the offending file, 0 when not tied to a line.
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  IngestErrorKind kind_;
  std::size_t line_;
};

struct IngestOptions {
  /// Rows with sample index 0 hold the ideal profile mu_0.
  bool sample_zero_is_ideal = true;
};

[[nodiscard]] Dataset load_dataset(const std::filesystem::path& path, const IngestOptions& options = {});
[[nodiscard]] Dataset read_dataset(std::istream& in, const IngestOptions& options = {},
                                   const std::string& source = "<stream>");

/// Reads a single-profile file (any sample index) as mu_0 and checks it against `grid`.
[[nodiscard]] RamanProfile load_ideal(const std::filesystem::path& path, const GridPtr& grid);

/// Attaches a sample,observation,u,v positions file. Throws on unknown profiles,
/// out-of-range coordinates or incomplete coverage of a sample.
void attach_positions(Dataset& dataset, const std::filesystem::path& path);
void read_positions(Dataset& dataset, std::istream& in, const std::string& source = "<stream>");

/// Long-format writer; doubles use the shortest exact round-trip representation.
void write_dataset(const Dataset& dataset, std::ostream& out);

struct Violation {
  int sample = 0;
  std::optional<int> observation;
  std::optional<Eigen::Index> point;
  std::string message;
};

[[nodiscard]] std::string describe(const Violation& v);

/// Every invariant violation of an in-memory dataset; empty iff valid.
[[nodiscard]] std::vector<Violation> validate(const Dataset& dataset);

}  // namespace buckyqa

#endif  // BUCKYQA_SPECTRA_IO_HPP
