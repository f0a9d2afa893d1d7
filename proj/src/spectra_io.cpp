#include "buckyqa/spectra_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "csv.hpp"

namespace buckyqa {

namespace csv {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace csv

const char* to_string(IngestErrorKind kind) {
  switch (kind) {
    case IngestErrorKind::Io: return "io";
    case IngestErrorKind::MalformedRow: return "malformed-row";
    case IngestErrorKind::MissingColumn: return "missing-column";
    case IngestErrorKind::MissingSampleIndex: return "missing-sample-index";
    case IngestErrorKind::GridMismatch: return "grid-mismatch";
    case IngestErrorKind::InvalidGrid: return "invalid-grid";
    case IngestErrorKind::NegativeIntensity: return "negative-intensity";
    case IngestErrorKind::NonFiniteValue: return "non-finite-value";
    case IngestErrorKind::DuplicateRow: return "duplicate-row";
    case IngestErrorKind::PositionOutOfRange: return "position-out-of-range";
    case IngestErrorKind::InvalidDataset: return "invalid-dataset";
  }
  return "unknown";
}

Eigen::MatrixXd SampleGroup::intensity_matrix() const {
  if (profiles.empty()) return {};
  Eigen::MatrixXd m(profiles.front().intensities.size(), static_cast<Eigen::Index>(profiles.size()));
  for (std::size_t j = 0; j < profiles.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = profiles[j].intensities;
  return m;
}

std::vector<int> SampleGroup::observation_indices() const {
  std::vector<int> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.push_back(p.observation_index);
  return out;
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(IngestErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

struct PendingProfile {
  std::vector<double> shifts;
  std::vector<double> intensities;
  std::size_t first_line = 0;
};

std::string coord(int sample, int observation) {
  return "(sample " + std::to_string(sample) + ", observation " + std::to_string(observation) + ")";
}

void check_grid_values(const ShiftGrid& grid, std::vector<Violation>& out) {
  if (grid.size() < 2) out.push_back({0, std::nullopt, std::nullopt, "shift grid has fewer than 2 points"});
  for (Eigen::Index x = 0; x < grid.size(); ++x) {
    if (!std::isfinite(grid.values[x])) {
      out.push_back({0, std::nullopt, x, "non-finite Raman shift"});
    } else if (x > 0 && !(grid.values[x] > grid.values[x - 1])) {
      out.push_back({0, std::nullopt, x, "shift grid not strictly increasing"});
    }
  }
}

void check_profile(const RamanProfile& p, const ShiftGrid& grid, int sample, std::vector<Violation>& out) {
  const int obs = p.observation_index;
  if (!p.grid || !(*p.grid == grid)) {
    out.push_back({sample, obs, std::nullopt, "profile grid differs from the dataset grid"});
  }
  if (p.intensities.size() != grid.size()) {
    out.push_back({sample, obs, std::nullopt,
                   "profile has " + std::to_string(p.intensities.size()) + " points, grid has " +
                       std::to_string(grid.size())});
  }
  for (Eigen::Index x = 0; x < p.intensities.size(); ++x) {
    const double v = p.intensities[x];
    if (!std::isfinite(v)) {
      out.push_back({sample, obs, x, "non-finite intensity"});
    } else if (v < 0.0) {
      out.push_back({sample, obs, x, "negative intensity"});
    }
  }
}

}  // namespace

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << "sample " << v.sample;
  if (v.observation) os << ", observation " << *v.observation;
  if (v.point) os << ", point " << *v.point;
  os << ": " << v.message;
  return os.str();
}

std::vector<Violation> validate(const Dataset& dataset) {
  std::vector<Violation> out;
  if (!dataset.grid) {
    out.push_back({0, std::nullopt, std::nullopt, "dataset has no shift grid"});
    return out;
  }
  const ShiftGrid& grid = *dataset.grid;
  check_grid_values(grid, out);

  if (dataset.ideal) {
    if (dataset.ideal->sample_index != 0) {
      out.push_back({dataset.ideal->sample_index, std::nullopt, std::nullopt, "ideal profile must carry sample index 0"});
    }
    check_profile(*dataset.ideal, grid, 0, out);
  }

  for (std::size_t k = 0; k < dataset.samples.size(); ++k) {
    const SampleGroup& g = dataset.samples[k];
    const int expected = static_cast<int>(k) + 1;
    if (g.sample_index != expected) {
      out.push_back({g.sample_index, std::nullopt, std::nullopt,
                     "sample index out of sequence (expected " + std::to_string(expected) + ")"});
    }
    if (g.profiles.empty()) out.push_back({g.sample_index, std::nullopt, std::nullopt, "sample has no profiles"});

    std::set<int> seen;
    for (const RamanProfile& p : g.profiles) {
      if (p.sample_index != g.sample_index) {
        out.push_back({g.sample_index, p.observation_index, std::nullopt, "profile sample index disagrees with its group"});
      }
      if (p.observation_index < 1) {
        out.push_back({g.sample_index, p.observation_index, std::nullopt, "observation index must be >= 1"});
      }
      if (!seen.insert(p.observation_index).second) {
        out.push_back({g.sample_index, p.observation_index, std::nullopt, "duplicate observation index"});
      }
      check_profile(p, grid, g.sample_index, out);
    }

    if (!g.positions.empty()) {
      if (g.positions.size() != g.profiles.size()) {
        out.push_back({g.sample_index, std::nullopt, std::nullopt,
                       std::to_string(g.positions.size()) + " positions for " + std::to_string(g.profiles.size()) +
                           " profiles"});
      }
      for (std::size_t j = 0; j < g.positions.size(); ++j) {
        const auto [u, v] = g.positions[j];
        if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
          const int obs = j < g.profiles.size() ? g.profiles[j].observation_index : static_cast<int>(j) + 1;
          out.push_back({g.sample_index, obs, std::nullopt, "position outside the unit square"});
        }
      }
    }
  }
  return out;
}

namespace {

struct ParsedProfiles {
  GridPtr grid;
  std::map<std::pair<int, int>, RamanProfile> profiles;
  std::map<std::pair<int, int>, std::size_t> first_lines;
};

ParsedProfiles parse_profiles(std::istream& in, const std::string& source, bool allow_sample_zero) {
  csv::Reader reader(in, source);
  const auto c_sample = reader.require("sample");
  const auto c_obs = reader.require("observation");
  const auto c_shift = reader.require("shift");
  const auto c_int = reader.require("intensity");

  std::map<std::pair<int, int>, PendingProfile> pending;
  while (reader.next()) {
    const int sample = reader.index_field(c_sample, "sample", IngestErrorKind::MissingSampleIndex);
    const int obs = reader.index_field(c_obs, "observation", IngestErrorKind::MalformedRow);
    const double shift = reader.real_field(c_shift, "shift");
    const double intensity = reader.real_field(c_int, "intensity");

    if (sample < 0 || (sample == 0 && !allow_sample_zero)) {
      reader.fail(IngestErrorKind::MalformedRow, "sample index must be >= 1, got " + std::to_string(sample));
    }
    if (obs < (sample == 0 ? 0 : 1)) {
      reader.fail(IngestErrorKind::MalformedRow, "observation index must be >= 1, got " + std::to_string(obs));
    }
    if (intensity < 0.0) {
      reader.fail(IngestErrorKind::NegativeIntensity,
                  "negative intensity " + csv::format_double(intensity) + " at " + coord(sample, obs));
    }
    auto& p = pending[{sample, obs}];
    if (p.shifts.empty()) p.first_line = reader.line();
    p.shifts.push_back(shift);
    p.intensities.push_back(intensity);
  }
  if (pending.empty()) throw IngestError(IngestErrorKind::MalformedRow, source + ": no data rows");

  // Reference grid: first profile in (sample, observation) order.
  const auto& ref = pending.begin()->second;
  auto grid = std::make_shared<ShiftGrid>();
  grid->values = Eigen::Map<const Eigen::VectorXd>(ref.shifts.data(), static_cast<Eigen::Index>(ref.shifts.size()));

  ParsedProfiles parsed;
  parsed.grid = grid;
  for (const auto& [key, p] : pending) {
    const std::string where = source + ":" + std::to_string(p.first_line) + ": " + coord(key.first, key.second);
    if (p.shifts.size() < 2) {
      throw IngestError(IngestErrorKind::InvalidGrid, where + " has fewer than 2 points", p.first_line);
    }
    for (std::size_t x = 1; x < p.shifts.size(); ++x) {
      if (!(p.shifts[x] > p.shifts[x - 1])) {
        throw IngestError(IngestErrorKind::InvalidGrid,
                          where + ": shifts not strictly increasing at point " + std::to_string(x), p.first_line);
      }
    }
    const bool same = p.shifts.size() == ref.shifts.size() &&
                      std::equal(p.shifts.begin(), p.shifts.end(), ref.shifts.begin());
    if (!same) {
      throw IngestError(IngestErrorKind::GridMismatch,
                        where + " has " + std::to_string(p.shifts.size()) +
                            " shifts not matching the reference grid of " + std::to_string(ref.shifts.size()),
                        p.first_line);
    }
    RamanProfile profile;
    profile.grid = grid;
    profile.intensities =
        Eigen::Map<const Eigen::VectorXd>(p.intensities.data(), static_cast<Eigen::Index>(p.intensities.size()));
    profile.sample_index = key.first;
    profile.observation_index = key.second;
    parsed.profiles.emplace(key, std::move(profile));
    parsed.first_lines.emplace(key, p.first_line);
  }
  return parsed;
}

}  // namespace

Dataset read_dataset(std::istream& in, const IngestOptions& options, const std::string& source) {
  ParsedProfiles parsed = parse_profiles(in, source, options.sample_zero_is_ideal);

  Dataset ds;
  ds.grid = parsed.grid;
  std::map<int, SampleGroup> groups;
  for (auto& [key, profile] : parsed.profiles) {
    if (key.first == 0) {
      if (ds.ideal) {
        throw IngestError(IngestErrorKind::InvalidDataset,
                          source + ": ideal profile (sample 0) must have exactly one observation",
                          parsed.first_lines[key]);
      }
      ds.ideal = std::move(profile);
    } else {
      auto& g = groups[key.first];
      g.sample_index = key.first;
      g.profiles.push_back(std::move(profile));
    }
  }
  if (groups.empty()) {
    throw IngestError(IngestErrorKind::MissingSampleIndex, source + ": no samples (only sample 0 present)");
  }

  int expected = 1;
  for (auto& [index, g] : groups) {
    if (index != expected) {
      throw IngestError(IngestErrorKind::MissingSampleIndex,
                        source + ": sample " + std::to_string(expected) +
                            " has no rows (samples must be numbered 1..N)");
    }
    ds.samples.push_back(std::move(g));
    ++expected;
  }

  if (const auto violations = validate(ds); !violations.empty()) {
    throw IngestError(IngestErrorKind::InvalidDataset, source + ": " + describe(violations.front()));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, const IngestOptions& options) {
  auto in = open_or_throw(path);
  return read_dataset(in, options, path.string());
}

RamanProfile load_ideal(const std::filesystem::path& path, const GridPtr& grid) {
  auto in = open_or_throw(path);
  ParsedProfiles parsed = parse_profiles(in, path.string(), true);
  if (parsed.profiles.size() != 1) {
    throw IngestError(IngestErrorKind::MalformedRow, path.string() + ": ideal file must hold exactly one profile");
  }
  RamanProfile ideal = std::move(parsed.profiles.begin()->second);
  if (grid) {
    if (!(*ideal.grid == *grid)) {
      throw IngestError(IngestErrorKind::GridMismatch,
                        path.string() + ": ideal profile grid does not match the dataset grid");
    }
    ideal.grid = grid;
  }
  ideal.sample_index = 0;
  ideal.observation_index = 1;
  return ideal;
}

void read_positions(Dataset& dataset, std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  const auto c_sample = reader.require("sample");
  const auto c_obs = reader.require("observation");
  const auto c_u = reader.require("u");
  const auto c_v = reader.require("v");

  std::map<std::pair<int, int>, Position> found;
  while (reader.next()) {
    const int sample = reader.index_field(c_sample, "sample", IngestErrorKind::MissingSampleIndex);
    const int obs = reader.index_field(c_obs, "observation", IngestErrorKind::MalformedRow);
    const double u = reader.real_field(c_u, "u");
    const double v = reader.real_field(c_v, "v");
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
      reader.fail(IngestErrorKind::PositionOutOfRange, "position of " + coord(sample, obs) + " outside [0,1]^2");
    }
    if (sample < 1 || static_cast<std::size_t>(sample) > dataset.samples.size()) {
      reader.fail(IngestErrorKind::MalformedRow, "position for unknown sample " + std::to_string(sample));
    }
    const auto& g = dataset.samples[static_cast<std::size_t>(sample - 1)];
    const bool known = std::any_of(g.profiles.begin(), g.profiles.end(),
                                   [obs](const RamanProfile& p) { return p.observation_index == obs; });
    if (!known) reader.fail(IngestErrorKind::MalformedRow, "position for unknown profile " + coord(sample, obs));
    if (!found.emplace(std::make_pair(sample, obs), Position{u, v}).second) {
      reader.fail(IngestErrorKind::DuplicateRow, "duplicate position for " + coord(sample, obs));
    }
  }

  for (auto& g : dataset.samples) {
    std::vector<Position> positions;
    for (const auto& p : g.profiles) {
      if (auto it = found.find({g.sample_index, p.observation_index}); it != found.end()) positions.push_back(it->second);
    }
    if (!positions.empty() && positions.size() != g.profiles.size()) {
      throw IngestError(IngestErrorKind::InvalidDataset,
                        source + ": positions cover " + std::to_string(positions.size()) + " of " +
                            std::to_string(g.profiles.size()) + " profiles of sample " + std::to_string(g.sample_index));
    }
    g.positions = std::move(positions);
  }
}

void attach_positions(Dataset& dataset, const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  read_positions(dataset, in, path.string());
}

void write_dataset(const Dataset& dataset, std::ostream& out) {
  out << "sample,observation,shift,intensity\n";
  const auto& shifts = dataset.grid->values;
  auto emit = [&](const RamanProfile& p) {
    for (Eigen::Index x = 0; x < p.intensities.size(); ++x) {
      out << p.sample_index << ',' << p.observation_index << ',' << csv::format_double(shifts[x]) << ','
          << csv::format_double(p.intensities[x]) << '\n';
    }
  };
  if (dataset.ideal) emit(*dataset.ideal);
  for (const auto& g : dataset.samples) {
    for (const auto& p : g.profiles) emit(p);
  }
}

}  // namespace buckyqa
