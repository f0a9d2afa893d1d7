#include "buckyqa/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>

#include "csv.hpp"

namespace buckyqa {

Eigen::MatrixXd DecomposedEffects::reconstruct() const {
  return fixed.replicate(1, normal.cols()) + normal + defective + noise;
}

Eigen::VectorXd pointwise_median(const Eigen::MatrixXd& profiles) {
  const Eigen::Index m = profiles.cols();
  if (m == 0) throw InsufficientDataError("pointwise_median: no profiles");
  Eigen::VectorXd out(profiles.rows());
  std::vector<double> row(static_cast<std::size_t>(m));
  const auto mid = static_cast<std::size_t>(m / 2);
  for (Eigen::Index x = 0; x < profiles.rows(); ++x) {
    for (Eigen::Index j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = profiles(x, j);
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(mid), row.end());
    double med = row[mid];
    if (m % 2 == 0) {
      const double lower = *std::max_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(mid));
      med = 0.5 * (lower + med);
    }
    out[x] = med;
  }
  return out;
}

double mad_sigma(const Eigen::VectorXd& finest_details) {
  if (finest_details.size() == 0) return 0.0;
  std::vector<double> a(static_cast<std::size_t>(finest_details.size()));
  for (Eigen::Index i = 0; i < finest_details.size(); ++i) a[static_cast<std::size_t>(i)] = std::abs(finest_details[i]);
  const std::size_t mid = a.size() / 2;
  std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid), a.end());
  double med = a[mid];
  if (a.size() % 2 == 0) med = 0.5 * (med + *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid)));
  return med / 0.6744897501960817;
}

namespace {

// Zeroes entries at or below `threshold`, then keeps at most `max_nonzero` of the largest.
void sparsify(Eigen::Ref<Eigen::VectorXd> v, double threshold, Eigen::Index max_nonzero) {
  std::vector<Eigen::Index> support;
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (std::abs(v[x]) <= threshold) {
      v[x] = 0.0;
    } else {
      support.push_back(x);
    }
  }
  if (static_cast<Eigen::Index>(support.size()) <= max_nonzero) return;
  std::stable_sort(support.begin(), support.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return std::abs(v[a]) > std::abs(v[b]); });
  for (std::size_t k = static_cast<std::size_t>(max_nonzero); k < support.size(); ++k) v[support[k]] = 0.0;
}

}  // namespace

DecomposedEffects decompose_baseline(const SampleGroup& group, const DecompositionConfig& cfg) {
  if (group.profiles.size() < 2) {
    throw InsufficientDataError("decompose_baseline: sample " + std::to_string(group.sample_index) +
                                " needs at least 2 profiles, has " + std::to_string(group.profiles.size()));
  }
  if (!(cfg.defect_budget >= 0.0) || !(cfg.threshold_scale >= 0.0)) {
    throw std::invalid_argument("decompose_baseline: budget and threshold scale must be non-negative");
  }

  const Eigen::MatrixXd y = group.intensity_matrix();
  const Eigen::Index n = y.rows();
  const Eigen::Index m = y.cols();
  const Eigen::Index padded = next_power_of_two(n);

  WaveletFamily family = cfg.wavelet;
  if (WaveletTransform::max_levels(padded, family) == 0) family = WaveletFamily::Haar;
  int levels = WaveletTransform::max_levels(padded, family);
  if (cfg.max_levels > 0) levels = std::min(levels, cfg.max_levels);
  const WaveletTransform dwt(family, levels);
  const int detect = std::clamp(cfg.detection_levels, 0, levels);
  const int noisy = std::clamp(cfg.noise_levels, 0, levels);
  const double universal = std::sqrt(2.0 * std::log(static_cast<double>(padded)));
  const auto max_nonzero = static_cast<Eigen::Index>(std::floor(cfg.defect_budget * static_cast<double>(n)));

  DecomposedEffects out;
  out.sample_index = group.sample_index;
  out.grid = group.profiles.front().grid;
  out.observation_indices = group.observation_indices();
  out.fixed = pointwise_median(y);
  out.normal = Eigen::MatrixXd::Zero(n, m);
  out.defective = Eigen::MatrixXd::Zero(n, m);
  out.noise = Eigen::MatrixXd::Zero(n, m);
  out.thresholds = Eigen::VectorXd::Zero(m);

  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::VectorXd residual = y.col(j) - out.fixed;
    Eigen::Index offset = 0;
    const Eigen::VectorXd coeffs = dwt.forward(symmetric_pad(residual, padded, offset));

    const auto finest = dwt.detail_band(padded, 1);
    const double threshold = cfg.threshold_scale * mad_sigma(coeffs.segment(finest.offset, finest.length)) * universal;

    Eigen::VectorXd defective_c = Eigen::VectorXd::Zero(padded);
    Eigen::VectorXd normal_c = Eigen::VectorXd::Zero(padded);
    const auto approx = dwt.approximation_band(padded);
    normal_c.segment(approx.offset, approx.length) = coeffs.segment(approx.offset, approx.length);
    for (int level = 1; level <= levels; ++level) {
      const auto band = dwt.detail_band(padded, level);
      for (Eigen::Index k = band.offset; k < band.offset + band.length; ++k) {
        if (level <= detect && std::abs(coeffs[k]) > threshold) {
          defective_c[k] = coeffs[k];
        } else if (level > noisy) {
          normal_c[k] = coeffs[k];
        }
      }
    }

    Eigen::VectorXd defective = dwt.inverse(defective_c).segment(offset, n);
    sparsify(defective, threshold, max_nonzero);
    out.defective.col(j) = defective;
    out.normal.col(j) = dwt.inverse(normal_c).segment(offset, n);
    // Noise is the remainder, so the reconstruction identity holds to rounding.
    out.noise.col(j) = residual - out.normal.col(j) - out.defective.col(j);
    out.thresholds[j] = threshold;
  }
  return out;
}

RamanBand classify_band(double shift) {
  if (shift < 300.0) return RamanBand::RadialBreathing;
  if (shift >= 1250.0 && shift <= 1400.0) return RamanBand::DBand;
  if (shift > 1400.0 && shift < 1550.0) return RamanBand::BetweenDAndG;
  if (shift >= 1550.0 && shift <= 1600.0) return RamanBand::GBand;
  return RamanBand::Other;
}

const char* to_string(RamanBand band) {
  switch (band) {
    case RamanBand::RadialBreathing: return "RBM";
    case RamanBand::DBand: return "D-band";
    case RamanBand::BetweenDAndG: return "between D and G";
    case RamanBand::GBand: return "G-band";
    case RamanBand::Other: return "other";
  }
  return "other";
}

std::vector<DefectEntry> defect_summary(const DecomposedEffects& effects, double threshold) {
  std::vector<DefectEntry> out;
  for (Eigen::Index j = 0; j < effects.defective.cols(); ++j) {
    Eigen::Index at = 0;
    const double peak = effects.defective.col(j).cwiseAbs().maxCoeff(&at);
    if (!(peak > threshold)) continue;
    const double shift = effects.grid ? effects.grid->values[at] : static_cast<double>(at);
    const int obs = j < static_cast<Eigen::Index>(effects.observation_indices.size())
                        ? effects.observation_indices[static_cast<std::size_t>(j)]
                        : static_cast<int>(j) + 1;
    out.push_back({obs, classify_band(shift), shift, peak});
  }
  return out;
}

namespace {

struct PendingEffects {
  std::vector<double> shifts, fixed, normal, defective, noise;
  std::size_t first_line = 0;
};

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

EffectsSet read_effects(std::istream& in, const EffectsLoadOptions& options, const std::string& source) {
  csv::Reader reader(in, source);
  const auto c_sample = reader.require("sample");
  const auto c_obs = reader.require("observation");
  const auto c_shift = reader.require("shift");
  const auto c_fixed = reader.require("fixed");
  const auto c_normal = reader.require("normal");
  const auto c_defective = reader.column("defective");
  const auto c_noise = reader.column("noise");

  std::map<std::pair<int, int>, PendingEffects> pending;
  while (reader.next()) {
    const int sample = reader.index_field(c_sample, "sample", IngestErrorKind::MissingSampleIndex);
    const int obs = reader.index_field(c_obs, "observation", IngestErrorKind::MalformedRow);
    if (sample < 0) reader.fail(IngestErrorKind::MalformedRow, "sample index must be >= 0");
    if (obs < (sample == 0 ? 0 : 1)) reader.fail(IngestErrorKind::MalformedRow, "observation index must be >= 1");
    auto& p = pending[{sample, obs}];
    if (p.shifts.empty()) p.first_line = reader.line();
    p.shifts.push_back(reader.real_field(c_shift, "shift"));
    p.fixed.push_back(reader.real_field(c_fixed, "fixed"));
    p.normal.push_back(reader.real_field_or_zero(c_normal, "normal"));
    p.defective.push_back(c_defective ? reader.real_field_or_zero(*c_defective, "defective") : 0.0);
    p.noise.push_back(c_noise ? reader.real_field_or_zero(*c_noise, "noise") : 0.0);
  }
  if (pending.empty()) throw IngestError(IngestErrorKind::MalformedRow, source + ": no data rows");

  const auto& ref = pending.begin()->second.shifts;
  auto grid = std::make_shared<ShiftGrid>();
  grid->values = to_vector(ref);
  if (ref.size() < 2) throw IngestError(IngestErrorKind::InvalidGrid, source + ": grid has fewer than 2 points");
  for (std::size_t x = 1; x < ref.size(); ++x) {
    if (!(ref[x] > ref[x - 1])) {
      throw IngestError(IngestErrorKind::InvalidGrid, source + ": shifts not strictly increasing");
    }
  }

  EffectsSet set;
  set.grid = grid;
  set.has_defective = c_defective.has_value();

  std::map<int, std::vector<std::pair<int, const PendingEffects*>>> by_sample;
  for (const auto& [key, p] : pending) {
    if (p.shifts != ref) {
      throw IngestError(IngestErrorKind::GridMismatch,
                        source + ":" + std::to_string(p.first_line) + ": sample " + std::to_string(key.first) +
                            ", observation " + std::to_string(key.second) + " does not match the reference grid",
                        p.first_line);
    }
    if (key.first == 0) {
      if (set.ideal) {
        throw IngestError(IngestErrorKind::MalformedRow, source + ": ideal (sample 0) must have exactly one observation");
      }
      set.ideal = to_vector(p.fixed);
    } else {
      by_sample[key.first].emplace_back(key.second, &p);
    }
  }
  if (by_sample.empty()) throw IngestError(IngestErrorKind::MissingSampleIndex, source + ": no samples");

  const auto n = static_cast<Eigen::Index>(ref.size());
  int expected = 1;
  for (const auto& [sample, rows] : by_sample) {
    if (sample != expected) {
      throw IngestError(IngestErrorKind::MissingSampleIndex,
                        source + ": sample " + std::to_string(expected) + " has no rows (samples must be numbered 1..N)");
    }
    ++expected;

    DecomposedEffects e;
    e.sample_index = sample;
    e.grid = grid;
    const auto m = static_cast<Eigen::Index>(rows.size());
    e.fixed = to_vector(rows.front().second->fixed);
    e.normal.resize(n, m);
    e.defective.resize(n, m);
    e.noise.resize(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& [obs, p] = rows[static_cast<std::size_t>(j)];
      e.observation_indices.push_back(obs);
      const Eigen::VectorXd fixed = to_vector(p->fixed);
      const double scale = std::max(1.0, e.fixed.cwiseAbs().maxCoeff());
      if ((fixed - e.fixed).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw IngestError(IngestErrorKind::MalformedRow,
                          source + ":" + std::to_string(p->first_line) + ": fixed effect of sample " +
                              std::to_string(sample) + " differs between observations",
                          p->first_line);
      }
      e.normal.col(j) = to_vector(p->normal);
      e.defective.col(j) = to_vector(p->defective);
      e.noise.col(j) = to_vector(p->noise);
    }

    if (set.has_defective && options.defect_budget < 1.0) {
      const auto limit = static_cast<Eigen::Index>(std::floor(options.defect_budget * static_cast<double>(n)));
      for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index nonzero = (e.defective.col(j).array() != 0.0).count();
        if (nonzero > limit) {
          throw IngestError(IngestErrorKind::InvalidDataset,
                            source + ": defective profile of sample " + std::to_string(sample) + ", observation " +
                                std::to_string(e.observation_indices[static_cast<std::size_t>(j)]) + " has " +
                                std::to_string(nonzero) + " nonzero entries (budget " + std::to_string(limit) + ")");
        }
      }
    }
    set.samples.push_back(std::move(e));
  }
  return set;
}

EffectsSet load_effects(const std::filesystem::path& path, const EffectsLoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(IngestErrorKind::Io, "cannot open '" + path.string() + "'");
  return read_effects(in, options, path.string());
}

void write_effects(const EffectsSet& effects, std::ostream& out) {
  out << "sample,observation,shift,fixed,normal,defective,noise\n";
  const auto& shifts = effects.grid->values;
  using csv::format_double;
  if (effects.ideal) {
    for (Eigen::Index x = 0; x < shifts.size(); ++x) {
      out << "0,1," << format_double(shifts[x]) << ',' << format_double((*effects.ideal)[x]) << ",0,0,0\n";
    }
  }
  for (const auto& e : effects.samples) {
    for (Eigen::Index j = 0; j < e.observation_count(); ++j) {
      const int obs = e.observation_indices[static_cast<std::size_t>(j)];
      for (Eigen::Index x = 0; x < shifts.size(); ++x) {
        out << e.sample_index << ',' << obs << ',' << format_double(shifts[x]) << ',' << format_double(e.fixed[x])
            << ',' << format_double(e.normal(x, j)) << ',' << format_double(e.defective(x, j)) << ','
            << format_double(e.noise(x, j)) << '\n';
      }
    }
  }
}

}  // namespace buckyqa
