#include "buckyqa/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace buckyqa {

using nlohmann::json;

namespace {

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (const double x : v) a.push_back(x);
  return a;
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

json to_json(const AssessmentReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = r.tool_version;
  j["provenance"] = {{"inputs", r.inputs}, {"config_hash", r.config_hash}, {"effects", r.effects_origin}};
  j["parameters"] = to_json(r.config);

  const auto& c = r.consistency;
  json cj;
  cj["degenerate"] = !c.mmc.has_value();
  cj["note"] = c.note;
  cj["feature_mean"] = vec(c.features.mean.transpose());
  cj["feature_stdev"] = vec(c.features.stdev.transpose());
  if (c.mmc) {
    cj["converged"] = c.mmc->converged;
    cj["iterations"] = c.mmc->iterations;
    cj["balance"] = c.mmc->balance;
    cj["kkt_residual"] = c.mmc->kkt_residual;
    cj["weights"] = vec(c.mmc->weights);
    cj["offset"] = c.mmc->offset;
  }
  cj["threshold"] = c.index ? json(c.index->threshold) : json(nullptr);
  cj["reference"] = c.index ? json(c.index->reference) : json(nullptr);
  j["consistency"] = cj;

  json samples = json::array();
  for (std::size_t i = 0; i < r.quality.samples.size(); ++i) {
    const auto& s = r.quality.samples[i];
    const auto e = static_cast<Eigen::Index>(i);
    json sj;
    sj["sample"] = s.sample_index;
    sj["d"] = c.features.raw(e, 0);
    sj["D"] = c.features.raw(e, 1);
    sj["label"] = c.mmc ? c.mmc->labels[e] : -1;
    sj["decision_value"] = c.mmc ? json(c.mmc->decision_values[e]) : json(nullptr);
    sj["consistency"] = s.consistency;
    sj["uniformity"] = s.uniformity;
    sj["quality"] = s.quality;
    sj["flags"] = {{"inconsistent", s.inconsistent},
                   {"nonuniform", s.nonuniform},
                   {"defective", s.defective},
                   {"low_quality", s.low_quality}};
    json defects = json::array();
    if (i < r.defects.size()) {
      for (const auto& d : r.defects[i]) {
        defects.push_back(
            {{"observation", d.observation}, {"band", to_string(d.band)}, {"shift", d.shift}, {"magnitude", d.magnitude}});
      }
    }
    sj["defects"] = defects;
    samples.push_back(sj);
  }
  j["samples"] = samples;
  j["ranking"] = r.quality.ranking;
  j["low_quality"] = r.quality.low_quality_samples();
  return j;
}

void write_json_report(const AssessmentReport& report, std::ostream& out) { out << to_json(report).dump(2) << '\n'; }

void write_text_report(const AssessmentReport& r, std::ostream& out) {
  const auto& c = r.consistency;
  out << "buckyqa " << r.tool_version << "  config " << r.config_hash << "  effects " << r.effects_origin << '\n';
  for (const auto& in : r.inputs) out << "input  " << in << '\n';
  if (c.index) {
    out << "consistency threshold " << fixed(c.index->threshold, 5) << (c.mmc->converged ? "" : "  (not converged)")
        << '\n';
  } else {
    out << "consistency threshold n/a (degenerate)\n";
  }
  if (!c.note.empty()) out << "note   " << c.note << '\n';
  out << '\n';
  out << pad("sample", 6) << pad("d", 12) << pad("D", 12) << pad("eta", 5) << pad("C", 9) << pad("U", 9)
      << pad("Q", 9) << "  flags\n";
  for (std::size_t i = 0; i < r.quality.samples.size(); ++i) {
    const auto& s = r.quality.samples[i];
    const auto e = static_cast<Eigen::Index>(i);
    std::string flags;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!flags.empty()) flags += ',';
      flags += name;
    };
    add(s.inconsistent, "inconsistent");
    add(s.nonuniform, "nonuniform");
    add(s.defective, "defective");
    add(s.low_quality, "low-quality");
    out << pad(std::to_string(s.sample_index), 6) << pad(fixed(c.features.raw(e, 0), 4), 12)
        << pad(fixed(c.features.raw(e, 1), 6), 12) << pad(c.mmc ? std::to_string(c.mmc->labels[e]) : "-", 5)
        << pad(fixed(s.consistency, 5), 9) << pad(fixed(s.uniformity, 5), 9) << pad(fixed(s.quality, 5), 9) << "  "
        << (flags.empty() ? "-" : flags) << '\n';
  }
  out << '\n';
  out << "ranking (best to worst): " << join(r.quality.ranking) << '\n';
  out << "low quality (Q > " << fixed(r.quality.thresholds.quality, 3) << "): " << join(r.quality.low_quality_samples())
      << '\n';
  for (std::size_t i = 0; i < r.defects.size(); ++i) {
    for (const auto& d : r.defects[i]) {
      out << "defect sample " << r.quality.samples[i].sample_index << " observation " << d.observation << ": "
          << to_string(d.band) << " at " << fixed(d.shift, 1) << ", magnitude " << fixed(d.magnitude, 4) << '\n';
    }
  }
}

void write_chart_summary(const ChartReport& r, std::ostream& out) {
  for (const auto& s : r.series) {
    std::vector<int> hits;
    for (const auto i : s.signals) hits.push_back(r.samples[static_cast<std::size_t>(i)]);
    out << (s.kind == ChartKind::Cusum ? "CUSUM " : "EWMA ") << s.statistic << ": " << join(hits) << '\n';
  }
  if (r.consistency && r.consistency->mmc) {
    std::vector<int> hits;
    const auto& labels = r.consistency->mmc->labels;
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
      if (labels[i] > 0) hits.push_back(r.samples[static_cast<std::size_t>(i)]);
    }
    out << "MMC: " << join(hits) << '\n';
  } else if (r.consistency) {
    out << "MMC: -\n";
  }
  for (const auto& n : r.notes) out << "note: " << n << '\n';
}

}  // namespace buckyqa
