#include "buckyqa/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace buckyqa {

using nlohmann::json;

void RunConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("config: ") + what);
  };
  require(lag_window >= 1, "lag_window must be >= 1");
  require(shape > 1.0, "shape must be > 1");
  require(scale > 0.0, "scale must be > 0");
  require(svm_c > 0.0, "svm_c must be > 0");
  require(!balance || *balance >= 0, "balance must be >= 0");
  require(mmc_max_iterations >= 1, "mmc_max_iterations must be >= 1");
  require(weight >= 0.0 && weight <= 1.0, "weight must lie in [0, 1]");
  require(defect_threshold >= 0.0, "defect_threshold must be >= 0");
  require(cusum_k >= 0.0, "cusum_k must be >= 0");
  require(cusum_h > 0.0, "cusum_h must be > 0");
  require(ewma_lambda > 0.0 && ewma_lambda <= 1.0, "ewma_lambda must lie in (0, 1]");
  require(ewma_width > 0.0, "ewma_width must be > 0");
  require(in_control_prefix >= 0, "in_control_prefix must be >= 0");
  const auto& d = decomposition;
  require(d.detection_levels >= 1, "decomposition.detection_levels must be >= 1");
  require(d.noise_levels >= 0, "decomposition.noise_levels must be >= 0");
  require(d.max_levels >= 0, "decomposition.max_levels must be >= 0");
  require(d.threshold_scale > 0.0, "decomposition.threshold_scale must be > 0");
  require(d.defect_budget > 0.0 && d.defect_budget <= 1.0, "decomposition.defect_budget must lie in (0, 1]");
}

namespace {

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T>
void take_optional(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
  } else {
    out = j.at(key).get<T>();
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument("config: unknown key '" + where + key + "'");
  }
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(j,
                 {"lag_window", "center", "shape", "scale", "svm_c", "balance", "mmc_max_iterations",
                  "frozen_reference", "exclude_diagonal", "weight", "q_threshold", "u_threshold", "defect_threshold",
                  "cusum_k", "cusum_h", "ewma_lambda", "ewma_width", "in_control_prefix",
                  "sigma_estimator", "decomposition"},
                 "");
  try {
    take(j, "lag_window", c.lag_window);
    take(j, "center", c.center);
    take(j, "shape", c.shape);
    take(j, "scale", c.scale);
    take(j, "svm_c", c.svm_c);
    take_optional(j, "balance", c.balance);
    take(j, "mmc_max_iterations", c.mmc_max_iterations);
    take_optional(j, "frozen_reference", c.frozen_reference);
    take(j, "exclude_diagonal", c.exclude_diagonal);
    take(j, "weight", c.weight);
    take(j, "q_threshold", c.q_threshold);
    take(j, "u_threshold", c.u_threshold);
    take(j, "defect_threshold", c.defect_threshold);
    take(j, "cusum_k", c.cusum_k);
    take(j, "cusum_h", c.cusum_h);
    take(j, "ewma_lambda", c.ewma_lambda);
    take(j, "ewma_width", c.ewma_width);
    take(j, "in_control_prefix", c.in_control_prefix);
    if (j.contains("sigma_estimator")) c.sigma_estimator = parse_sigma_estimator(j.at("sigma_estimator").get<std::string>());
    if (j.contains("decomposition")) {
      const json& d = j.at("decomposition");
      if (!d.is_object()) throw std::invalid_argument("config: decomposition must be an object");
      reject_unknown(d, {"wavelet", "detection_levels", "noise_levels", "max_levels", "threshold_scale", "defect_budget"},
                     "decomposition.");
      if (d.contains("wavelet")) c.decomposition.wavelet = parse_wavelet_family(d.at("wavelet").get<std::string>());
      take(d, "detection_levels", c.decomposition.detection_levels);
      take(d, "noise_levels", c.decomposition.noise_levels);
      take(d, "max_levels", c.decomposition.max_levels);
      take(d, "threshold_scale", c.decomposition.threshold_scale);
      take(d, "defect_budget", c.decomposition.defect_budget);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["lag_window"] = c.lag_window;
  j["center"] = c.center;
  j["shape"] = c.shape;
  j["scale"] = c.scale;
  j["svm_c"] = c.svm_c;
  j["balance"] = c.balance ? json(*c.balance) : json(nullptr);
  j["mmc_max_iterations"] = c.mmc_max_iterations;
  j["frozen_reference"] = c.frozen_reference ? json(*c.frozen_reference) : json(nullptr);
  j["exclude_diagonal"] = c.exclude_diagonal;
  j["weight"] = c.weight;
  j["q_threshold"] = c.q_threshold;
  j["u_threshold"] = c.u_threshold;
  j["defect_threshold"] = c.defect_threshold;
  j["cusum_k"] = c.cusum_k;
  j["cusum_h"] = c.cusum_h;
  j["ewma_lambda"] = c.ewma_lambda;
  j["ewma_width"] = c.ewma_width;
  j["in_control_prefix"] = c.in_control_prefix;
  j["sigma_estimator"] = to_string(c.sigma_estimator);
  j["decomposition"] = {
      {"wavelet", to_string(c.decomposition.wavelet)},
      {"detection_levels", c.decomposition.detection_levels},
      {"noise_levels", c.decomposition.noise_levels},
      {"max_levels", c.decomposition.max_levels},
      {"threshold_scale", c.decomposition.threshold_scale},
      {"defect_budget", c.decomposition.defect_budget},
  };
  return j;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(config).dump())));
  return buf;
}

}  // namespace buckyqa
