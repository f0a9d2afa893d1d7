#include <doctest.h>

#include "buckyqa/run_config.hpp"

using namespace buckyqa;
using nlohmann::json;

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.lag_window == 2);
  CHECK(c.shape == 5.0);
  CHECK(c.scale == 2.0);
  CHECK(c.weight == 0.3);
  CHECK(c.q_threshold == 0.5);
  CHECK(c.cusum_k == 0.5);
  CHECK(c.cusum_h == 5.0);
  CHECK(c.ewma_lambda == 0.2);
  CHECK(c.ewma_width == 3.0);
  CHECK_FALSE(c.balance.has_value());
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("json round trip") {
  RunConfig c;
  c.balance = 3;
  c.frozen_reference = -0.25;
  c.sigma_estimator = SigmaEstimator::SampleStdDev;
  c.decomposition.defect_budget = 0.2;
  const RunConfig back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("partial files keep the remaining defaults") {
  const RunConfig c = config_from_json(json{{"weight", 0.6}, {"decomposition", {{"wavelet", "haar"}}}});
  CHECK(c.weight == 0.6);
  CHECK(c.shape == 5.0);
  CHECK(std::string(to_string(c.decomposition.wavelet)) == "haar");
  CHECK_FALSE(config_from_json(json{{"balance", nullptr}}).balance.has_value());
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_AS((void)config_from_json(json{{"wieght", 0.3}}), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json(json{{"decomposition", {{"levels", 2}}}}), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json(json{{"weight", 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json(json{{"weight", "high"}}), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json(json{{"shape", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS((void)config_from_json(json::array()), std::invalid_argument);
  CHECK_THROWS_AS((void)load_config("/nonexistent/config.json"), std::invalid_argument);
}

TEST_CASE("hash is stable and sensitive") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  const RunConfig a;
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) == config_hash(RunConfig{}));
  RunConfig b;
  b.lag_window = 3;
  CHECK(config_hash(a) != config_hash(b));
}
