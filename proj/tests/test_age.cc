// Copyright 2026 the ageleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "ageleak/age.h"
#include "ageleak/error.h"
#include "oracle_helpers.h"

using namespace ageleak;

namespace {

template <typename Fn>
std::optional<Error> capture(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("inter-arrival moments") {
  const InterArrivalModel geo = InterArrivalModel::geometric(0.25);
  CHECK(geo.mean() == doctest::Approx(4.0));
  CHECK(geo.second_moment() == doctest::Approx((2.0 - 0.25) / (0.25 * 0.25)));
  CHECK(geo.tail(1) == 1.0);
  CHECK(geo.tail(3) == doctest::Approx(0.75 * 0.75));

  const InterArrivalModel det = InterArrivalModel::deterministic(5);
  CHECK(det.mean() == 5.0);
  CHECK(det.second_moment() == 25.0);
  CHECK(det.tail(5) == 1.0);
  CHECK(det.tail(6) == 0.0);

  const InterArrivalModel mix =
      InterArrivalModel::empirical({{1, 0.5}, {4, 0.5}});
  CHECK(mix.mean() == doctest::Approx(2.5));
  CHECK(mix.second_moment() == doctest::Approx(0.5 + 8.0));
  CHECK(mix.tail(1) == doctest::Approx(1.0));
  CHECK(mix.tail(2) == doctest::Approx(0.5));
  CHECK(mix.tail(4) == doctest::Approx(0.5));
  CHECK(mix.tail(5) == 0.0);
}

TEST_CASE("empirical models validate their pmf") {
  auto err = capture([] { InterArrivalModel::empirical({{1, 0.4}, {2, 0.4}}); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);

  err = capture([] { InterArrivalModel::empirical({{0, 0.5}, {2, 0.5}}); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);

  err = capture([] { InterArrivalModel::empirical({}); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kEmptyInput);

  err = capture([] { InterArrivalModel::geometric(0.0); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);

  err = capture([] { InterArrivalModel::deterministic(0); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
}

TEST_CASE("renewal age pmf on pinned points") {
  const InterArrivalModel geo = InterArrivalModel::geometric(0.5);
  CHECK(renewal_age_pmf(geo, 1) == doctest::Approx(0.5));
  CHECK(renewal_age_pmf(geo, 3) == doctest::Approx(0.125));
  const InterArrivalModel det = InterArrivalModel::deterministic(4);
  CHECK(renewal_age_pmf(det, 3) == doctest::Approx(0.25));
  CHECK(renewal_age_pmf(det, 5) == 0.0);
}

TEST_CASE("renewal age pmf is a distribution") {
  for (const InterArrivalModel& model :
       {InterArrivalModel::geometric(0.3), InterArrivalModel::deterministic(7),
        InterArrivalModel::empirical({{2, 0.25}, {3, 0.5}, {9, 0.25}})}) {
    double total = 0.0;
    for (std::int64_t z = 1; z <= 2000; ++z) {
      const double p = renewal_age_pmf(model, z);
      CHECK(p >= 0.0);
      total += p;
      if (model.tail(z + 1) == 0.0) break;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("renewal mean age matches direct summation") {
  for (const InterArrivalModel& model :
       {InterArrivalModel::geometric(0.17), InterArrivalModel::geometric(0.85),
        InterArrivalModel::deterministic(6),
        InterArrivalModel::empirical({{1, 0.2}, {4, 0.3}, {11, 0.5}})}) {
    CHECK(renewal_mean_age(model) ==
          doctest::Approx(testref::ref_renewal_mean(model)).epsilon(1e-10));
  }
}

TEST_CASE("renewal mean age pinned values") {
  // Geometric gaps: the mean age telescopes to exactly 1/p, bit for bit.
  for (int k = 1; k <= 20; ++k) {
    const double p = static_cast<double>(k) / 20.0;
    CHECK(renewal_mean_age(InterArrivalModel::geometric(p)) == 1.0 / p);
  }
  CHECK(renewal_mean_age(InterArrivalModel::deterministic(5)) ==
        doctest::Approx(3.0));
  CHECK(renewal_mean_age(InterArrivalModel::deterministic(1)) ==
        doctest::Approx(1.0));
}

TEST_CASE("queueing-policy age formula") {
  CHECK(aoi_mbt(0.5, 1.0, 1.0).age_slots == doctest::Approx(3.0));
  CHECK(aoi_mbt(0.5, 1.0, 0.75).age_slots == doctest::Approx(34.0 / 9.0));

  auto err = capture([] { aoi_mbt(0.5, 1.0, 0.5); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kUnstable);
  CHECK(err->field() == "mu");

  err = capture([] { aoi_mbt(0.9, 1.0, 0.3); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kUnstable);

  // The lone stable boundary point: everything deterministic at unit rates.
  CHECK(aoi_mbt(1.0, 1.0, 1.0).age_slots == 2.0);
}

TEST_CASE("admission thinning only enters through the product rate") {
  CHECK(aoi_mbt(0.5, 0.8, 0.9).age_slots ==
        doctest::Approx(aoi_mbt(0.8, 0.5, 0.9).age_slots));
  CHECK(aoi_mbt(0.4, 1.0, 0.9).age_slots ==
        doctest::Approx(aoi_mbt(0.8, 0.5, 0.9).age_slots));
}

TEST_CASE("dump-policy age formulas and their components") {
  const AgeFormulaResult dad = aoi_dad(0.5, 3);
  CHECK(dad.age_slots == doctest::Approx(4.0));
  REQUIRE(dad.components.has_value());
  CHECK(dad.components->input_age == doctest::Approx(2.0));
  CHECK(dad.components->sampling_age == doctest::Approx(2.0));
  CHECK(dad.components->input_age + dad.components->sampling_age ==
        doctest::Approx(dad.age_slots));

  CHECK(aoi_dad(0.5, 1).age_slots == doctest::Approx(3.0));
  CHECK(aoi_dad(1.0, 1).age_slots == doctest::Approx(2.0));

  const AgeFormulaResult rad = aoi_rad(0.5, 0.5);
  CHECK(rad.age_slots == doctest::Approx(4.0));
  REQUIRE(rad.components.has_value());
  CHECK(rad.components->input_age + rad.components->sampling_age ==
        doctest::Approx(rad.age_slots));
  CHECK(aoi_rad(0.5, 1.0).age_slots == doctest::Approx(3.0));
  CHECK(aoi_rad(0.1, 0.05).age_slots == doctest::Approx(30.0));
}

TEST_CASE("dump-policy ages are sums of two renewal mean ages") {
  for (double lambda : {0.2, 0.5, 0.9}) {
    for (double mu : {0.3, 0.6, 1.0}) {
      CHECK(aoi_rad(lambda, mu).age_slots ==
            doctest::Approx(
                renewal_mean_age(InterArrivalModel::geometric(lambda)) +
                renewal_mean_age(InterArrivalModel::geometric(mu))));
    }
    for (std::int64_t tau : {1, 2, 5}) {
      CHECK(aoi_dad(lambda, tau).age_slots ==
            doctest::Approx(
                renewal_mean_age(InterArrivalModel::geometric(lambda)) +
                renewal_mean_age(InterArrivalModel::deterministic(tau))));
    }
  }
}

TEST_CASE("age formulas validate their parameters") {
  auto err = capture([] { aoi_dad(0.0, 3); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
  err = capture([] { aoi_dad(0.5, 0); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
  err = capture([] { aoi_rad(0.5, 1.5); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
  err = capture([] { aoi_mbt(0.5, 1.5, 0.9); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
}

TEST_CASE("system-time age estimator") {
  CHECK(aoi_from_system_times({{2, 1}}) == doctest::Approx(2.5));
  CHECK(aoi_from_system_times({{1, 1}}) == doctest::Approx(2.0));

  auto err = capture([] { aoi_from_system_times({}); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kEmptyInput);

  err = capture([] { aoi_from_system_times({{0, 1}}); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
  CHECK(err->field() == "samples");
}

TEST_CASE("system-time estimator reproduces the closed form in expectation") {
  // Deterministic saturated case: every slot generates, unit service. Y = 1,
  // T = 1 gives exactly the boundary age 2.
  std::vector<SystemTimeSample> samples(1000, SystemTimeSample{1, 1});
  CHECK(aoi_from_system_times(samples) == doctest::Approx(2.0));
}
