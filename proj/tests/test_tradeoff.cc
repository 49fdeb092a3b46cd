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
#include <cstdint>
#include <optional>
#include <vector>

#include "ageleak/age.h"
#include "ageleak/error.h"
#include "ageleak/leakage.h"
#include "ageleak/tradeoff.h"
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

TEST_CASE("alpha optimizer handles the boundary and the interior") {
  // Saturating service: admitting everything is optimal.
  const AlphaOptimum boundary = optimize_alpha(0.1, 1.0);
  CHECK(boundary.alpha_star == 1.0);
  CHECK(boundary.age_star == doctest::Approx(aoi_mbt(0.1, 1.0, 1.0).age_slots));

  // lambda > mu: alpha = 1 is infeasible, yet thinning stabilizes the queue.
  const AlphaOptimum interior = optimize_alpha(0.9, 0.3);
  CHECK(std::isfinite(interior.age_star));
  CHECK(interior.alpha_star * 0.9 < 0.3);
  const auto err = capture([] { aoi_mbt(0.9, 1.0, 0.3); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kUnstable);

  // Stable but slow service: the optimum is no worse than full admission.
  const AlphaOptimum tuned = optimize_alpha(0.5, 0.524);
  CHECK(tuned.age_star <= aoi_mbt(0.5, 1.0, 0.524).age_slots + 1e-12);
}

TEST_CASE("alpha optimizer matches exhaustive grid search") {
  const double pairs[][2] = {
      {0.9, 0.3}, {0.5, 0.524}, {0.7, 0.2}, {0.3, 0.8}, {0.95, 0.6}};
  for (const auto& pair : pairs) {
    const AlphaOptimum best = optimize_alpha(pair[0], pair[1]);
    const double grid = testref::ref_grid_age(pair[0], pair[1]);
    CHECK(best.age_star <= grid + 1e-9);  // never worse than any grid point
    CHECK(std::fabs(best.age_star - grid) <= 1e-3);
  }
}

TEST_CASE("alpha optimizer validates its inputs") {
  auto err = capture([] { optimize_alpha(0.0, 0.5); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
  err = capture([] { optimize_alpha(0.5, 1.0001); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
  err = capture([] { optimize_alpha(0.5, 0.9, 0.0); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kOutOfRange);
}

TEST_CASE("matched-leakage comparison on pinned points") {
  const MatchedLeakageReport two = matched_leakage_comparison(0.5, 2);
  CHECK(two.mu_matched == doctest::Approx(std::sqrt(2.0) - 1.0));
  CHECK(two.leakage_rate_nats == doctest::Approx(std::log(2.0) / 2.0));
  CHECK(two.dad_age == doctest::Approx(3.5));
  CHECK(two.rad_age == doctest::Approx(3.0 + std::sqrt(2.0)));
  CHECK(std::isfinite(two.mbt_age));

  // tau = 1 matches all three policies at the unit-rate common point.
  const MatchedLeakageReport one = matched_leakage_comparison(0.5, 1);
  CHECK(one.mu_matched == doctest::Approx(1.0));
  CHECK(one.dad_age == doctest::Approx(3.0));
  CHECK(one.rad_age == doctest::Approx(3.0));
  CHECK(one.mbt_age == doctest::Approx(3.0));

  const MatchedLeakageReport four = matched_leakage_comparison(0.9, 4);
  CHECK(four.dad_age == doctest::Approx(1.0 / 0.9 + 2.5));
  CHECK(four.rad_age ==
        doctest::Approx(1.0 / 0.9 + 1.0 / (std::exp2(0.25) - 1.0)));
}

TEST_CASE("dump beats random sending at every matched rate") {
  for (std::int64_t tau = 2; tau <= 10; ++tau) {
    const MatchedLeakageReport report = matched_leakage_comparison(0.5, tau);
    CHECK(report.dad_age < report.rad_age);
  }
}

TEST_CASE("sweeps cover their grids with the advertised leakage axis") {
  SweepSpec rad_sweep;
  rad_sweep.kind = PolicyKind::kRad;
  rad_sweep.lambda = 0.5;
  rad_sweep.mu_grid = {0.25, 0.5, 1.0};
  const std::vector<TradeoffPoint> rad_points = pareto_sweep(rad_sweep);
  REQUIRE(rad_points.size() == 3);
  for (std::size_t i = 0; i < rad_points.size(); ++i) {
    CHECK(rad_points[i].leakage_rate_nats ==
          doctest::Approx(std::log1p(rad_sweep.mu_grid[i])));
    CHECK(rad_points[i].age_slots ==
          doctest::Approx(aoi_rad(0.5, rad_sweep.mu_grid[i]).age_slots));
    CHECK(rad_points[i].source == PointSource::kAnalytic);
  }
  CHECK(rad_points[2].leakage_rate_nats == doctest::Approx(std::log(2.0)));
  CHECK(rad_points[2].age_slots == doctest::Approx(3.0));

  SweepSpec dad_sweep;
  dad_sweep.kind = PolicyKind::kDad;
  dad_sweep.lambda = 0.5;
  dad_sweep.tau_grid = {1, 2, 3};
  const std::vector<TradeoffPoint> dad_points = pareto_sweep(dad_sweep);
  REQUIRE(dad_points.size() == 3);
  const double expected_ages[] = {3.0, 3.5, 4.0};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(dad_points[i].leakage_rate_nats ==
          doctest::Approx(std::log(2.0) / static_cast<double>(i + 1)));
    CHECK(dad_points[i].age_slots == doctest::Approx(expected_ages[i]));
  }
}

TEST_CASE("unstable sweep points are flagged, not dropped") {
  SweepSpec sweep;
  sweep.kind = PolicyKind::kMbt;
  sweep.lambda = 0.5;
  sweep.alpha = 1.0;
  sweep.mu_grid = {0.3, 0.5, 0.6};
  const std::vector<TradeoffPoint> points = pareto_sweep(sweep);
  REQUIRE(points.size() == 3);
  CHECK(std::isnan(points[0].age_slots));
  CHECK(points[0].note.find("unstable") != std::string::npos);
  CHECK(std::isnan(points[1].age_slots));  // equality diverges too
  CHECK(std::isfinite(points[2].age_slots));
  CHECK(points[2].age_slots == doctest::Approx(aoi_mbt(0.5, 1.0, 0.6).age_slots));
}

TEST_CASE("empty grids are refused") {
  SweepSpec sweep;
  sweep.kind = PolicyKind::kRad;
  auto err = capture([&] { pareto_sweep(sweep); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kEmptyInput);
  CHECK(err->field() == "mu_grid");

  sweep.kind = PolicyKind::kDad;
  err = capture([&] { pareto_sweep(sweep); });
  REQUIRE(err.has_value());
  CHECK(err->code() == ErrorCode::kEmptyInput);
  CHECK(err->field() == "tau_grid");
}

TEST_CASE("simulated sibling rows sit next to their analytic points") {
  SweepSpec sweep;
  sweep.kind = PolicyKind::kRad;
  sweep.lambda = 0.5;
  sweep.mu_grid = {0.5};
  SimOverlay overlay;
  overlay.slots = 200000;
  overlay.warmup = 2000;
  overlay.seed = 2;
  sweep.sim_overlay = overlay;
  const std::vector<TradeoffPoint> points = pareto_sweep(sweep);
  REQUIRE(points.size() == 2);
  CHECK(points[0].source == PointSource::kAnalytic);
  CHECK(points[1].source == PointSource::kSimulated);
  CHECK(points[1].leakage_rate_nats == points[0].leakage_rate_nats);
  REQUIRE(points[1].age_std_error.has_value());
  CHECK(std::fabs(points[1].age_slots - points[0].age_slots) <=
        std::max(3.0 * *points[1].age_std_error, 0.01 * points[0].age_slots));
}

TEST_CASE("alpha-optimized sweeps report the tuned admission") {
  SweepSpec sweep;
  sweep.kind = PolicyKind::kMbt;
  sweep.lambda = 0.9;
  sweep.optimize_alpha = true;
  sweep.mu_grid = {0.3, 0.6, 1.0};
  const std::vector<TradeoffPoint> points = pareto_sweep(sweep);
  REQUIRE(points.size() == 3);
  for (const TradeoffPoint& point : points) {
    REQUIRE(point.alpha_star.has_value());
    REQUIRE(point.effective_rate.has_value());
    CHECK(*point.effective_rate ==
          doctest::Approx(*point.alpha_star * sweep.lambda));
    CHECK(std::isfinite(point.age_slots));
    CHECK(point.note == "alpha-optimized");
  }
  // Full admission is optimal once service saturates.
  CHECK(*points[2].alpha_star == doctest::Approx(1.0));
}

TEST_CASE("stock figure datasets") {
  const std::vector<TradeoffPoint> fig2 = fig_dataset(Figure::kFig2);
  CHECK(fig2.size() == 255);
  int common = 0;
  for (const TradeoffPoint& point : fig2) {
    if (std::fabs(point.leakage_rate_nats - std::log(2.0)) < 1e-12 &&
        std::fabs(point.age_slots - 3.0) < 1e-12) {
      ++common;
    }
  }
  CHECK(common == 3);  // one per policy at unit service rate

  const std::vector<TradeoffPoint> fig3 = fig_dataset(Figure::kFig3);
  CHECK(fig3.size() == 405);  // (96 rad + 39 dad) per arrival rate
  int lambdas_seen[3] = {0, 0, 0};
  for (const TradeoffPoint& point : fig3) {
    CHECK((point.policy.kind == PolicyKind::kRad ||
           point.policy.kind == PolicyKind::kDad));
    if (point.policy.lambda == 0.1) ++lambdas_seen[0];
    if (point.policy.lambda == 0.5) ++lambdas_seen[1];
    if (point.policy.lambda == 0.9) ++lambdas_seen[2];
  }
  CHECK(lambdas_seen[0] == 135);
  CHECK(lambdas_seen[1] == 135);
  CHECK(lambdas_seen[2] == 135);

  FigOverrides narrow;
  narrow.lambda = 0.25;
  for (const TradeoffPoint& point : fig_dataset(Figure::kFig3, narrow)) {
    CHECK(point.policy.lambda == 0.25);
  }
}

TEST_CASE("the envelope rows of the alpha-optimized figure") {
  const std::vector<TradeoffPoint> fig4 = fig_dataset(Figure::kFig4);
  int envelope_rows = 0;
  double min_rate = 1.0;
  double max_rate = 0.0;
  for (const TradeoffPoint& point : fig4) {
    CHECK(point.policy.kind == PolicyKind::kMbt);
    if (point.alpha_star.has_value()) {
      ++envelope_rows;
      min_rate = std::min(min_rate, *point.effective_rate);
      max_rate = std::max(max_rate, *point.effective_rate);
      CHECK(std::isfinite(point.age_slots));
    } else {
      CHECK(point.policy.alpha == 1.0);
    }
  }
  CHECK(envelope_rows == 91);  // mu in [0.1, 1] step 0.01
  // The tuned effective rate spans the whole figure, from the low-service
  // corner up to full admission at lambda = 0.9.
  CHECK(min_rate < 0.056);
  CHECK(max_rate == doctest::Approx(0.9));
}

TEST_CASE("figure names parse") {
  CHECK(figure_from_name("fig2") == Figure::kFig2);
  CHECK(figure_from_name("fig3") == Figure::kFig3);
  CHECK(figure_from_name("fig4") == Figure::kFig4);
  CHECK_FALSE(figure_from_name("fig5").has_value());
}
