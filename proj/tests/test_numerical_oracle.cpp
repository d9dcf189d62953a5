#include <doctest.h>

#include <cmath>
#include <random>

#include "kkscatter/analytic_scattering.hpp"
#include "kkscatter/numerical_oracle.hpp"

using namespace kkscatter;

TEST_CASE("barrier spec validation") {
  CHECK_THROWS_AS(BarrierSpec(1.0, 0.0), Error);
  CHECK_THROWS_AS(BarrierSpec(1.0, -1e-3), Error);
  CHECK_THROWS_AS(BarrierSpec(std::nan(""), 1.0), Error);
  const auto b = BarrierSpec::from_area(2.0, 1e-2);
  CHECK(b.height() == doctest::Approx(200.0));
  CHECK(b.area() == doctest::Approx(2.0));
}

TEST_CASE("no barrier means no scattering") {
  const auto amps = barrier_amplitudes(1.3, BarrierSpec(0.0, 0.5));
  CHECK(std::abs(amps.r) < 1e-15);
  CHECK(std::abs(amps.t - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("barrier unitarity across all interior branches") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const PhysicalConfig config(0.5 + u(rng), 0.5 + u(rng));
    const double k = 0.05 + 5.0 * u(rng);
    const double height = -50.0 + 100.0 * u(rng);
    const double width = 1e-4 + 3.0 * u(rng);
    const auto amps = barrier_amplitudes(k, BarrierSpec(height, width), config);
    CHECK(std::abs(std::norm(amps.r) + std::norm(amps.t) - 1.0) < 1e-12);
  }
  // Exactly at threshold: k^2 = 2 m V0 / hbar^2.
  const auto at = barrier_amplitudes(2.0, BarrierSpec(2.0, 0.7));
  CHECK(std::abs(std::norm(at.r) + std::norm(at.t) - 1.0) < 1e-12);
  // Thick barrier: transmission underflows gracefully instead of overflowing.
  const auto thick = barrier_amplitudes(1.0, BarrierSpec(1e6, 10.0));
  CHECK(std::isfinite(std::abs(thick.r)));
  CHECK(std::abs(thick.t) < 1e-300);
  CHECK(std::norm(thick.r) == doctest::Approx(1.0));
}

TEST_CASE("threshold branch is continuous with its neighbours") {
  // V0 = k^2 / 2 in natural units; nudge either side.
  const double k = 1.5;
  const double v0 = k * k / 2.0;
  const auto at = barrier_amplitudes(k, BarrierSpec(v0, 0.8));
  const auto above = barrier_amplitudes(k, BarrierSpec(v0 * (1 - 1e-9), 0.8));
  const auto below = barrier_amplitudes(k, BarrierSpec(v0 * (1 + 1e-9), 0.8));
  CHECK(std::abs(at.t - above.t) < 1e-8);
  CHECK(std::abs(at.t - below.t) < 1e-8);
  CHECK(std::abs(at.r - above.r) < 1e-8);
  CHECK(std::abs(at.r - below.r) < 1e-8);
}

TEST_CASE("narrow barrier approaches the delta") {
  const auto amps = barrier_amplitudes(1.0, BarrierSpec(1000.0, 1e-3));
  CHECK(std::abs(std::norm(amps.r) - 0.5) < 5e-3);
  CHECK_THROWS_AS(barrier_amplitudes(0.0, BarrierSpec(1.0, 1.0)), Error);
}

TEST_CASE("delta limit study converges at first order") {
  const std::vector<double> widths{1e-1, 1e-2, 1e-3, 1e-4};
  const auto study = delta_limit_study(1.0, 1.0, widths);
  REQUIRE(study.rows.size() == 4);
  CHECK(study.monotone);
  CHECK(study.converged);
  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    const double ratio = study.rows[i - 1].error / study.rows[i].error;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 12.0);
  }
  CHECK(study.rows[2].height == doctest::Approx(1000.0));
  CHECK(study.rows[2].R_delta == doctest::Approx(0.5));
}

TEST_CASE("attractive well converges too") {
  const std::vector<double> widths{1e-2, 1e-3, 1e-4};
  for (double lambda : {-0.5, -1.0, -3.0}) {
    const auto study = delta_limit_study(1.2, lambda, widths);
    CHECK(study.monotone);
    CHECK(study.rows.back().error < 1e-3);
    const double ratio = study.rows[1].error / study.rows[2].error;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 12.0);
  }
}

TEST_CASE("zero strength gives zero error") {
  const std::vector<double> widths{1e-1, 1e-2, 1e-3};
  const auto study = delta_limit_study(1.0, 0.0, widths);
  for (const auto& row : study.rows) CHECK(row.error < 1e-14);
  CHECK(study.monotone);
}

TEST_CASE("width list validation") {
  const std::vector<double> increasing{1e-3, 1e-2};
  const std::vector<double> empty;
  const std::vector<double> negative{1e-2, -1e-3};
  CHECK_THROWS_AS(delta_limit_study(1.0, 1.0, increasing), Error);
  CHECK_THROWS_AS(delta_limit_study(1.0, 1.0, empty), Error);
  CHECK_THROWS_AS(delta_limit_study(1.0, 1.0, negative), Error);
}
