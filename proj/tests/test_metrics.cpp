#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "risofdm/metrics.hpp"
#include "risofdm/units.hpp"

using namespace risofdm;

TEST_SUITE("metrics") {
  TEST_CASE("coverage extremes and threshold monotonicity") {
    const std::vector<double> r{0.5, 1.0, 1.5, 2.0};
    CHECK(coverage_percentage(r, 0.1) == 100.0);
    CHECK(coverage_percentage(r, std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(coverage_percentage(r, 1.0) == 75.0);  // weak inequality at the threshold
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::vector<double> many(181);
    for (auto& v : many) v = u(rng);
    double prev = 100.0;
    for (double t = 0.0; t <= 3.2; t += 0.05) {
      const double c = coverage_percentage(many, t);
      CHECK(c <= prev);
      prev = c;
    }
    CHECK_THROWS_AS(coverage_percentage(std::vector<double>{}, 1.0), ValidationError);
  }

  TEST_CASE("coverage by profile") {
    SweepResult s;
    s.theta2 = {1.6, 2.0, 2.4};
    s.rate_arctan = {1.0, 2.0, 3.0};
    s.rate_const = {0.1, 0.2, 3.0};
    s.rate_ideal = {4.0, 4.0, 4.0};
    CHECK(coverage_percentage(s, Profile::kArctan, 2.0) == doctest::Approx(200.0 / 3));
    CHECK(coverage_percentage(s, Profile::kConstant, 2.0) == doctest::Approx(100.0 / 3));
    CHECK(coverage_percentage(s, Profile::kIdeal, 2.0) == 100.0);
    s.rate_ideal.pop_back();
    CHECK_THROWS_AS(coverage_percentage(s, Profile::kIdeal, 2.0), ValidationError);
  }

  TEST_CASE("win fraction and maximum gain") {
    const std::vector<double> rc{1.0, 2.0, 0.5, 4.0};
    auto w = win_fraction_and_max_gain(rc, rc);
    CHECK(w.win_percent == 0.0);
    CHECK(w.max_gain_percent == 0.0);

    std::vector<double> twice(rc);
    for (auto& v : twice) v *= 2.0;
    w = win_fraction_and_max_gain(twice, rc);
    CHECK(w.win_percent == 100.0);
    CHECK(w.max_gain_percent == doctest::Approx(100.0));

    const std::vector<double> ra{1.5, 1.0, 0.5, 5.0};
    w = win_fraction_and_max_gain(ra, rc);
    CHECK(w.win_percent == 50.0);
    CHECK(w.max_gain_percent == doctest::Approx(50.0));
    std::vector<double> sa(ra), sc(rc);
    for (auto& v : sa) v *= 7.25;
    for (auto& v : sc) v *= 7.25;
    const auto ws = win_fraction_and_max_gain(sa, sc);
    CHECK(ws.win_percent == w.win_percent);
    CHECK(ws.max_gain_percent == doctest::Approx(w.max_gain_percent));

    // A zero constant rate counts as a win but stays out of the ratio.
    w = win_fraction_and_max_gain({1.0, 1.1}, {0.0, 1.0});
    CHECK(w.win_percent == 100.0);
    CHECK(w.max_gain_percent == doctest::Approx(10.0));
    w = win_fraction_and_max_gain({1.0}, {0.0});
    CHECK(w.max_gain_percent == 0.0);
    CHECK_THROWS_AS(win_fraction_and_max_gain({1.0}, {1.0, 2.0}), ValidationError);
  }

  TEST_CASE("mean") {
    CHECK(mean({1.0, 2.0, 6.0}) == 3.0);
    CHECK_THROWS_AS(mean({}), ValidationError);
  }
}
