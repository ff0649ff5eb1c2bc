#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "eos.hpp"
#include "inversion.hpp"

using qve::DielectricModel;
using qve::Error;
using qve::ErrorCode;
using qve::FitBounds;
using qve::MeasuredTrace;

namespace {
std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * i / static_cast<double>(n - 1));
  return out;
}
}  // namespace

TEST_CASE("identity inversion") {
  MeasuredTrace trace;
  trace.omega = linspace(0.1, 5.0, 50);
  trace.ratio.assign(50, 1.0);
  trace.eps_r = 3.0;
  auto res = qve::invert_ratio(trace);
  for (std::size_t i = 0; i < res.eps.size(); ++i) {
    CHECK(res.eps[i] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(res.gapped[i] == 0);
  }
  CHECK(res.gaps.empty());
}

TEST_CASE("point inversion of the low-frequency ratio") {
  MeasuredTrace trace;
  trace.omega = {0.001, 0.002, 0.003};
  trace.ratio = {0.7071067811865476, 0.7071067811865476, 0.7071067811865476};
  trace.eps_r = 1.0;
  auto res = qve::invert_ratio(trace);
  CHECK(res.eps[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("forward-inverse round trip on non-gapped points") {
  auto model = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto grid = linspace(0.01, 5.0, 500);
  auto trace = qve::synthesize_measurement(model, grid, 0.0, 0);
  auto res = qve::invert_ratio(trace);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (res.gapped[i]) continue;
    CHECK(res.eps[i] ==
          doctest::Approx(model.epsilon(grid[i])).epsilon(1e-10));
  }
  REQUIRE(res.gaps.size() == 1);
  double step = grid[1] - grid[0];
  CHECK(std::abs(res.gaps[0].lo - 1.0) <= step + 1e-12);
  CHECK(std::abs(res.gaps[0].hi - std::sqrt(2.0)) <= step + 1e-12);
}

TEST_CASE("gap edge estimates converge with grid refinement") {
  auto model = DielectricModel::lorentz(1.0, 1.0, 0.5);
  double prev_err = 1e9;
  for (int n : {100, 400, 1600}) {
    auto grid = linspace(0.01, 3.0, n);
    auto trace = qve::synthesize_measurement(model, grid, 0.0, 0);
    auto res = qve::invert_ratio(trace);
    REQUIRE(res.gaps.size() == 1);
    double err = std::abs(res.gaps[0].lo - 1.0) +
                 std::abs(res.gaps[0].hi - std::sqrt(2.0));
    double step = (3.0 - 0.01) / (n - 1);
    CHECK(err <= 2.0 * step);
    CHECK(err < prev_err + 1e-12);
    prev_err = err;
  }
}

TEST_CASE("inversion error paths") {
  MeasuredTrace empty;
  CHECK_THROWS_AS(qve::invert_ratio(empty), Error);

  MeasuredTrace gapped;
  gapped.omega = {1.0, 2.0};
  gapped.ratio = {0.0, 0.0};
  try {
    qve::invert_ratio(gapped);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::all_gapped);
  }
}

TEST_CASE("noiseless fit recovers the oscillator parameters") {
  auto model = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto grid = linspace(0.01, 5.0, 400);
  auto trace = qve::synthesize_measurement(model, grid, 0.0, 0);
  auto fit = qve::fit_lorentz(trace, 1.2, 0.4, {0.5, 2.0, 0.1, 1.0});
  CHECK(fit.converged);
  CHECK(fit.omega_x == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.g == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("guess outside bounds is rejected") {
  auto model = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto grid = linspace(0.01, 5.0, 50);
  auto trace = qve::synthesize_measurement(model, grid, 0.0, 0);
  CHECK_THROWS_AS(qve::fit_lorentz(trace, 3.0, 0.4, {0.5, 2.0, 0.1, 1.0}),
                  Error);
}

TEST_CASE("synthesis determinism and noise statistics") {
  auto model = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto grid = linspace(0.01, 5.0, 100);

  auto a = qve::synthesize_measurement(model, grid, 0.01, 1234);
  auto b = qve::synthesize_measurement(model, grid, 0.01, 1234);
  CHECK(a.ratio == b.ratio);
  auto c = qve::synthesize_measurement(model, grid, 0.01, 1235);
  CHECK(a.ratio != c.ratio);

  // noiseless synthesis is the exact forward model
  auto exact = qve::synthesize_measurement(model, grid, 0.0, 0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(exact.ratio[i] ==
          doctest::Approx(qve::ratio_value(model, grid[i], nullptr))
              .epsilon(1e-14));

  // law of large numbers at a fixed frequency
  double w = 2.0;
  double truth = qve::ratio_value(model, w, nullptr);
  std::vector<double> one{w};
  double mean = 0.0;
  int n = 10000;
  for (int seed = 0; seed < n; ++seed)
    mean += qve::synthesize_measurement(model, one, 0.01, seed).ratio[0];
  mean /= n;
  CHECK(std::abs(mean - truth) < 3.0 * 0.01 * truth / 100.0);
}

TEST_CASE("fit under multiplicative noise stays close to the truth") {
  auto model = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto grid = linspace(0.01, 5.0, 400);
  auto trace = qve::synthesize_measurement(model, grid, 0.01, 7);
  auto fit = qve::fit_lorentz(trace, 1.2, 0.4, {0.5, 2.0, 0.1, 1.0});
  CHECK(fit.converged);
  CHECK(fit.omega_x == doctest::Approx(1.0).epsilon(0.02));
  CHECK(fit.g == doctest::Approx(0.5).epsilon(0.02));
  CHECK(fit.stderr_omega_x > 0.0);
  CHECK(fit.stderr_g > 0.0);
}
