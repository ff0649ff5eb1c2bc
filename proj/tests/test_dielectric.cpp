#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dielectric.hpp"

using qve::DielectricModel;
using qve::Error;
using qve::ErrorCode;

TEST_CASE("epsilon evaluation") {
  auto lor = DielectricModel::lorentz(1.0, 1.0, 0.5);
  CHECK(lor.epsilon(0.0) == doctest::Approx(2.0).epsilon(1e-14));

  auto cst = DielectricModel::constant(3.2);
  CHECK(cst.epsilon(17.4) == doctest::Approx(3.2).epsilon(1e-14));

  CHECK_THROWS_AS(lor.epsilon(1.0), Error);
  try {
    lor.epsilon(1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::pole_proximity);
  }
}

TEST_CASE("epsilon is even") {
  auto m = DielectricModel::multi_lorentz(2.0, {{1.0, 0.3}, {2.5, 0.7}});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    double w = uni(rng);
    if (std::abs(w - 1.0) < 1e-6 || std::abs(w - 2.5) < 1e-6) continue;
    CHECK(m.epsilon(w) == m.epsilon(-w));
  }
}

TEST_CASE("derivative examples") {
  auto cst = DielectricModel::constant(5.0);
  CHECK(cst.epsilon_derivative(3.7) == 0.0);

  auto lor = DielectricModel::lorentz(1.0, 1.0, 0.5);
  double phi = 1.6180339887498949;
  CHECK(lor.epsilon_derivative(phi) ==
        doctest::Approx(1.2360679774997896).epsilon(1e-10));
  CHECK(lor.epsilon_derivative(-phi) ==
        doctest::Approx(-lor.epsilon_derivative(phi)).epsilon(1e-14));
}

TEST_CASE("derivative matches central finite differences") {
  auto m = DielectricModel::multi_lorentz(1.5, {{1.0, 0.4}, {3.0, 0.2}});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.05, 8.0);
  int checked = 0;
  while (checked < 300) {
    double w = uni(rng);
    if (std::abs(w - 1.0) < 0.02 || std::abs(w - 3.0) < 0.02) continue;
    double h = 1e-6 * w;
    double fd = (m.epsilon(w + h) - m.epsilon(w - h)) / (2.0 * h);
    CHECK(m.epsilon_derivative(w) ==
          doctest::Approx(fd).epsilon(1e-6));
    ++checked;
  }
}

TEST_CASE("propagative bands of a single Lorentz oscillator") {
  double wx = 1.0;
  auto m = DielectricModel::lorentz(1.0, wx, 0.5 * wx);
  auto bs = m.propagative_bands(10.0 * wx);
  REQUIRE(bs.bands.size() == 2);
  CHECK(bs.bands[0].lo == 0.0);
  CHECK(bs.bands[0].hi == doctest::Approx(wx).epsilon(1e-12));
  CHECK(bs.bands[1].lo == doctest::Approx(std::sqrt(2.0) * wx).epsilon(1e-10));
  CHECK(bs.bands[1].hi == doctest::Approx(10.0 * wx).epsilon(1e-14));
  REQUIRE(bs.gaps.size() == 1);
  CHECK(bs.gaps[0].lo == doctest::Approx(wx).epsilon(1e-12));
  CHECK(bs.gaps[0].hi == doctest::Approx(std::sqrt(2.0) * wx).epsilon(1e-10));
}

TEST_CASE("constant model has a single band") {
  auto m = DielectricModel::constant(2.0);
  auto bs = m.propagative_bands(5.0);
  REQUIRE(bs.bands.size() == 1);
  CHECK(bs.bands[0].lo == 0.0);
  CHECK(bs.bands[0].hi == 5.0);
  CHECK(bs.gaps.empty());
}

TEST_CASE("g = 0 keeps only the isolated pole point excluded") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.0);
  auto bs = m.propagative_bands(4.0);
  REQUIRE(bs.bands.size() == 2);
  CHECK(bs.bands[0].hi == doctest::Approx(1.0));
  CHECK(bs.bands[1].lo == doctest::Approx(1.0));
  CHECK(bs.gaps.empty());
}

TEST_CASE("epsilon sign agrees with reported bands and gaps") {
  auto m = DielectricModel::multi_lorentz(1.2, {{1.0, 0.3}, {2.0, 0.5}});
  auto bs = m.propagative_bands(12.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (const auto& band : bs.bands) {
    for (int i = 0; i < 300; ++i) {
      double w = band.lo + (band.hi - band.lo) * (0.001 + 0.998 * uni(rng));
      CHECK(m.epsilon(w) > 0.0);
    }
  }
  for (const auto& gap : bs.gaps) {
    for (int i = 0; i < 300; ++i) {
      double w = gap.lo + (gap.hi - gap.lo) * (0.001 + 0.998 * uni(rng));
      CHECK(m.epsilon(w) < 0.0);
    }
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(DielectricModel::constant(-1.0), Error);
  CHECK_THROWS_AS(DielectricModel::lorentz(1.0, -1.0, 0.5), Error);
  CHECK_THROWS_AS(DielectricModel::lorentz(1.0, 1.0, -0.5), Error);
  CHECK_THROWS_AS(
      DielectricModel::multi_lorentz(1.0, {{2.0, 0.1}, {1.0, 0.1}}), Error);
}
