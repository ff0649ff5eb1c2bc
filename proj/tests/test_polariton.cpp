#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polariton.hpp"

using qve::DielectricModel;
using qve::Error;
using qve::ErrorCode;
using qve::PhysicalConstants;

namespace {
const PhysicalConstants kPc = PhysicalConstants::reduced();
const double kPhi = 1.6180339887498949;      // upper root at Omega_k = omega_x
const double kPhiInv = 0.6180339887498949;   // lower root
}  // namespace

TEST_CASE("branch frequencies: golden-ratio crossing") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto freqs = qve::branch_frequencies(m, kPc, 1.0);
  REQUIRE(freqs.size() == 2);
  CHECK(freqs[0] == doctest::Approx(kPhiInv).epsilon(1e-10));
  CHECK(freqs[1] == doctest::Approx(kPhi).epsilon(1e-10));
}

TEST_CASE("branch frequencies: closed-form quadratic across k") {
  double wx = 1.3, g = 0.35, eps_r = 1.0;
  auto m = DielectricModel::lorentz(eps_r, wx, g);
  for (double k : {0.05, 0.3, 1.0, 2.7, 8.0}) {
    double bare2 = k * k / eps_r;
    double b = bare2 + wx * wx + 4.0 * g * g;
    double disc = std::sqrt(b * b - 4.0 * bare2 * wx * wx);
    double lo = std::sqrt(0.5 * (b - disc));
    double hi = std::sqrt(0.5 * (b + disc));
    auto freqs = qve::branch_frequencies(m, kPc, k);
    REQUIRE(freqs.size() == 2);
    CHECK(freqs[0] == doctest::Approx(lo).epsilon(1e-11));
    CHECK(freqs[1] == doctest::Approx(hi).epsilon(1e-11));
  }
}

TEST_CASE("uncoupled oscillator gives the bare photon line") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.0);
  for (double k : {0.3, 0.9, 2.0}) {
    auto freqs = qve::branch_frequencies(m, kPc, k);
    REQUIRE(freqs.size() == 1);
    CHECK(freqs[0] == doctest::Approx(k).epsilon(1e-12));
  }
}

TEST_CASE("lower branch approaches omega_x from below at large k") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  double prev = 0.0;
  for (double k : {10.0, 100.0, 1000.0}) {
    double lo = qve::branch_frequencies(m, kPc, k).front();
    CHECK(lo < 1.0);
    CHECK(lo > prev);
    prev = lo;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("invalid wavevector") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  CHECK_THROWS_AS(qve::branch_frequencies(m, kPc, 0.0), Error);
  CHECK_THROWS_AS(qve::branch_frequencies(m, kPc, -1.0), Error);
}

TEST_CASE("wavevector_of") {
  auto cst = DielectricModel::constant(4.0);
  CHECK(qve::wavevector_of(cst, kPc, 1.0) == doctest::Approx(2.0));

  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  CHECK(qve::wavevector_of(m, kPc, kPhiInv) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(qve::wavevector_of(m, kPc, 1.2), Error);
  try {
    qve::wavevector_of(m, kPc, 1.2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::gapped_frequency);
  }
}

TEST_CASE("dispersion round trip") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  for (double k = 0.02; k < 10.0; k *= 1.37) {
    for (double w : qve::branch_frequencies(m, kPc, k))
      CHECK(qve::wavevector_of(m, kPc, w) ==
            doctest::Approx(k).epsilon(1e-10));
  }
}

TEST_CASE("group velocity") {
  auto cst = DielectricModel::constant(4.0);
  CHECK(qve::group_velocity(cst, kPc, 0.7) == doctest::Approx(0.5));

  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  CHECK(qve::group_velocity(m, kPc, kPhi) ==
        doctest::Approx(0.44721359549995793).epsilon(1e-9));

  // three-way agreement with the finite-difference slope of the dispersion
  for (double k = 0.05; k < 9.0; k *= 1.9) {
    auto freqs = qve::branch_frequencies(m, kPc, k);
    double h = 1e-5 * k;
    auto lo = qve::branch_frequencies(m, kPc, k - h);
    auto hi = qve::branch_frequencies(m, kPc, k + h);
    for (std::size_t b = 0; b < freqs.size(); ++b) {
      double fd = (hi[b] - lo[b]) / (2.0 * h);
      CHECK(qve::group_velocity(m, kPc, freqs[b]) ==
            doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("Hopfield coefficients at the crossing") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto up = qve::hopfield_coefficients(m, kPc, 1.0, kPhi);
  CHECK(up.x == doctest::Approx(0.8754).epsilon(2e-4));
  CHECK(up.z == doctest::Approx(0.2067).epsilon(2e-3));
  auto lo = qve::hopfield_coefficients(m, kPc, 1.0, kPhiInv);
  CHECK(lo.x == doctest::Approx(0.5410).epsilon(2e-4));
  CHECK(lo.z == doctest::Approx(-0.1277).epsilon(2e-3));
  double norm = up.x * up.x - up.z * up.z + lo.x * lo.x - lo.z * lo.z;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Hopfield errors") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  CHECK_THROWS_AS(qve::hopfield_coefficients(m, kPc, 1.0, 0.9), Error);
  try {
    qve::hopfield_coefficients(m, kPc, 0.0, 0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_point);
  }
}

TEST_CASE("uncoupled Hopfield pair is (1, 0)") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.0);
  auto hz = qve::hopfield_coefficients(m, kPc, 0.5, 0.5);
  CHECK(hz.x == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(hz.z == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("mode solutions: normalization and gauge sweep") {
  for (double g : {0.1, 0.5, 1.0}) {
    auto m = DielectricModel::lorentz(1.0, 1.0, g);
    for (int i = 0; i < 1000; ++i) {
      double k = 0.01 * std::pow(10.0 / 0.01, i / 999.0);
      auto modes = qve::mode_solutions(m, kPc, k);
      REQUIRE(modes.size() == 2);
      double norm = 0.0;
      for (const auto& mode : modes) {
        norm += mode.x * mode.x - mode.z * mode.z;
        double sum = mode.x + mode.z;
        double gauge = std::abs(mode.bare_frequency * sum -
                                mode.omega * (mode.x - mode.z));
        CHECK(gauge < 1e-10 * mode.omega * std::abs(sum));
        CHECK(mode.x > 0.0);
        CHECK(mode.group_velocity > 0.0);
        CHECK(mode.group_velocity <= 1.0);
        // v_g = c eps (X+Z)^2 by construction
        double eps = m.epsilon(mode.omega);
        CHECK(mode.group_velocity ==
              doctest::Approx(eps * sum * sum).epsilon(1e-10));
      }
      CHECK(std::abs(norm - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("both branches share v_g at the resonance crossing") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  auto modes = qve::mode_solutions(m, kPc, 1.0);
  REQUIRE(modes.size() == 2);
  CHECK(modes[0].group_velocity ==
        doctest::Approx(0.44721359549995793).epsilon(1e-9));
  CHECK(modes[1].group_velocity ==
        doctest::Approx(modes[0].group_velocity).epsilon(1e-9));
}

TEST_CASE("constant model yields one mode per wavevector") {
  auto m = DielectricModel::constant(1.0);
  auto modes = qve::mode_solutions(m, kPc, 2.0);
  REQUIRE(modes.size() == 1);
  CHECK(modes[0].omega == doctest::Approx(2.0));
  CHECK(modes[0].x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(modes[0].z == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("branch count grows with the number of oscillators") {
  auto m = DielectricModel::multi_lorentz(1.0, {{1.0, 0.2}, {2.0, 0.3}});
  auto freqs = qve::branch_frequencies(m, kPc, 5.0);
  CHECK(freqs.size() == 3);
}

TEST_CASE("indicator") {
  auto m = DielectricModel::lorentz(1.0, 1.0, 0.5);
  CHECK(qve::indicator(m, 1.2) == 0);
  CHECK(qve::indicator(m, 0.5) == 1);
  CHECK(qve::indicator(m, 2.0) == 1);
  auto cst = DielectricModel::constant(2.5);
  CHECK(qve::indicator(cst, 0.01) == 1);
  CHECK(qve::indicator(cst, 100.0) == 1);
}
