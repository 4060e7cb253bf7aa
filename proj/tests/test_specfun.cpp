#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hbvp/specfun.hpp"

using hbvp::mittag_leffler;

namespace {

struct Reference {
  double alpha, beta, z, value;
};

const Reference kReference[] = {
#include "data/ml_reference.inc"
};

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

}  // namespace

TEST_CASE("gamma") {
  CHECK(hbvp::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hbvp::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(rel(hbvp::gamma(0.5), std::sqrt(std::numbers::pi)) <= 1e-13);
  for (double x : {1e-3, 0.1, 0.37, 1.5, 2.5, 7.25, 20.0, 55.5, 100.0, 170.5})
    CHECK(rel(hbvp::gamma(x), std::tgamma(x)) <= 1e-13);
  CHECK_THROWS_AS(hbvp::gamma(0.0), hbvp::ParameterError);
  CHECK_THROWS_AS(hbvp::gamma(-1.0), hbvp::ParameterError);
  CHECK(hbvp::rgamma(-2.0) == 0.0);
  CHECK(rel(hbvp::rgamma(-0.5), -0.5 / std::sqrt(std::numbers::pi)) <= 1e-13);
}

TEST_CASE("Mittag-Leffler examples") {
  CHECK(mittag_leffler({0.7, 1.0}, 0.0) == doctest::Approx(1.0));
  CHECK(rel(mittag_leffler({1.0, 1.0}, -1.0), std::exp(-1.0)) <= 1e-15);
  CHECK(rel(mittag_leffler({1.0, 2.0}, -2.0), (1.0 - std::exp(-2.0)) / 2.0) <= 1e-15);
  CHECK(rel(mittag_leffler({0.5, 1.0}, -1.0), std::exp(1.0) * std::erfc(1.0)) <= 1e-12);
  CHECK_THROWS_AS(mittag_leffler({0.5, 1.0}, 0.5), hbvp::ParameterError);
  CHECK_THROWS_AS(mittag_leffler({0.0, 1.0}, -1.0), hbvp::ParameterError);
}

TEST_CASE("Mittag-Leffler against high-precision table") {
  double worst = 0.0;
  for (const auto& r : kReference) {
    double v = mittag_leffler({r.alpha, r.beta}, r.z);
    double err = std::fabs(v - r.value) / std::max(std::fabs(r.value), 1e-6);
    INFO("alpha=" << r.alpha << " beta=" << r.beta << " z=" << r.z << " got " << v << " want " << r.value);
    CHECK(err <= 1e-10);
    worst = std::max(worst, err);
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("closed-form identities") {
  for (double z = -50.0; z <= 0.0; z += 0.125) {
    CHECK(rel(mittag_leffler({1.0, 1.0}, z), std::exp(z)) <= 1e-12);
    if (z != 0.0) CHECK(rel(mittag_leffler({1.0, 2.0}, z), std::expm1(z) / z) <= 1e-12);
    // Long double keeps exp(x^2) erfc(x) finite up to x = 50.
    long double x = -z;
    CHECK(rel(mittag_leffler({0.5, 1.0}, z), static_cast<double>(std::exp(x * x) * std::erfc(x))) <= 1e-10);
  }
}

TEST_CASE("cos identity") {
  // E_{2,1}(-x^2) = cos x; near zeros of cos the error is absolute.
  for (double x = 0.0; x <= 7.0; x += 0.05)
    CHECK(std::fabs(mittag_leffler({2.0, 1.0}, -x * x) - std::cos(x)) <= 1e-10);
}

TEST_CASE("positivity, monotonicity and recurrence") {
  std::vector<double> zs;
  for (int i = 0; i <= 60; ++i) zs.push_back(-std::pow(10.0, -3.0 + 7.0 * i / 60.0));
  std::sort(zs.begin(), zs.end());
  for (double a : {0.1, 0.3, 0.55, 0.8, 1.0})
    for (double b : {a, 1.0, 1.7, 2.5}) {
      double prev = 0.0;
      for (double z : zs) {
        double v = mittag_leffler({a, b}, z);
        CHECK(v >= 0.0);
        if (a < 1.0 || z > -700.0) CHECK(v > 0.0);  // exp underflows below
        CHECK(v >= prev * (1.0 - 1e-12));
        prev = v;
        double rhs = z * mittag_leffler({a, a + b}, z) + hbvp::rgamma(b);
        CHECK(std::fabs(v - rhs) <= 1e-9 * std::max(std::fabs(v), std::fabs(rhs)) + 1e-15);
      }
    }
}

TEST_CASE("power-weighted fractional integration rule") {
  const double t = 1.3;
  CHECK(rel(hbvp::rl_integral_power_ml({0.6, 1.0}, -1.0, 0.0, t), mittag_leffler({0.6, 1.0}, -std::pow(t, 0.6))) <=
        1e-15);
  CHECK(hbvp::rl_integral_power_ml({1.0, 1.0}, 0.0, 1.0, 2.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(hbvp::rl_integral_power_ml({1.0, 1.0}, 0.0, -1.0, 2.0), hbvp::ParameterError);
}
