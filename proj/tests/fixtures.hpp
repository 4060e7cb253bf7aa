#pragma once

#include <numbers>

#include "hbvp/problem.hpp"

namespace fixtures {

// P = sin x cos z, Q = e^{-x}(1 + e^{-z}) on l = pi/2.
inline hbvp::ProblemSpec standard(double alpha = 0.7, double mu = 0.4, const char* psi = "x^2*(l-x)^2") {
  return hbvp::make_problem(alpha, mu, 1.0, std::numbers::pi / 2, 1.0, {1.0, 0.5, 0.5}, psi, "sin(x)*cos(z)",
                            "exp(-x)*(1+exp(-z))");
}

inline hbvp::ProblemSpec classical() {
  return hbvp::make_problem(1.0, 0.0, 1.0, 1.0, 1.0, {1.0, 0.0, 0.0}, "x^2*(l-x)^2", "0", "0");
}

}  // namespace fixtures
