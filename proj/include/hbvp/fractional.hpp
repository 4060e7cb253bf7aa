#pragma once

#include <functional>
#include <stdexcept>

namespace hbvp {

/// f grows toward 0 faster than its declared power allows.
class SingularityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Riemann-Liouville integral (I^order f)(t) for order in (0, 1].
///
/// f may behave like s^sigma near 0 (sigma > -1). [0, t/2] is covered by
/// geometrically graded Gauss-Legendre panels (n_panels of them) ending in a
/// Gauss-Jacobi panel with weight s^sigma; [t/2, t] by one Gauss-Jacobi
/// panel with weight (t-s)^{order-1}.
double rl_integral_numeric(const std::function<double(double)>& f, double order, double t,
                           int n_panels = 16, double sigma = 0.0);

/// Hilfer derivative I^{mu(1-alpha)} d/dt I^{(1-mu)(1-alpha)} f at t > 0;
/// the inner derivative is a Richardson-extrapolated central difference.
/// Integrals of order 0 are skipped. sigma as for rl_integral_numeric.
double hilfer_derivative_numeric(const std::function<double(double)>& f, double alpha, double mu,
                                 double t, double sigma = 0.0);

}  // namespace hbvp
