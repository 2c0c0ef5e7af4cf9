#ifndef RHOCI_QUADRATURE_HPP
#define RHOCI_QUADRATURE_HPP

#include <functional>

namespace rhoci {

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to an
// absolute tolerance. Throws rhoci::numeric_error if the recursion depth
// cap is reached before the tolerance is met.
double adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                     double abs_tol);

}  // namespace rhoci

#endif
