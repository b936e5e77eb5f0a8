#pragma once

#include <functional>

namespace horncrit {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. Stops when the
// summed error estimate drops below abs_tol + rel_tol*|value| or the
// interval budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-10,
                     int max_intervals = 4000);

}  // namespace horncrit
