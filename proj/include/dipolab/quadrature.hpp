#pragma once

#include <functional>

namespace dipolab::phase {

struct QuadratureResult {
    double value;
    double error_estimate;
    int evaluations;
};

// Integral of f over [a, b] by 7-15 Gauss-Kronrod panels with recursive
// bisection until the local error estimate drops below the absolute
// tolerance share of each panel.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol);

}  // namespace dipolab::phase
